//! Instance files.
//!
//! An instance is a JSON object describing a metric Lie algebra, a drift
//! vector and a φ-family; see `docs/instance-format.md` for the field table.
//! Parsing ([`parse_instance`]) only checks syntax and shape. [`validate`]
//! builds the geometry and rejects anything that is not a valid
//! (α,β)-structure.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use tangent_finsler::finsler::{AlphaBetaStructure, PhiFamily, ScalarFn};
use tangent_finsler::lie::{AlgVector, LieAlgebra, MetricTensor};
use tangent_finsler::{CaseTag, Error, FlagPlane, Lift, MetricLieAlgebra, Tolerances};

use crate::CliError;

/// Grid resolution of the validity-inequality check.
pub const VALIDITY_SAMPLES: usize = 400;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    /// Row-major, one inner array per row.
    pub metric: Vec<Vec<f64>>,
    pub drift: Vec<f64>,
    pub phi: PhiSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planes: Option<Vec<PlaneSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

/// `[e_i, e_j]` has component `c` along `e_k`; indices are 1-based and
/// `[e_j, e_i]` is implied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PhiSpec {
    Randers,
    Kropina,
    Matsumoto,
    Riemannian,
    /// `φ(s) = Σ_k coefficients[k] s^k`.
    Custom {
        coefficients: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftTag {
    #[serde(rename = "c")]
    Complete,
    #[serde(rename = "v")]
    Vertical,
}

impl From<LiftTag> for Lift {
    fn from(t: LiftTag) -> Lift {
        match t {
            LiftTag::Complete => Lift::Complete,
            LiftTag::Vertical => Lift::Vertical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneSpec {
    pub pole_lift: LiftTag,
    pub pole: Vec<f64>,
    pub second_lift: LiftTag,
    pub second: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<f64>,
}

impl ToleranceOverrides {
    /// Replaces the fields of `base` that are set here.
    pub fn apply(&self, base: Tolerances) -> Tolerances {
        Tolerances {
            alg: self.alg.unwrap_or(base.alg),
            pd: self.pd.unwrap_or(base.pd),
            rank: self.rank.unwrap_or(base.rank),
            plane: self.plane.unwrap_or(base.plane),
            class: self.class.unwrap_or(base.class),
        }
    }

    fn entries(&self) -> [(&'static str, Option<f64>); 5] {
        [
            ("alg", self.alg),
            ("pd", self.pd),
            ("rank", self.rank),
            ("plane", self.plane),
            ("class", self.class),
        ]
    }
}

/// Defaults, then the file, then `overrides` (flags and environment).
pub fn resolve_tolerances(file: &InstanceFile, overrides: &ToleranceOverrides) -> Result<Tolerances, CliError> {
    let from_file = file.tolerances.unwrap_or_default();
    for (name, value) in from_file.entries().into_iter().chain(overrides.entries()) {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::validation(format!("tolerances.{name}"), format!("must be positive, got {v}")));
            }
        }
    }
    Ok(overrides.apply(from_file.apply(Tolerances::DEFAULT)))
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, CliError> {
    Ok(serde_json::from_str(text)?)
}

/// Residuals computed while validating, each with its threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationSummary {
    pub antisymmetry_residual: f64,
    pub jacobi_residual: f64,
    pub alg_tolerance: f64,
    pub min_eigenvalue: f64,
    pub pd_tolerance: f64,
    pub drift_norm: f64,
    pub norm_bound: Option<f64>,
    /// Smallest sampled value of `φ(s) − sφ'(s) + (b² − s²)φ''(s)`.
    pub validity_min: f64,
}

/// A flag given explicitly in the instance file.
#[derive(Debug, Clone, PartialEq)]
pub struct UserPlane {
    pub case_tag: CaseTag,
    pub pole: AlgVector,
    pub second: AlgVector,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub file: InstanceFile,
    pub structure: AlphaBetaStructure,
    pub planes: Option<Vec<UserPlane>>,
    pub summary: ValidationSummary,
}

fn polynomial(coefficients: &[f64], derivative: usize) -> ScalarFn {
    let c: Vec<f64> = coefficients
        .iter()
        .enumerate()
        .skip(derivative)
        .map(|(k, a)| a * (0..derivative).map(|d| (k - d) as f64).product::<f64>())
        .collect();
    Arc::new(move |s: f64| c.iter().rev().fold(0.0, |acc, a| acc * s + a))
}

fn build_phi(spec: &PhiSpec) -> Result<PhiFamily, CliError> {
    Ok(match spec {
        PhiSpec::Randers => PhiFamily::randers(),
        PhiSpec::Kropina => PhiFamily::kropina(),
        PhiSpec::Matsumoto => PhiFamily::matsumoto(),
        PhiSpec::Riemannian => PhiFamily::riemannian(),
        PhiSpec::Custom { coefficients, bound } => {
            if coefficients.is_empty() || coefficients.iter().any(|c| !c.is_finite()) {
                return Err(CliError::validation("phi.coefficients", "need at least one finite coefficient"));
            }
            if !(coefficients[0] > 0.0) {
                return Err(CliError::validation("phi.coefficients", "φ(0) must be positive"));
            }
            PhiFamily::custom(
                polynomial(coefficients, 0),
                polynomial(coefficients, 1),
                polynomial(coefficients, 2),
                *bound,
                Vec::new(),
                false,
            )
            .map_err(|e| CliError::validation("phi", e))?
        }
    })
}

fn vector(field: &str, coeffs: &[f64], dim: usize) -> Result<AlgVector, CliError> {
    if coeffs.len() != dim {
        return Err(CliError::validation(field, format!("expected {dim} components, got {}", coeffs.len())));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(CliError::validation(field, "components must be finite"));
    }
    Ok(AlgVector::new(coeffs.to_vec()))
}

fn algebra(file: &InstanceFile) -> Result<LieAlgebra, CliError> {
    let n = file.dim;
    let mut seen: Vec<((usize, usize, usize), usize)> = Vec::new();
    let mut entries = Vec::with_capacity(file.brackets.len());
    for (idx, b) in file.brackets.iter().enumerate() {
        let field = format!("brackets[{idx}]");
        if [b.i, b.j, b.k].iter().any(|&x| x == 0 || x > n) {
            return Err(CliError::validation(field, format!("indices must lie in 1..={n}")));
        }
        if !b.c.is_finite() {
            return Err(CliError::validation(field, "coefficient must be finite"));
        }
        if b.i == b.j && b.c != 0.0 {
            return Err(CliError::validation(field, "[e_i, e_i] must vanish"));
        }
        let key = (b.i.min(b.j), b.i.max(b.j), b.k);
        if let Some((_, first)) = seen.iter().find(|(k, _)| *k == key) {
            return Err(CliError::validation(field, format!("repeats the component given in brackets[{first}]")));
        }
        seen.push((key, idx));
        entries.push((b.i - 1, b.j - 1, b.k - 1, b.c));
    }
    LieAlgebra::from_brackets(n, &entries).map_err(|e| CliError::validation("brackets", e))
}

fn metric(file: &InstanceFile, tol: &Tolerances) -> Result<MetricTensor, CliError> {
    let n = file.dim;
    if file.metric.len() != n || file.metric.iter().any(|r| r.len() != n) {
        return Err(CliError::validation("metric", format!("expected a {n} × {n} array")));
    }
    let rows: Vec<f64> = file.metric.iter().flatten().copied().collect();
    MetricTensor::new(n, &rows, tol.pd).map_err(|e| CliError::validation("metric", e))
}

/// Builds and checks the structure described by `file`.
pub fn validate(file: InstanceFile, tol: Tolerances) -> Result<Instance, CliError> {
    let n = file.dim;
    if n == 0 {
        return Err(CliError::validation("dim", "must be positive"));
    }
    let alg = algebra(&file)?;
    let report = alg.validate(tol.alg);
    if !report.passed {
        return Err(CliError::validation(
            "brackets",
            format!(
                "antisymmetry residual {:e}, Jacobi residual {:e}, tolerance {:e}",
                report.antisymmetry_residual, report.jacobi_residual, tol.alg
            ),
        ));
    }
    let g = metric(&file, &tol)?;
    let min_eigenvalue = g.min_eigenvalue();
    let drift = vector("drift", &file.drift, n)?;
    let phi = build_phi(&file.phi)?;
    let space = MetricLieAlgebra::new(alg, g, &tol).map_err(|e| CliError::validation("brackets", e))?;
    let structure = AlphaBetaStructure::new(space, drift, phi, tol).map_err(|e| match e {
        Error::NormBound { norm, bound } => CliError::validation(
            "drift",
            format!("‖X‖ = {norm} must be below the bound b₀ = {bound} of the φ-family"),
        ),
        e => CliError::validation("drift", e),
    })?;
    let validity = structure.validity_check(VALIDITY_SAMPLES);
    if !validity.passed {
        return Err(CliError::validation(
            "phi",
            format!(
                "φ(s) − sφ'(s) + (b² − s²)φ''(s) reaches {} at (s, b) = ({}, {})",
                validity.min_value, validity.min_at.0, validity.min_at.1
            ),
        ));
    }

    let planes = match &file.planes {
        None => None,
        Some(list) => {
            let mut out = Vec::with_capacity(list.len());
            for (idx, p) in list.iter().enumerate() {
                let pole = vector(&format!("planes[{idx}].pole"), &p.pole, n)?;
                let second = vector(&format!("planes[{idx}].second"), &p.second, n)?;
                let tag = CaseTag::from_lifts(p.pole_lift.into(), p.second_lift.into());
                let flag = FlagPlane::orthonormalized(structure.geometry().metric(), tag, &pole, &second, tol.plane)
                    .map_err(|e| CliError::validation(format!("planes[{idx}]"), e))?;
                out.push(UserPlane {
                    case_tag: tag,
                    pole: flag.base_pole().clone(),
                    second: flag.base_second().clone(),
                });
            }
            Some(out)
        }
    };

    let summary = ValidationSummary {
        antisymmetry_residual: report.antisymmetry_residual,
        jacobi_residual: report.jacobi_residual,
        alg_tolerance: tol.alg,
        min_eigenvalue,
        pd_tolerance: tol.pd,
        drift_norm: structure.drift_norm(),
        norm_bound: structure.phi().bound(),
        validity_min: validity.min_value,
    };
    Ok(Instance {
        file,
        structure,
        planes,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        let c = [1.0, 2.0, 3.0, 4.0];
        let s = 0.7;
        assert!((polynomial(&c, 0)(s) - (1.0 + 2.0 * s + 3.0 * s * s + 4.0 * s * s * s)).abs() < 1e-15);
        assert!((polynomial(&c, 1)(s) - (2.0 + 6.0 * s + 12.0 * s * s)).abs() < 1e-14);
        assert!((polynomial(&c, 2)(s) - (6.0 + 24.0 * s)).abs() < 1e-14);
        assert_eq!(polynomial(&c[..1], 2)(s), 0.0);
    }

    #[test]
    fn tolerance_layers() {
        let mut file: InstanceFile = serde_json::from_str(
            r#"{"name":"t","dim":1,"metric":[[1]],"drift":[0],"phi":{"kind":"randers"},"tolerances":{"class":1e-5,"plane":1e-7}}"#,
        )
        .unwrap();
        let tol = resolve_tolerances(&file, &ToleranceOverrides { class: Some(1e-3), ..Default::default() }).unwrap();
        assert_eq!(tol.class, 1e-3);
        assert_eq!(tol.plane, 1e-7);
        assert_eq!(tol.alg, Tolerances::DEFAULT.alg);
        file.tolerances = Some(ToleranceOverrides { pd: Some(-1.0), ..Default::default() });
        assert!(matches!(resolve_tolerances(&file, &ToleranceOverrides::default()), Err(CliError::Validation { .. })));
    }
}
