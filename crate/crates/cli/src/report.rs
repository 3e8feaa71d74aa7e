//! Analysis runs and their reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use tangent_finsler::finsler::{
    classify_base, classify_fc, classify_fv, AlphaBetaStructure, Classification, PhiKind,
};
use tangent_finsler::flag::{
    example_specializations, flag_oracle_berwald, flag_oracle_randers_douglas, kc_berwald, kc_randers_douglas,
    kv_berwald, kv_randers_douglas,
};
use tangent_finsler::{sample, CaseTag, CurvatureResult, CurvatureValue, Error, FlagPlane, Lift, Tolerances};

use crate::instance::{Instance, ValidationSummary};
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PLANES: usize = 20;
/// Closed form against the definition-level oracle (finite-difference `g_y`).
pub const ORACLE_TOLERANCE: f64 = 1e-6;
/// Specialised prefactor tables against the generic Berwald formula.
pub const SPECIALIZATION_TOLERANCE: f64 = 1e-10;
/// Kropina planes keep `g(X, Y) ≥ margin · ‖X‖`.
pub const KROPINA_POLE_MARGIN: f64 = 0.1;

/// A number that may not exist. Serialised with an explicit `status` tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case", deny_unknown_fields)]
pub enum Num {
    Defined { value: f64 },
    /// The metric or a denominator is singular on this flag.
    Undefined { reason: String },
    /// No closed form applies to this lift.
    NotComputed { reason: String },
}

impl Num {
    pub fn value(&self) -> Option<f64> {
        match self {
            Num::Defined { value } => Some(*value),
            _ => None,
        }
    }

    fn finite(value: f64) -> Num {
        if value.is_finite() {
            Num::Defined { value }
        } else {
            Num::Undefined {
                reason: format!("non-finite value {value}"),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRow {
    pub criterion: String,
    pub first: String,
    pub second: Option<String>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationRow {
    /// `F`, `F^c` or `F^v`.
    pub metric: String,
    pub berwald: bool,
    /// `null` when the criteria do not decide.
    pub douglas: Option<bool>,
    pub reason: String,
    pub berwald_residual: f64,
    pub douglas_residual: Option<f64>,
    pub tolerance: f64,
    pub witnesses: Vec<WitnessRow>,
}

impl ClassificationRow {
    fn new(metric: &str, c: &Classification) -> Self {
        ClassificationRow {
            metric: metric.to_string(),
            berwald: c.berwald,
            douglas: c.douglas,
            reason: c.reason.as_str().to_string(),
            berwald_residual: c.berwald_residual,
            douglas_residual: c.douglas_residual,
            tolerance: c.tolerance,
            witnesses: c
                .witnesses
                .iter()
                .map(|w| WitnessRow {
                    criterion: w.criterion.to_string(),
                    first: w.first.clone(),
                    second: w.second.clone(),
                    residual: w.residual,
                })
                .collect(),
        }
    }
}

/// Second evaluation of a row's value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    /// `oracle` or `specialization`.
    pub against: String,
    pub value: Num,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureRow {
    /// `complete` or `vertical`.
    pub lift: String,
    pub case_tag: String,
    pub plane_index: usize,
    pub pole: Vec<f64>,
    pub second: Vec<f64>,
    pub method: String,
    pub value: Num,
    pub defined: bool,
    pub checks: Vec<Check>,
    pub terms: BTreeMap<String, Num>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceRow {
    pub alg: f64,
    pub pd: f64,
    pub rank: f64,
    pub plane: f64,
    pub class: f64,
}

impl From<Tolerances> for ToleranceRow {
    fn from(t: Tolerances) -> Self {
        ToleranceRow {
            alg: t.alg,
            pd: t.pd,
            rank: t.rank,
            plane: t.plane,
            class: t.class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub seed: u64,
    /// `random` or `file`.
    pub plane_source: String,
    pub planes_per_case: Option<usize>,
    pub tolerances: ToleranceRow,
    pub oracle_tolerance: f64,
    pub specialization_tolerance: f64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub instance: String,
    pub phi: String,
    pub validation: ValidationSummary,
    pub classifications: Vec<ClassificationRow>,
    pub curvature: Vec<CurvatureRow>,
    pub inconsistencies: Vec<String>,
    pub provenance: Provenance,
}

impl Report {
    /// 0, or 2 when a cross-check failed.
    pub fn exit_code(&self) -> u8 {
        if self.inconsistencies.is_empty() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report fields are finite");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, CliError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Random planes per case tag; overrides planes listed in the file.
    pub planes: Option<usize>,
    pub seed: Option<u64>,
}

struct Sampled {
    case_tag: CaseTag,
    index: usize,
    plane: Result<FlagPlane, Error>,
}

fn sample_planes(s: &AlphaBetaStructure, per_case: usize, seed: u64) -> Vec<Sampled> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let metric = s.geometry().metric();
    let mut out = Vec::with_capacity(4 * per_case);
    for tag in CaseTag::ALL {
        for index in 0..per_case {
            let plane = if s.phi().positive_only() {
                sample::plane_with_positive_pole(&mut rng, metric, tag, s.drift(), KROPINA_POLE_MARGIN)
            } else {
                Ok(sample::plane(&mut rng, metric, tag))
            };
            out.push(Sampled {
                case_tag: tag,
                index,
                plane,
            });
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Route {
    Berwald,
    RandersDouglas,
}

fn route(s: &AlphaBetaStructure, c: Option<&Classification>) -> Result<Route, String> {
    match c {
        None => Err("classification of this lift failed".into()),
        Some(c) if c.berwald => Ok(Route::Berwald),
        Some(c) if s.phi().kind() == PhiKind::Randers && c.douglas == Some(true) => Ok(Route::RandersDouglas),
        Some(_) => Err("no closed form: the lift is neither Berwald nor a Randers metric of Douglas type".into()),
    }
}

fn to_num(r: &Result<CurvatureResult, Error>) -> Num {
    match r {
        Ok(c) => match &c.value {
            CurvatureValue::Defined(v) => Num::finite(*v),
            CurvatureValue::Undefined(reason) => Num::Undefined { reason: reason.clone() },
        },
        Err(e) => Num::Undefined { reason: e.to_string() },
    }
}

fn check(against: &str, theorem: &Num, other: Num, tolerance: f64) -> Check {
    let (residual, passed) = match (theorem, &other) {
        (Num::Defined { value: a }, Num::Defined { value: b }) => {
            let r = (a - b).abs();
            (Some(r), r <= tolerance)
        }
        (Num::Undefined { .. }, Num::Undefined { .. }) => (None, true),
        _ => (None, false),
    };
    Check {
        against: against.to_string(),
        value: other,
        residual,
        tolerance,
        passed,
    }
}

fn lift_label(which: Lift) -> &'static str {
    match which {
        Lift::Complete => "F^c",
        Lift::Vertical => "F^v",
    }
}

fn evaluate(
    s: &AlphaBetaStructure,
    which: Lift,
    route: &Result<Route, String>,
    base_berwald: bool,
    sampled: &Sampled,
    inconsistencies: &mut Vec<String>,
) -> CurvatureRow {
    let mut row = CurvatureRow {
        lift: which.as_str().to_string(),
        case_tag: sampled.case_tag.as_str().to_string(),
        plane_index: sampled.index,
        pole: Vec::new(),
        second: Vec::new(),
        method: "none".to_string(),
        value: Num::NotComputed { reason: String::new() },
        defined: false,
        checks: Vec::new(),
        terms: BTreeMap::new(),
    };
    let plane = match &sampled.plane {
        Ok(p) => p,
        Err(e) => {
            row.value = Num::Undefined { reason: e.to_string() };
            return row;
        }
    };
    row.pole = plane.base_pole().coeffs().to_vec();
    row.second = plane.base_second().coeffs().to_vec();
    let route = match route {
        Ok(r) => *r,
        Err(reason) => {
            row.value = Num::NotComputed { reason: reason.clone() };
            return row;
        }
    };

    let (theorem, oracle) = match (route, which) {
        (Route::Berwald, Lift::Complete) => (kc_berwald(s, plane), flag_oracle_berwald(s, which, plane)),
        (Route::Berwald, Lift::Vertical) => (kv_berwald(s, plane), flag_oracle_berwald(s, which, plane)),
        (Route::RandersDouglas, Lift::Complete) => (kc_randers_douglas(s, plane), flag_oracle_randers_douglas(s, which, plane)),
        (Route::RandersDouglas, Lift::Vertical) => (kv_randers_douglas(s, plane), flag_oracle_randers_douglas(s, which, plane)),
    };
    let label = format!("{} {} plane {}", lift_label(which), sampled.case_tag.as_str(), sampled.index);
    for r in [&theorem, &oracle] {
        if let Err(Error::InternalInconsistency(msg)) = r {
            inconsistencies.push(format!("{label}: {msg}"));
        }
    }

    row.value = to_num(&theorem);
    row.defined = matches!(row.value, Num::Defined { .. });
    if let Ok(t) = &theorem {
        row.method = t.method.as_str().to_string();
        row.terms = t.terms.iter().map(|t| (t.name.to_string(), Num::finite(t.value))).collect();
    } else {
        row.method = "theorem_formula".to_string();
    }
    row.checks.push(check("oracle", &row.value, to_num(&oracle), ORACLE_TOLERANCE));

    let specialised = matches!(s.phi().kind(), PhiKind::Matsumoto | PhiKind::Kropina);
    if matches!(route, Route::Berwald) && specialised && base_berwald {
        let spec = example_specializations(s, which, plane);
        row.checks.push(check("specialization", &row.value, to_num(&spec), SPECIALIZATION_TOLERANCE));
    }
    for c in &row.checks {
        if !c.passed {
            let detail = match c.residual {
                Some(r) => format!("differs by {r:e} (tolerance {:e})", c.tolerance),
                None => "disagrees on whether the value is defined".to_string(),
            };
            inconsistencies.push(format!("{label}: {} {detail}", c.against));
        }
    }
    row
}

/// Classifies the three metrics and evaluates every flag.
///
/// Errors inside a single evaluation become undefined rows; failed
/// cross-checks are collected in [`Report::inconsistencies`].
pub fn run_analysis(inst: &Instance, opts: &AnalysisOptions) -> Report {
    let s = &inst.structure;
    let seed = opts.seed.or(inst.file.seed).unwrap_or(0);
    let mut inconsistencies = Vec::new();

    let base = classify_base(s);
    let mut lifted = |which: Lift, r: Result<Classification, Error>| match r {
        Ok(c) => Some(c),
        Err(e) => {
            inconsistencies.push(format!("{} classification: {e}", lift_label(which)));
            None
        }
    };
    let fc = lifted(Lift::Complete, classify_fc(s));
    let fv = lifted(Lift::Vertical, classify_fv(s));
    let mut classifications = vec![ClassificationRow::new("F", &base)];
    for (which, c) in [(Lift::Complete, &fc), (Lift::Vertical, &fv)] {
        if let Some(c) = c {
            classifications.push(ClassificationRow::new(lift_label(which), c));
        }
    }
    for row in &classifications {
        if row.berwald && row.douglas != Some(true) {
            inconsistencies.push(format!("{}: Berwald but not Douglas", row.metric));
        }
    }

    let (sampled, plane_source, per_case) = match (&inst.planes, opts.planes) {
        (Some(list), None) => {
            let sampled = list
                .iter()
                .enumerate()
                .map(|(index, p)| Sampled {
                    case_tag: p.case_tag,
                    index,
                    plane: FlagPlane::new(
                        s.geometry().metric(),
                        p.case_tag,
                        p.pole.clone(),
                        p.second.clone(),
                        s.tolerances().plane.max(1e-9),
                    ),
                })
                .collect();
            (sampled, "file", None)
        }
        (_, n) => {
            let n = n.unwrap_or(DEFAULT_PLANES);
            (sample_planes(s, n, seed), "random", Some(n))
        }
    };

    let mut curvature = Vec::with_capacity(2 * sampled.len());
    for (which, c) in [(Lift::Complete, &fc), (Lift::Vertical, &fv)] {
        let r = route(s, c.as_ref());
        for p in &sampled {
            curvature.push(evaluate(s, which, &r, base.berwald, p, &mut inconsistencies));
        }
    }
    curvature.sort_by(|a, b| {
        let key = |r: &CurvatureRow| (r.lift != "complete", CaseTag::parse(&r.case_tag), r.plane_index);
        key(a).cmp(&key(b))
    });

    Report {
        schema_version: SCHEMA_VERSION,
        instance: inst.file.name.clone(),
        phi: s.phi().kind().as_str().to_string(),
        validation: inst.summary.clone(),
        classifications,
        curvature,
        inconsistencies,
        provenance: Provenance {
            seed,
            plane_source: plane_source.to_string(),
            planes_per_case: per_case,
            tolerances: (*s.tolerances()).into(),
            oracle_tolerance: ORACLE_TOLERANCE,
            specialization_tolerance: SPECIALIZATION_TOLERANCE,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    }
}

fn fixed(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

fn opt_sci(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.1e}"))
}

fn vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{:.3}", x)).collect();
    format!("({})", parts.join(", "))
}

/// Aligned plain-text tables.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let v = &r.validation;
    let p = &r.provenance;
    let _ = writeln!(out, "instance  {}  (phi: {}, schema {})", r.instance, r.phi, r.schema_version);
    let planes = match p.planes_per_case {
        Some(n) => format!("{n} random planes per case tag"),
        None => "planes from file".to_string(),
    };
    let _ = writeln!(out, "seed      {}  ({planes})", p.seed);
    let _ = writeln!(out);
    let _ = writeln!(out, "validation");
    let _ = writeln!(out, "  {:<24}{:>12.1e}   tolerance {:.1e}", "antisymmetry residual", v.antisymmetry_residual, v.alg_tolerance);
    let _ = writeln!(out, "  {:<24}{:>12.1e}   tolerance {:.1e}", "Jacobi residual", v.jacobi_residual, v.alg_tolerance);
    let _ = writeln!(out, "  {:<24}{:>12.6}   threshold {:.1e}", "min eigenvalue of g", v.min_eigenvalue, v.pd_tolerance);
    let bound = v.norm_bound.map_or_else(|| "none".to_string(), |b| format!("{b}"));
    let _ = writeln!(out, "  {:<24}{:>12.6}   bound {bound}", "drift norm", v.drift_norm);
    let _ = writeln!(out, "  {:<24}{:>12.6}   must be > 0", "validity minimum", v.validity_min);
    let _ = writeln!(out);

    let _ = writeln!(out, "classification");
    let _ = writeln!(
        out,
        "  {:<6} {:<8} {:<8} {:<16} {:>16} {:>16} {:>10}",
        "metric", "berwald", "douglas", "reason", "berwald resid.", "douglas resid.", "tolerance"
    );
    for c in &r.classifications {
        let _ = writeln!(
            out,
            "  {:<6} {:<8} {:<8} {:<16} {:>16.1e} {:>16} {:>10.1e}",
            c.metric,
            yes_no(Some(c.berwald)),
            yes_no(c.douglas),
            c.reason,
            c.berwald_residual,
            opt_sci(c.douglas_residual),
            c.tolerance
        );
    }
    for c in &r.classifications {
        for w in c.witnesses.iter().take(3) {
            let pair = match &w.second {
                Some(s) => format!("({}, {})", w.first, s),
                None => w.first.clone(),
            };
            let _ = writeln!(out, "    {} witness: {} at {pair}, residual {:.3e}", c.metric, w.criterion, w.residual);
        }
        if c.witnesses.len() > 3 {
            let _ = writeln!(out, "    {} witness: {} more", c.metric, c.witnesses.len() - 3);
        }
    }
    let _ = writeln!(out);

    let _ = writeln!(out, "curvature");
    let _ = writeln!(
        out,
        "  {:<6} {:<4} {:>5}  {:<16} {:<16} {:>10} {:>10}  {:<26} second",
        "metric", "case", "plane", "value", "method", "oracle", "special.", "pole"
    );
    let mut skipped: Vec<(String, String)> = Vec::new();
    for row in &r.curvature {
        let metric = if row.lift == "complete" { "F^c" } else { "F^v" };
        let value = match &row.value {
            Num::Defined { value } => format!("K = {}", fixed(*value)),
            Num::Undefined { .. } => "undefined".to_string(),
            Num::NotComputed { reason } => {
                if !skipped.iter().any(|(m, _)| m == metric) {
                    skipped.push((metric.to_string(), reason.clone()));
                }
                continue;
            }
        };
        let resid = |name: &str| {
            row.checks.iter().find(|c| c.against == name).map_or_else(
                || "-".to_string(),
                |c| match (c.residual, c.passed) {
                    (Some(x), true) => format!("{x:.1e}"),
                    (None, true) => "both undef".to_string(),
                    (Some(x), false) => format!("FAIL {x:.0e}"),
                    (None, false) => "FAIL".to_string(),
                },
            )
        };
        let _ = writeln!(
            out,
            "  {:<6} {:<4} {:>5}  {:<16} {:<16} {:>10} {:>10}  {:<26} {}",
            metric,
            row.case_tag,
            row.plane_index,
            value,
            row.method,
            resid("oracle"),
            resid("specialization"),
            vector(&row.pole),
            vector(&row.second)
        );
    }
    for (metric, reason) in &skipped {
        let _ = writeln!(out, "  {metric}: {reason}");
    }
    let _ = writeln!(out);
    if r.inconsistencies.is_empty() {
        let _ = writeln!(out, "inconsistencies: none");
    } else {
        let _ = writeln!(out, "inconsistencies: {}", r.inconsistencies.len());
        for i in &r.inconsistencies {
            let _ = writeln!(out, "  {i}");
        }
    }
    out
}

