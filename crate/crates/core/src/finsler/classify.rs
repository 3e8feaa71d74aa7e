//! Berwald and Douglas classification of `F`, `F^c` and `F^v`.
//!
//! A left-invariant (α,β)-metric is Berwald iff its drift is parallel, and a
//! non-Berwald one is Douglas iff it is Randers with `g([z, y], X) = 0` for
//! all `y, z`. Every lifted verdict is computed twice, once from base-algebra
//! criteria and once directly on the tangent algebra; disagreement is an
//! [`Error::InternalInconsistency`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{AlphaBetaStructure, PhiKind};
use crate::connection::MetricGeometry;
use crate::lie::AlgVector;
use crate::lift::Lift;
use crate::{Error, Result};

/// Why a metric is (or is not) Douglas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DouglasReason {
    Berwald,
    RandersDouglas,
    NotDouglas,
    /// Non-Berwald custom φ; no criterion applies.
    Unknown,
}

impl DouglasReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DouglasReason::Berwald => "berwald",
            DouglasReason::RandersDouglas => "randers-douglas",
            DouglasReason::NotDouglas => "not-douglas",
            DouglasReason::Unknown => "unknown",
        }
    }
}

/// A failed criterion instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub criterion: &'static str,
    pub first: String,
    pub second: Option<String>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub berwald: bool,
    /// `None` when undecidable ([`DouglasReason::Unknown`]).
    pub douglas: Option<bool>,
    pub reason: DouglasReason,
    /// Max residual of the Berwald criterion.
    pub berwald_residual: f64,
    /// Max residual of the Randers-Douglas criterion, when it was evaluated.
    pub douglas_residual: Option<f64>,
    pub tolerance: f64,
    pub witnesses: Vec<Witness>,
}

impl Classification {
    fn from_parts(
        kind: PhiKind,
        berwald_residual: f64,
        douglas_residual: Option<f64>,
        tol: f64,
        witnesses: Vec<Witness>,
    ) -> Self {
        let berwald = kind == PhiKind::Riemannian || berwald_residual <= tol;
        let (douglas, reason) = if berwald {
            (Some(true), DouglasReason::Berwald)
        } else {
            match kind {
                PhiKind::Randers => match douglas_residual {
                    Some(r) if r <= tol => (Some(true), DouglasReason::RandersDouglas),
                    _ => (Some(false), DouglasReason::NotDouglas),
                },
                PhiKind::Kropina | PhiKind::Matsumoto => (Some(false), DouglasReason::NotDouglas),
                PhiKind::Custom => (None, DouglasReason::Unknown),
                PhiKind::Riemannian => unreachable!("riemannian is always berwald"),
            }
        };
        Classification {
            berwald,
            douglas,
            reason,
            berwald_residual,
            douglas_residual,
            tolerance: tol,
            witnesses,
        }
    }

    /// `berwald ⇒ douglas`.
    pub fn is_consistent(&self) -> bool {
        !self.berwald || self.douglas == Some(true)
    }
}

fn label(i: usize, n: Option<usize>) -> String {
    match n {
        None => format!("e{}", i + 1),
        Some(n) if i < n => format!("e{}^c", i + 1),
        Some(n) => format!("e{}^v", i - n + 1),
    }
}

/// Max over `i` of `‖∇_{e_i} X‖`, plus witnesses above `tol`.
fn parallel_residual(geo: &MetricGeometry, x: &AlgVector, tol: f64, tangent_half: Option<usize>) -> (f64, Vec<Witness>) {
    let d = geo.dim();
    let mut worst: f64 = 0.0;
    let mut wit = Vec::new();
    for i in 0..d {
        let r = geo.nabla(&AlgVector::basis(d, i), x).max_abs();
        worst = worst.max(r);
        if r > tol {
            wit.push(Witness {
                criterion: "nabla_drift",
                first: label(i, tangent_half),
                second: None,
                residual: r,
            });
        }
    }
    (worst, wit)
}

/// Max over `i < j` of `|g([e_i, e_j], X)|`, plus witnesses above `tol`.
fn closed_residual(geo: &MetricGeometry, x: &AlgVector, tol: f64, tangent_half: Option<usize>) -> (f64, Vec<Witness>) {
    let d = geo.dim();
    let mut worst: f64 = 0.0;
    let mut wit = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let r = geo.inner(&geo.bracket(&AlgVector::basis(d, i), &AlgVector::basis(d, j)), x).abs();
            worst = worst.max(r);
            if r > tol {
                wit.push(Witness {
                    criterion: "bracket_drift",
                    first: label(i, tangent_half),
                    second: Some(label(j, tangent_half)),
                    residual: r,
                });
            }
        }
    }
    (worst, wit)
}

fn classify_on(geo: &MetricGeometry, x: &AlgVector, kind: PhiKind, tol: f64, tangent_half: Option<usize>) -> Classification {
    let (br, mut wit) = parallel_residual(geo, x, tol, tangent_half);
    let dr = if kind == PhiKind::Randers && br > tol {
        let (dr, w) = closed_residual(geo, x, tol, tangent_half);
        wit.extend(w);
        Some(dr)
    } else {
        None
    };
    Classification::from_parts(kind, br, dr, tol, wit)
}

fn mismatch(what: &str, predicted: &Classification, direct: &Classification) -> Error {
    Error::InternalInconsistency(format!(
        "{what}: predicted berwald={} douglas={:?}, direct berwald={} douglas={:?}",
        predicted.berwald, predicted.douglas, direct.berwald, direct.douglas
    ))
}

/// Classifies `F` from the base connection and brackets.
pub fn classify_base(s: &AlphaBetaStructure) -> Classification {
    classify_on(s.geometry(), s.drift(), s.phi().kind(), s.tolerances().class, None)
}

/// Classifies `F^c`.
///
/// `F^c` has the same type as `F`; this is checked against the criteria
/// evaluated directly on the tangent algebra with drift `X^c`.
pub fn classify_fc(s: &AlphaBetaStructure) -> Result<Classification> {
    let predicted = classify_base(s);
    let n = s.dim();
    let direct = classify_on(
        s.lifted().tangent(),
        &s.lifted_drift(Lift::Complete).flatten(),
        s.phi().kind(),
        s.tolerances().class,
        Some(n),
    );
    if predicted.berwald != direct.berwald || predicted.douglas != direct.douglas {
        return Err(mismatch("complete lift", &predicted, &direct));
    }
    Ok(direct)
}

/// Classifies `F^v`.
///
/// Berwald iff `ad*_X = ad_X` and `∇_X Y = ½[X, Y]` for all `Y`. When `F` is
/// Berwald this must coincide with `X` being central. For Randers, `F^v` is
/// Douglas iff `F` is. Each of these is checked against the direct criteria
/// on the tangent algebra with drift `X^v`.
pub fn classify_fv(s: &AlphaBetaStructure) -> Result<Classification> {
    let geo = s.geometry();
    let x = s.drift();
    let kind = s.phi().kind();
    let tol = s.tolerances().class;
    let n = s.dim();

    let mut lemma: f64 = 0.0;
    let mut center: f64 = 0.0;
    for i in 0..n {
        let e = AlgVector::basis(n, i);
        let ad = geo.bracket(x, &e);
        lemma = lemma.max((&geo.ad_star(x, &e) - &ad).max_abs());
        lemma = lemma.max((&geo.nabla(x, &e) - &ad.scaled(0.5)).max_abs());
        center = center.max(ad.max_abs());
    }
    let predicted_berwald = kind == PhiKind::Riemannian || lemma <= tol;

    let direct = classify_on(
        s.lifted().tangent(),
        &s.lifted_drift(Lift::Vertical).flatten(),
        kind,
        tol,
        Some(n),
    );
    if predicted_berwald != direct.berwald {
        return Err(Error::InternalInconsistency(format!(
            "vertical lift Berwald: base criterion residual {lemma:e}, direct residual {:e}",
            direct.berwald_residual
        )));
    }

    let base = classify_base(s);
    if base.berwald && kind != PhiKind::Riemannian && (center <= tol) != direct.berwald {
        return Err(Error::InternalInconsistency(format!(
            "vertical lift Berwald: center residual {center:e} disagrees with direct verdict {}",
            direct.berwald
        )));
    }

    if kind == PhiKind::Randers && !direct.berwald && base.douglas != direct.douglas {
        return Err(mismatch("vertical lift Douglas", &base, &direct));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;
    use crate::connection::MetricLieAlgebra;
    use crate::finsler::PhiFamily;
    use crate::lie::{LieAlgebra, MetricTensor};
    use crate::Tolerances;

    fn build(alg: LieAlgebra, x: &[f64], phi: PhiFamily) -> AlphaBetaStructure {
        let n = alg.dim();
        let m = MetricLieAlgebra::new(alg, MetricTensor::identity(n), &Tolerances::DEFAULT).unwrap();
        AlphaBetaStructure::new(m, AlgVector::new(x.to_vec()), phi, Tolerances::DEFAULT).unwrap()
    }

    #[test]
    fn abelian_is_berwald_everywhere() {
        let s = build(LieAlgebra::abelian(3), &[0.2, 0.1, -0.3], PhiFamily::randers());
        assert!(classify_base(&s).berwald);
        assert!(classify_fc(&s).unwrap().berwald);
        assert!(classify_fv(&s).unwrap().berwald);
    }

    #[test]
    fn heisenberg_orthogonal_to_derived() {
        let s = build(algebras::heisenberg3(), &[1.0, 0.0, 0.0].map(|c| 0.5 * c), PhiFamily::randers());
        let b = classify_base(&s);
        assert!(!b.berwald);
        assert_eq!(b.douglas, Some(true));
        assert_eq!(b.reason, DouglasReason::RandersDouglas);
        assert!(b.witnesses.iter().any(|w| w.first == "e2" && (w.residual - 0.25).abs() < 1e-15));
        assert_eq!(classify_fc(&s).unwrap().douglas, Some(true));
        assert_eq!(classify_fv(&s).unwrap().douglas, Some(true));
    }

    #[test]
    fn heisenberg_central_drift() {
        let s = build(algebras::heisenberg3(), &[0.0, 0.0, 0.5], PhiFamily::randers());
        let b = classify_base(&s);
        assert!(!b.berwald);
        assert_eq!(b.douglas, Some(false));
        assert_eq!(b.douglas_residual, Some(0.5));
        let fc = classify_fc(&s).unwrap();
        assert_eq!(fc.douglas, Some(false));
        let fv = classify_fv(&s).unwrap();
        assert!(!fv.berwald);
        assert_eq!(fv.douglas, Some(false));
    }

    #[test]
    fn direct_sum_central_factor_is_berwald_for_both_lifts() {
        let s = build(algebras::heisenberg3_plus_r(), &[0.0, 0.0, 0.0, 0.4], PhiFamily::randers());
        assert!(classify_base(&s).berwald);
        assert!(classify_fc(&s).unwrap().berwald);
        assert!(classify_fv(&s).unwrap().berwald);
    }

    #[test]
    fn matsumoto_non_berwald_is_not_douglas() {
        let s = build(algebras::heisenberg3(), &[0.3, 0.0, 0.0], PhiFamily::matsumoto());
        let b = classify_base(&s);
        assert_eq!(b.reason, DouglasReason::NotDouglas);
        assert_eq!(b.douglas_residual, None);
        assert!(b.is_consistent());
    }

    #[test]
    fn riemannian_is_berwald() {
        let s = build(algebras::so3(), &[0.3, 0.0, 0.0], PhiFamily::riemannian());
        assert!(classify_base(&s).berwald);
        assert!(classify_fc(&s).unwrap().berwald);
        assert!(classify_fv(&s).unwrap().berwald);
    }

    #[test]
    fn tangent_witness_labels() {
        let s = build(algebras::heisenberg3(), &[0.0, 0.0, 0.5], PhiFamily::randers());
        let fc = classify_fc(&s).unwrap();
        assert!(fc
            .witnesses
            .iter()
            .any(|w| w.criterion == "bracket_drift" && w.first == "e1^c" && w.second.as_deref() == Some("e2^c")));
    }
}
