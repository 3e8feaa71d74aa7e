//! Flag curvature of the lifted metrics `F^c` and `F^v`.
//!
//! A flag is given by a `g`-orthonormal pair `(Y, V)` in the base algebra and
//! a [`CaseTag`] choosing the lift of each: the pole is `Y^c` or `Y^v`, the
//! second vector `V^c` or `V^v`.
//!
//! Closed forms live in [`kc_berwald`], [`kv_berwald`],
//! [`kc_randers_douglas`], [`kv_randers_douglas`] and
//! [`example_specializations`]. The oracles [`flag_oracle_berwald`] and
//! [`flag_oracle_randers_douglas`] evaluate the definition directly on the
//! tangent algebra with a finite-difference fundamental tensor.

mod oracle;
mod theorems;

use alloc::string::String;
use alloc::vec::Vec;

pub use oracle::{flag_curvature_definition, flag_oracle_berwald, flag_oracle_randers_douglas};
pub use theorems::{
    bracket_brace, example_specializations, kc_berwald, kc_randers_douglas, kv_berwald, kv_randers_douglas,
    lift_decompose, master_formula, Brace, LiftDecomposition,
};

use crate::lie::{AlgVector, MetricTensor};
use crate::lift::{Lift, LiftedVector};
use crate::{Error, Result};

/// Lifts of (pole, second vector).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    CC,
    CV,
    VC,
    VV,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [CaseTag::CC, CaseTag::CV, CaseTag::VC, CaseTag::VV];

    pub fn from_lifts(pole: Lift, second: Lift) -> Self {
        match (pole, second) {
            (Lift::Complete, Lift::Complete) => CaseTag::CC,
            (Lift::Complete, Lift::Vertical) => CaseTag::CV,
            (Lift::Vertical, Lift::Complete) => CaseTag::VC,
            (Lift::Vertical, Lift::Vertical) => CaseTag::VV,
        }
    }

    pub fn pole_lift(self) -> Lift {
        match self {
            CaseTag::CC | CaseTag::CV => Lift::Complete,
            CaseTag::VC | CaseTag::VV => Lift::Vertical,
        }
    }

    pub fn second_lift(self) -> Lift {
        match self {
            CaseTag::CC | CaseTag::VC => Lift::Complete,
            CaseTag::CV | CaseTag::VV => Lift::Vertical,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::CC => "cc",
            CaseTag::CV => "cv",
            CaseTag::VC => "vc",
            CaseTag::VV => "vv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        CaseTag::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

/// A flag `(span{Y•, V•}, Y•)` with `(Y, V)` orthonormal in the base metric.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagPlane {
    case_tag: CaseTag,
    base_pole: AlgVector,
    base_second: AlgVector,
}

impl FlagPlane {
    /// Requires `(pole, second)` to be `g`-orthonormal within `tol_plane`.
    pub fn new(metric: &MetricTensor, case_tag: CaseTag, pole: AlgVector, second: AlgVector, tol_plane: f64) -> Result<Self> {
        metric.check_dim(pole.dim())?;
        metric.check_dim(second.dim())?;
        let residual = (metric.inner(&pole, &pole) - 1.0)
            .abs()
            .max((metric.inner(&second, &second) - 1.0).abs())
            .max(metric.inner(&pole, &second).abs());
        if !(residual <= tol_plane) {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(FlagPlane {
            case_tag,
            base_pole: pole,
            base_second: second,
        })
    }

    /// Gram–Schmidt under `g`: the pole keeps its direction, the second
    /// vector keeps the side of the pole it was on.
    pub fn orthonormalized(
        metric: &MetricTensor,
        case_tag: CaseTag,
        pole: &AlgVector,
        second: &AlgVector,
        tol_plane: f64,
    ) -> Result<Self> {
        metric.check_dim(pole.dim())?;
        metric.check_dim(second.dim())?;
        let np = metric.norm(pole);
        if !(np > 0.0) {
            return Err(Error::ZeroVector);
        }
        let ps = metric.inner(pole, second);
        let gram = metric.inner(pole, pole) * metric.inner(second, second) - ps * ps;
        if !(gram > tol_plane) {
            return Err(Error::DegeneratePlane { gram });
        }
        let y = pole.scaled(1.0 / np);
        let w = metric.reject(second, &y);
        let v = w.scaled(1.0 / metric.norm(&w));
        Ok(FlagPlane {
            case_tag,
            base_pole: y,
            base_second: v,
        })
    }

    pub fn case_tag(&self) -> CaseTag {
        self.case_tag
    }

    pub fn base_pole(&self) -> &AlgVector {
        &self.base_pole
    }

    pub fn base_second(&self) -> &AlgVector {
        &self.base_second
    }

    pub fn pole(&self) -> LiftedVector {
        LiftedVector::lift(&self.base_pole, self.case_tag.pole_lift())
    }

    pub fn second(&self) -> LiftedVector {
        LiftedVector::lift(&self.base_second, self.case_tag.second_lift())
    }
}

/// A curvature value or the reason it does not exist.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvatureValue {
    Defined(f64),
    Undefined(String),
}

impl CurvatureValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            CurvatureValue::Defined(v) => Some(*v),
            CurvatureValue::Undefined(_) => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, CurvatureValue::Defined(_))
    }
}

/// How a curvature value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Closed-form case formula.
    TheoremFormula,
    /// Definition-level evaluation on the tangent algebra.
    Oracle,
    /// Randers-Douglas master formula on the tangent algebra.
    DengHu,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::TheoremFormula => "theorem_formula",
            Method::Oracle => "oracle",
            Method::DengHu => "deng_hu",
        }
    }
}

/// Named intermediate quantity of a curvature evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureResult {
    pub value: CurvatureValue,
    pub method: Method,
    pub terms: Vec<Term>,
}

impl CurvatureResult {
    pub(crate) fn defined(value: f64, method: Method, terms: Vec<Term>) -> Self {
        CurvatureResult {
            value: CurvatureValue::Defined(value),
            method,
            terms,
        }
    }

    pub(crate) fn undefined(reason: String, method: Method) -> Self {
        CurvatureResult {
            value: CurvatureValue::Undefined(reason),
            method,
            terms: Vec::new(),
        }
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|t| t.name == name).map(|t| t.value)
    }
}

pub(crate) fn term(name: &'static str, value: f64) -> Term {
    Term { name, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn case_tag_round_trip() {
        for t in CaseTag::ALL {
            assert_eq!(CaseTag::from_lifts(t.pole_lift(), t.second_lift()), t);
            assert_eq!(CaseTag::parse(t.as_str()), Some(t));
        }
        assert_eq!(CaseTag::parse("xx"), None);
    }

    #[test]
    fn plane_requires_orthonormal_pair() {
        let g = MetricTensor::identity(3);
        let y = AlgVector::new(vec![1.0, 0.0, 0.0]);
        let v = AlgVector::new(vec![1.0, 1.0, 0.0]);
        assert!(matches!(
            FlagPlane::new(&g, CaseTag::CC, y.clone(), v.clone(), 1e-10),
            Err(Error::NotOrthonormal { .. })
        ));
        let p = FlagPlane::orthonormalized(&g, CaseTag::CV, &y, &v, 1e-10).unwrap();
        assert_eq!(p.base_second(), &AlgVector::new(vec![0.0, 1.0, 0.0]));
        assert_eq!(p.pole().flatten().coeffs(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.second().flatten().coeffs(), &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn collinear_plane_rejected() {
        let g = MetricTensor::identity(2);
        let y = AlgVector::new(vec![1.0, 2.0]);
        assert!(matches!(
            FlagPlane::orthonormalized(&g, CaseTag::CC, &y, &y.scaled(3.0), 1e-10),
            Err(Error::DegeneratePlane { .. })
        ));
    }
}
