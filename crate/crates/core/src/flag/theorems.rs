//! Closed-form flag curvatures of `F^c` and `F^v`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{term, CaseTag, CurvatureResult, FlagPlane, Method, Term};
use crate::connection::MetricGeometry;
use crate::finsler::{classify_base, classify_fc, classify_fv, AlphaBetaStructure, PhiKind};
use crate::lie::AlgVector;
use crate::lift::{Lift, LiftedVector, TangentMetricLieAlgebra};
use crate::{Error, Result};

/// Block split of `Ũ(Y^c, Y^c) = (η, δ)` and `Ũ(Y^v, Y^v) = (λ, μ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftDecomposition {
    pub eta: AlgVector,
    pub delta: AlgVector,
    pub lambda: AlgVector,
    pub mu: AlgVector,
}

impl LiftDecomposition {
    pub fn u_cc(&self) -> LiftedVector {
        LiftedVector {
            complete: self.eta.clone(),
            vertical: self.delta.clone(),
        }
    }

    pub fn u_vv(&self) -> LiftedVector {
        LiftedVector {
            complete: self.lambda.clone(),
            vertical: self.mu.clone(),
        }
    }
}

pub fn lift_decompose(t: &TangentMetricLieAlgebra, y: &AlgVector) -> LiftDecomposition {
    let tangent = t.tangent();
    let split = |which| {
        let z = LiftedVector::lift(y, which).flatten();
        LiftedVector::from_flat(&tangent.u_map(&z, &z)).expect("even dimension")
    };
    let cc = split(Lift::Complete);
    let vv = split(Lift::Vertical);
    LiftDecomposition {
        eta: cc.complete,
        delta: cc.vertical,
        lambda: vv.complete,
        mu: vv.vertical,
    }
}

/// Sectional curvature of the lifted Riemannian metric on `span{Y•, V•}`,
/// written through base-algebra quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Brace {
    pub value: f64,
    /// Mixed cases with the `[[Y, V], V]` term taken with coefficient `−½`
    /// instead of `+½`. The two agree when that term vanishes.
    pub printed: f64,
}

/// ```text
/// cc: K(V,Y)
/// cv: K(V,Y) + ½g([V,∇_Y V],Y) − ½g(∇_V ad*_V Y,Y) + ¼g([V,ad*_V Y],Y) + ½g([[Y,V],V],Y)
/// vc: cv with Y and V exchanged
/// vv: K(V,Y) + g(∇_{[V,Y]}Y,V) + ¼‖[V,Y]‖²
/// ```
pub fn bracket_brace(geo: &MetricGeometry, tag: CaseTag, y: &AlgVector, v: &AlgVector) -> Brace {
    match tag {
        CaseTag::CC => {
            let k = base_sectional(geo, y, v);
            Brace { value: k, printed: k }
        }
        CaseTag::CV => mixed_brace(geo, y, v),
        CaseTag::VC => mixed_brace(geo, v, y),
        CaseTag::VV => {
            let k = base_sectional(geo, y, v);
            let vy = geo.bracket(v, y);
            let value = k + geo.inner(&geo.nabla(&vy, y), v) + 0.25 * geo.inner(&vy, &vy);
            Brace { value, printed: value }
        }
    }
}

/// `g(R(V,Y)Y, V)` for an orthonormal pair.
fn base_sectional(geo: &MetricGeometry, y: &AlgVector, v: &AlgVector) -> f64 {
    geo.inner(&geo.curvature(v, y), v)
}

fn mixed_brace(geo: &MetricGeometry, y: &AlgVector, v: &AlgVector) -> Brace {
    let k = base_sectional(geo, y, v);
    let a = geo.ad_star(v, y);
    let common = k + 0.5 * geo.inner(&geo.bracket(v, &geo.nabla(y, v)), y) - 0.5 * geo.inner(&geo.nabla(v, &a), y)
        + 0.25 * geo.inner(&geo.bracket(v, &a), y);
    let last = geo.inner(&geo.bracket(&geo.bracket(y, v), v), y);
    Brace {
        value: common + 0.5 * last,
        printed: common - 0.5 * last,
    }
}

fn check_plane(s: &AlphaBetaStructure, plane: &FlagPlane) -> Result<()> {
    plane.base_pole().check_dim(s.dim())?;
    plane.base_second().check_dim(s.dim())
}

/// `K = brace / (φ(s)² (1 + t² D(s)))` with `s = g̃(X•, pole)` and
/// `t = g̃(X•, second)`.
fn berwald_formula(s: &AlphaBetaStructure, which: Lift, plane: &FlagPlane) -> CurvatureResult {
    let geo = s.geometry();
    let x = s.drift();
    let tag = plane.case_tag();
    let (y, v) = (plane.base_pole(), plane.base_second());
    let sv = if tag.pole_lift() == which { geo.inner(x, y) } else { 0.0 };
    let tv = if tag.second_lift() == which { geo.inner(x, v) } else { 0.0 };
    let phi = s.phi();
    if !phi.is_defined_at(sv) {
        return CurvatureResult::undefined(
            format!("{} profile is not defined at s = {sv}", phi.kind().as_str()),
            Method::TheoremFormula,
        );
    }
    let f = phi.phi(sv);
    let d = if tv == 0.0 { 0.0 } else { phi.d_ratio(sv) };
    let denom = f * f * (1.0 + tv * tv * d);
    if !(denom.is_finite() && denom != 0.0) {
        return CurvatureResult::undefined(format!("singular prefactor at s = {sv}, t = {tv}"), Method::TheoremFormula);
    }
    let b = bracket_brace(geo, tag, y, v);
    let value = b.value / denom;
    let printed = b.printed / denom;
    CurvatureResult::defined(
        value,
        Method::TheoremFormula,
        vec![
            term("s", sv),
            term("t", tv),
            term("phi", f),
            term("D", d),
            term("prefactor", 1.0 / denom),
            term("brace", b.value),
            term("brace_printed", b.printed),
            term("printed", printed),
            term("printed_residual", (value - printed).abs()),
        ],
    )
}

/// Flag curvature of `F^c` when `F` is Berwald.
pub fn kc_berwald(s: &AlphaBetaStructure, plane: &FlagPlane) -> Result<CurvatureResult> {
    check_plane(s, plane)?;
    if !classify_base(s).berwald {
        return Err(Error::Precondition("the base metric is not Berwald".into()));
    }
    Ok(berwald_formula(s, Lift::Complete, plane))
}

/// Flag curvature of `F^v` when `F^v` is Berwald.
pub fn kv_berwald(s: &AlphaBetaStructure, plane: &FlagPlane) -> Result<CurvatureResult> {
    check_plane(s, plane)?;
    if !classify_fv(s)?.berwald {
        return Err(Error::Precondition("the vertical lift is not Berwald".into()));
    }
    Ok(berwald_formula(s, Lift::Vertical, plane))
}

struct MasterParts {
    value: f64,
    k: f64,
    f: f64,
    a: f64,
    b: f64,
}

fn master_parts(
    tangent: &MetricGeometry,
    drift: &AlgVector,
    pole: &AlgVector,
    second: &AlgVector,
    tol_plane: f64,
) -> Result<MasterParts> {
    let a2 = tangent.inner(pole, pole);
    let f = libm::sqrt(a2) + tangent.inner(drift, pole);
    let k = tangent.sectional(second, pole, tol_plane)?;
    let uyy = tangent.u_map(pole, pole);
    let a = tangent.inner(&uyy, drift);
    let b = tangent.inner(&tangent.u_map(pole, &uyy), drift);
    let f2 = f * f;
    let value = a2 / f2 * k + (3.0 * a * a - 4.0 * f * b) / (4.0 * f2 * f2);
    Ok(MasterParts { value, k, f, a, b })
}

/// Flag curvature of the Randers metric `α + g(X, ·)` of Douglas type on a
/// metric Lie algebra:
///
/// ```text
/// K(P, y) = α(y)²/F(y)² K_α(P) + (3 g(U(y,y), X)² − 4 F(y) g(U(y, U(y,y)), X)) / (4 F(y)⁴)
/// ```
pub fn master_formula(
    geo: &MetricGeometry,
    drift: &AlgVector,
    pole: &AlgVector,
    second: &AlgVector,
    tol_plane: f64,
) -> Result<f64> {
    for w in [drift, pole, second] {
        w.check_dim(geo.dim())?;
    }
    Ok(master_parts(geo, drift, pole, second, tol_plane)?.value)
}

fn randers_douglas(s: &AlphaBetaStructure, which: Lift, plane: &FlagPlane) -> Result<CurvatureResult> {
    let t = s.lifted();
    let geo = s.geometry();
    let tag = plane.case_tag();
    let (y, v) = (plane.base_pole(), plane.base_second());
    let x = s.drift();
    let m = master_parts(
        t.tangent(),
        &s.lifted_drift(which).flatten(),
        &plane.pole().flatten(),
        &plane.second().flatten(),
        s.tolerances().plane,
    )?;

    let dec = lift_decompose(t, y);
    let b = bracket_brace(geo, tag, y, v);
    let sv = geo.inner(x, y);
    let opf = 1.0 + sv;
    let xy = geo.bracket(x, y);
    let printed = match (which, tag) {
        (Lift::Complete, CaseTag::CC) => {
            let u = geo.inner(&geo.u_map(y, &dec.eta), x);
            b.printed / (opf * opf) + (3.0 * geo.inner(&xy, y) - 4.0 * opf * u) / (4.0 * opf * opf)
        }
        (Lift::Complete, CaseTag::CV) => {
            let u = geo.inner(&geo.u_map(y, &dec.eta), x);
            let c = geo.inner(&xy, y);
            b.printed / (opf * opf) + (3.0 * c * c - 4.0 * opf * u) / (4.0 * opf * opf)
        }
        (Lift::Complete, CaseTag::VC | CaseTag::VV) => {
            let c = geo.inner(&geo.bracket(y, x), y);
            let u = geo.inner(&geo.u_map(y, &dec.mu), x);
            b.printed + 0.25 * (3.0 * c * c + 4.0 * u)
        }
        (Lift::Vertical, CaseTag::CC | CaseTag::CV) => b.printed - 0.5 * geo.inner(&xy, &dec.delta),
        (Lift::Vertical, CaseTag::VC | CaseTag::VV) => {
            let o2 = opf * opf;
            b.printed / o2 - geo.inner(&geo.bracket(x, &dec.eta), y) / (2.0 * o2 * o2)
        }
    };

    let mut terms: Vec<Term> = vec![
        term("K_tangent", m.k),
        term("F", m.f),
        term("U_yy_drift", m.a),
        term("U_y_Uyy_drift", m.b),
        term("brace", b.value),
        term("brace_printed", b.printed),
        term("printed", printed),
        term("printed_residual", (m.value - printed).abs()),
    ];

    if which == Lift::Vertical {
        let tangent = t.tangent();
        let xv = s.lifted_drift(Lift::Vertical).flatten();
        let ucc = dec.u_cc().flatten();
        let uvv = dec.u_vv().flatten();
        let yc = LiftedVector::lift(y, Lift::Complete).flatten();
        let yv = LiftedVector::lift(y, Lift::Vertical).flatten();
        let checks = [
            ("U_cc_drift", tangent.inner(&ucc, &xv), 0.0),
            ("U_vv_drift", tangent.inner(&uvv, &xv), 0.0),
            (
                "U_c_Ucc_drift",
                tangent.inner(&tangent.u_map(&yc, &ucc), &xv),
                0.5 * geo.inner(&xy, &dec.delta),
            ),
            (
                "U_v_Uvv_drift",
                tangent.inner(&tangent.u_map(&yv, &uvv), &xv),
                0.5 * geo.inner(&geo.bracket(x, &dec.eta), y),
            ),
        ];
        let tol = s.tolerances().class;
        for (name, got, want) in checks {
            if (got - want).abs() > tol * (1.0 + want.abs()) {
                return Err(Error::InternalInconsistency(format!(
                    "vertical-lift identity {name}: tangent value {got:e}, base value {want:e}"
                )));
            }
            terms.push(term(name, got));
        }
    }

    Ok(CurvatureResult::defined(m.value, Method::DengHu, terms))
}

/// Flag curvature of `F^c` for a Randers metric of Douglas type.
///
/// The value is the master formula on the tangent algebra. The case-by-case
/// closed form is recorded as the `printed` term together with its residual.
pub fn kc_randers_douglas(s: &AlphaBetaStructure, plane: &FlagPlane) -> Result<CurvatureResult> {
    check_plane(s, plane)?;
    if s.phi().kind() != PhiKind::Randers {
        return Err(Error::Precondition("metric is not Randers".into()));
    }
    if classify_fc(s)?.douglas != Some(true) {
        return Err(Error::Precondition("the complete lift is not Douglas".into()));
    }
    randers_douglas(s, Lift::Complete, plane)
}

/// Flag curvature of `F^v` for a Randers metric of Douglas type.
pub fn kv_randers_douglas(s: &AlphaBetaStructure, plane: &FlagPlane) -> Result<CurvatureResult> {
    check_plane(s, plane)?;
    if s.phi().kind() != PhiKind::Randers {
        return Err(Error::Precondition("metric is not Randers".into()));
    }
    if classify_fv(s)?.douglas != Some(true) {
        return Err(Error::Precondition("the vertical lift is not Douglas".into()));
    }
    randers_douglas(s, Lift::Vertical, plane)
}

/// Matsumoto and Kropina specialisations with explicit prefactors.
///
/// With `s = g(X, Y)` and `t = g(X, V)`:
///
/// ```text
///              F^c cc                     F^c cv     F^c vc        F^c vv
/// Matsumoto    (1−s)³(1−2s)/(1+2t²+2s²−3s) (1−s)²     1/(1+2t²)     1
/// Kropina      s⁴/(s²+t²)                  s²         undefined     undefined
///
///              F^v cc     F^v cv         F^v vc     F^v vv
/// Matsumoto    1          1/(1+2t²)      (1−s)²     (1−s)³(1−2s)/(1+2t²+2s²−3s)
/// Kropina      undefined  undefined      s²         s⁴/(s²+t²)
/// ```
///
/// Each prefactor multiplies the [`bracket_brace`] of the case.
pub fn example_specializations(s: &AlphaBetaStructure, which: Lift, plane: &FlagPlane) -> Result<CurvatureResult> {
    check_plane(s, plane)?;
    let kind = s.phi().kind();
    if !matches!(kind, PhiKind::Matsumoto | PhiKind::Kropina) {
        return Err(Error::Precondition("specialisations exist for Matsumoto and Kropina only".into()));
    }
    if !classify_base(s).berwald {
        return Err(Error::Precondition("the base metric is not Berwald".into()));
    }
    if which == Lift::Vertical && !classify_fv(s)?.berwald {
        return Err(Error::Precondition("the vertical lift is not Berwald".into()));
    }

    let geo = s.geometry();
    let tag = plane.case_tag();
    let (y, v) = (plane.base_pole(), plane.base_second());
    let sv = geo.inner(s.drift(), y);
    let tv = geo.inner(s.drift(), v);
    let om = 1.0 - sv;
    let full_m = om * om * om * (1.0 - 2.0 * sv) / (1.0 + 2.0 * tv * tv + 2.0 * sv * sv - 3.0 * sv);
    let full_k = sv * sv * sv * sv / (sv * sv + tv * tv);
    // columns of the table, read relative to the lift in use
    let idx = match (tag.pole_lift() == which, tag.second_lift() == which) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 2,
        (false, false) => 3,
    };
    let prefactor = match (kind, idx) {
        (PhiKind::Matsumoto, 0) => Some(full_m),
        (PhiKind::Matsumoto, 1) => Some((1.0 - sv) * (1.0 - sv)),
        (PhiKind::Matsumoto, 2) => Some(1.0 / (1.0 + 2.0 * tv * tv)),
        (PhiKind::Matsumoto, _) => Some(1.0),
        (_, 0) => Some(full_k),
        (_, 1) => Some(sv * sv),
        _ => None,
    };
    let prefactor = match prefactor {
        None => {
            return Ok(CurvatureResult::undefined(
                format!("Kropina {} flag curvature with a {} pole is not defined", lift_name(which), tag.pole_lift().as_str()),
                Method::TheoremFormula,
            ))
        }
        Some(p) => p,
    };
    if kind == PhiKind::Kropina && !(sv > 0.0) {
        return Ok(CurvatureResult::undefined(
            format!("Kropina metric is not defined at a pole with g(X, Y) = {sv}"),
            Method::TheoremFormula,
        ));
    }
    let b = bracket_brace(geo, tag, y, v);
    let value = prefactor * b.value;
    let printed = prefactor * b.printed;
    Ok(CurvatureResult::defined(
        value,
        Method::TheoremFormula,
        vec![
            term("s", sv),
            term("t", tv),
            term("prefactor", prefactor),
            term("brace", b.value),
            term("brace_printed", b.printed),
            term("printed", printed),
            term("printed_residual", (value - printed).abs()),
        ],
    ))
}

fn lift_name(which: Lift) -> &'static str {
    match which {
        Lift::Complete => "F^c",
        Lift::Vertical => "F^v",
    }
}
