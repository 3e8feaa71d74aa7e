//! Definition-level flag curvature on the tangent algebra.

use alloc::format;
use alloc::vec;

use super::{term, CurvatureResult, FlagPlane, Method};
use crate::finsler::{alpha_beta_norm, classify_fc, classify_fv, AlphaBetaStructure, PhiKind};
use crate::lie::AlgVector;
use crate::lift::{Lift, LiftedVector};
use crate::{Error, Result};

/// `K(P, y) = g_y(R(u,y)y, u) / (g_y(y,y) g_y(u,u) − g_y(u,y)²)` for a
/// Berwald lift, whose Chern curvature is that of the lifted Riemannian metric.
///
/// `pole` and `second` need not be normalised or orthogonal.
pub fn flag_curvature_definition(
    s: &AlphaBetaStructure,
    which: Lift,
    pole: &LiftedVector,
    second: &LiftedVector,
) -> Result<f64> {
    let tangent = s.lifted().tangent();
    let (y, u) = (pole.flatten(), second.flatten());
    y.check_dim(tangent.dim())?;
    u.check_dim(tangent.dim())?;
    let r = LiftedVector::from_flat(&tangent.curvature(&u, &y))?;
    let g = |a: &LiftedVector, b: &LiftedVector| s.lifted_fundamental_tensor(which, pole, a, b);
    let num = g(&r, second)?;
    let gyy = g(pole, pole)?;
    let guu = g(second, second)?;
    let guy = g(second, pole)?;
    let den = gyy * guu - guy * guy;
    if !(den > s.tolerances().plane * gyy * guu) {
        return Err(Error::DegeneratePlane { gram: den });
    }
    Ok(num / den)
}

fn lift_is_berwald(s: &AlphaBetaStructure, which: Lift) -> Result<bool> {
    Ok(match which {
        Lift::Complete => classify_fc(s)?.berwald,
        Lift::Vertical => classify_fv(s)?.berwald,
    })
}

/// Oracle for the Berwald case formulas.
pub fn flag_oracle_berwald(s: &AlphaBetaStructure, which: Lift, plane: &FlagPlane) -> Result<CurvatureResult> {
    if !lift_is_berwald(s, which)? {
        return Err(Error::NotBerwald(format!("the {} lift is not Berwald", which.as_str())));
    }
    match flag_curvature_definition(s, which, &plane.pole(), &plane.second()) {
        Ok(k) => Ok(CurvatureResult::defined(k, Method::Oracle, vec![])),
        Err(Error::UndefinedMetric(msg)) => Ok(CurvatureResult::undefined(msg, Method::Oracle)),
        Err(e) => Err(e),
    }
}

/// Oracle for Randers lifts of Douglas type, built from the spray.
///
/// The spray is `G = G_α + P y` with `P(y) = g̃(∇̃_y X̃, y) / (2F(y))`, and
///
/// ```text
/// K(P, y) = (g_y(R_α(u,y)y, u) + (P² − P_{|0}) g_y(u,u)) / (F² g_y(u,u))
/// ```
///
/// where `u` is the `g_y`-orthogonal part of the second vector and `P_{|0}`
/// is the derivative of `P` along the α-geodesic flow `ẏ = −∇̃_y y`, taken
/// by a centred difference.
pub fn flag_oracle_randers_douglas(s: &AlphaBetaStructure, which: Lift, plane: &FlagPlane) -> Result<CurvatureResult> {
    if s.phi().kind() != PhiKind::Randers {
        return Err(Error::Precondition("metric is not Randers".into()));
    }
    let douglas = match which {
        Lift::Complete => classify_fc(s)?.douglas,
        Lift::Vertical => classify_fv(s)?.douglas,
    };
    if douglas != Some(true) {
        return Err(Error::Precondition(format!("the {} lift is not Douglas", which.as_str())));
    }

    let tangent = s.lifted().tangent();
    let metric = tangent.metric();
    let drift = s.lifted_drift(which).flatten();
    let phi = s.phi();
    let pole = plane.pole();
    let y = pole.flatten();
    let w = plane.second().flatten();

    let norm = |z: &AlgVector| alpha_beta_norm(metric, &drift, phi, z);
    let p = |z: &AlgVector| -> Result<f64> { Ok(tangent.inner(&tangent.nabla(z, &drift), z) / (2.0 * norm(z)?)) };
    let gy = |a: &AlgVector, b: &AlgVector| -> Result<f64> {
        s.lifted_fundamental_tensor(which, &pole, &LiftedVector::from_flat(a)?, &LiftedVector::from_flat(b)?)
    };

    let f = norm(&y)?;
    let f2 = f * f;
    let u = &w - &y.scaled(gy(&y, &w)? / f2);
    let r = tangent.curvature(&u, &y);

    let h = 1e-5 * libm::sqrt(y.dot(&y)).max(1.0);
    let dy = -&tangent.nabla(&y, &y);
    let p0 = (p(&(&y + &dy.scaled(h)))? - p(&(&y - &dy.scaled(h)))?) / (2.0 * h);
    let py = p(&y)?;
    let xi = py * py - p0;

    let guu = gy(&u, &u)?;
    if !(guu > s.tolerances().plane) {
        return Err(Error::DegeneratePlane { gram: guu });
    }
    let k = (gy(&r, &u)? + xi * guu) / (f2 * guu);
    Ok(CurvatureResult::defined(
        k,
        Method::Oracle,
        vec![term("F", f), term("P", py), term("P_0", p0), term("Xi", xi)],
    ))
}
