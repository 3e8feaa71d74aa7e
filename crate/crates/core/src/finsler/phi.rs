use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Scalar function of one real variable, shareable across threads.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Named φ families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiKind {
    /// `φ(s) = 1 + s`
    Randers,
    /// `φ(s) = 1/s`
    Kropina,
    /// `φ(s) = 1/(1 − s)`
    Matsumoto,
    /// `φ ≡ 1`, i.e. `F = α`
    Riemannian,
    /// User supplied φ, φ', φ''.
    Custom,
}

impl PhiKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PhiKind::Randers => "randers",
            PhiKind::Kropina => "kropina",
            PhiKind::Matsumoto => "matsumoto",
            PhiKind::Riemannian => "riemannian",
            PhiKind::Custom => "custom",
        }
    }
}

/// The profile function φ of an (α,β)-metric `F = α φ(β/α)`.
#[derive(Clone)]
pub struct PhiFamily {
    kind: PhiKind,
    phi: ScalarFn,
    dphi: ScalarFn,
    d2phi: ScalarFn,
    bound: Option<f64>,
    singular_at: Vec<f64>,
    positive_only: bool,
}

impl fmt::Debug for PhiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiFamily")
            .field("kind", &self.kind)
            .field("bound", &self.bound)
            .field("singular_at", &self.singular_at)
            .field("positive_only", &self.positive_only)
            .finish()
    }
}

impl PhiFamily {
    pub fn randers() -> Self {
        PhiFamily {
            kind: PhiKind::Randers,
            phi: Arc::new(|s| 1.0 + s),
            dphi: Arc::new(|_| 1.0),
            d2phi: Arc::new(|_| 0.0),
            bound: Some(1.0),
            singular_at: Vec::new(),
            positive_only: false,
        }
    }

    /// Kropina is only defined on the half-cone `β > 0`.
    pub fn kropina() -> Self {
        PhiFamily {
            kind: PhiKind::Kropina,
            phi: Arc::new(|s| 1.0 / s),
            dphi: Arc::new(|s| -1.0 / (s * s)),
            d2phi: Arc::new(|s| 2.0 / (s * s * s)),
            bound: None,
            singular_at: vec![0.0],
            positive_only: true,
        }
    }

    /// The admissible drift bound is `1/2`: the validity expression
    /// reduces to `(1 − 3s + 2b²)/(1 − s)³`, which first vanishes at `s = b = 1/2`.
    pub fn matsumoto() -> Self {
        PhiFamily {
            kind: PhiKind::Matsumoto,
            phi: Arc::new(|s| 1.0 / (1.0 - s)),
            dphi: Arc::new(|s| 1.0 / ((1.0 - s) * (1.0 - s))),
            d2phi: Arc::new(|s| 2.0 / ((1.0 - s) * (1.0 - s) * (1.0 - s))),
            bound: Some(0.5),
            singular_at: vec![1.0],
            positive_only: false,
        }
    }

    pub fn riemannian() -> Self {
        PhiFamily {
            kind: PhiKind::Riemannian,
            phi: Arc::new(|_| 1.0),
            dphi: Arc::new(|_| 0.0),
            d2phi: Arc::new(|_| 0.0),
            bound: None,
            singular_at: Vec::new(),
            positive_only: false,
        }
    }

    /// Custom φ with caller-supplied derivatives, cross-checked against
    /// centred differences of `phi` at 20 interior points (relative 1e-6).
    pub fn custom(
        phi: ScalarFn,
        dphi: ScalarFn,
        d2phi: ScalarFn,
        bound: Option<f64>,
        singular_at: Vec<f64>,
        positive_only: bool,
    ) -> Result<Self> {
        if let Some(b) = bound {
            if !(b > 0.0) {
                return Err(Error::Phi(format!("bound must be positive, got {b}")));
            }
        }
        let fam = PhiFamily {
            kind: PhiKind::Custom,
            phi,
            dphi,
            d2phi,
            bound,
            singular_at,
            positive_only,
        };
        let residual = fam.derivative_residual(20);
        if !(residual <= 1e-6) {
            return Err(Error::Phi(format!(
                "supplied derivatives disagree with finite differences (relative residual {residual:e})"
            )));
        }
        Ok(fam)
    }

    pub fn kind(&self) -> PhiKind {
        self.kind
    }

    /// `b₀`; `None` means unbounded.
    pub fn bound(&self) -> Option<f64> {
        self.bound
    }

    pub fn singular_at(&self) -> &[f64] {
        &self.singular_at
    }

    pub fn positive_only(&self) -> bool {
        self.positive_only
    }

    pub fn is_defined_at(&self, s: f64) -> bool {
        if !s.is_finite() || (self.positive_only && s <= 0.0) {
            return false;
        }
        if self.singular_at.iter().any(|p| (s - p).abs() <= 1e-12) {
            return false;
        }
        let v = (self.phi)(s);
        v.is_finite() && v > 0.0
    }

    pub fn phi(&self, s: f64) -> f64 {
        (self.phi)(s)
    }

    pub fn dphi(&self, s: f64) -> f64 {
        (self.dphi)(s)
    }

    pub fn d2phi(&self, s: f64) -> f64 {
        (self.d2phi)(s)
    }

    /// `D(s) = φ''(s) / (φ(s) − s φ'(s))`.
    pub fn d_ratio(&self, s: f64) -> f64 {
        self.d2phi(s) / (self.phi(s) - s * self.dphi(s))
    }

    /// `φ(s) − s φ'(s) + (b² − s²) φ''(s)`.
    pub fn validity_expression(&self, s: f64, b: f64) -> f64 {
        self.phi(s) - s * self.dphi(s) + (b * b - s * s) * self.d2phi(s)
    }

    /// Max relative disagreement between the supplied derivatives and
    /// centred differences of φ over `samples` interior points.
    pub fn derivative_residual(&self, samples: usize) -> f64 {
        let (lo, hi) = self.sample_interval();
        let mut worst: f64 = 0.0;
        for k in 0..samples {
            let s = lo + (hi - lo) * (k as f64 + 0.5) / samples as f64;
            let h = 1e-4 * s.abs().max(1.0).min(self.singular_distance(s));
            if ![s - h, s, s + h].iter().all(|t| self.is_defined_at(*t)) {
                continue;
            }
            let (fm, f0, fp) = (self.phi(s - h), self.phi(s), self.phi(s + h));
            let d1 = (fp - fm) / (2.0 * h);
            let d2 = (fp - 2.0 * f0 + fm) / (h * h);
            let r1 = (d1 - self.dphi(s)).abs() / self.dphi(s).abs().max(1.0);
            let r2 = (d2 - self.d2phi(s)).abs() / self.d2phi(s).abs().max(1.0);
            worst = worst.max(r1).max(r2);
            if !worst.is_finite() {
                return f64::INFINITY;
            }
        }
        worst
    }

    fn singular_distance(&self, s: f64) -> f64 {
        let d = self.singular_at.iter().fold(f64::INFINITY, |m, p| m.min((s - p).abs()));
        if self.positive_only {
            d.min(s.abs())
        } else {
            d
        }
    }

    fn sample_interval(&self) -> (f64, f64) {
        let hi = self.bound.map_or(1.0, |b| 0.9 * b);
        let lo = if self.positive_only { 0.05 * hi } else { -hi };
        (lo, hi)
    }
}

/// Outcome of checking the (α,β) validity inequality for a drift norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    pub norm: f64,
    pub bound: Option<f64>,
    pub norm_ok: bool,
    /// Smallest sampled value of `φ(s) − sφ'(s) + (b² − s²)φ''(s)`.
    pub min_value: f64,
    /// `(s, b)` where the minimum was found.
    pub min_at: (f64, f64),
    pub inequality_ok: bool,
    pub passed: bool,
}

/// Samples the validity inequality on `(samples + 1)²` points with
/// `0 ≤ b ≤ norm`, `|s| ≤ b` (endpoints included), and checks `norm < b₀`.
///
/// Families restricted to `β > 0` sample `0 < s ≤ b` instead.
pub fn validity_for_norm(phi: &PhiFamily, norm: f64, samples: usize) -> ValidityReport {
    let samples = samples.max(1);
    let mut min_value = f64::INFINITY;
    let mut min_at = (0.0, 0.0);
    for i in 0..=samples {
        let b = norm * i as f64 / samples as f64;
        let points: Vec<f64> = if phi.positive_only {
            if b <= 0.0 {
                continue;
            }
            (1..=samples).map(|j| b * j as f64 / samples as f64).collect()
        } else {
            (0..=samples).map(|j| -b + 2.0 * b * j as f64 / samples as f64).collect()
        };
        for s in points {
            let on_singularity = phi.singular_at.iter().any(|p| (s - p).abs() <= 1e-12);
            let v = phi.validity_expression(s, b);
            let v = if on_singularity || !v.is_finite() { f64::NEG_INFINITY } else { v };
            if v < min_value {
                min_value = v;
                min_at = (s, b);
            }
        }
    }
    let norm_ok = norm.is_finite() && phi.bound.is_none_or(|b0| norm < b0);
    let inequality_ok = min_value > 0.0;
    ValidityReport {
        norm,
        bound: phi.bound,
        norm_ok,
        min_value,
        min_at,
        inequality_ok,
        passed: norm_ok && inequality_ok,
    }
}

/// Display name including the kind for custom families.
pub(crate) fn describe(phi: &PhiFamily) -> String {
    String::from(phi.kind.as_str())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_derivatives_are_consistent() {
        for fam in [PhiFamily::randers(), PhiFamily::kropina(), PhiFamily::matsumoto(), PhiFamily::riemannian()] {
            assert!(fam.derivative_residual(20) < 1e-6, "{:?}", fam.kind());
        }
    }

    #[test]
    fn custom_rejects_wrong_derivative() {
        let err = PhiFamily::custom(
            Arc::new(|s| 1.0 + s * s),
            Arc::new(|s| s), // should be 2s
            Arc::new(|_| 2.0),
            Some(0.5),
            Vec::new(),
            false,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Phi(_)));
    }

    #[test]
    fn custom_accepts_exact_derivatives() {
        let fam = PhiFamily::custom(
            Arc::new(|s| 1.0 + s + 0.5 * s * s),
            Arc::new(|s| 1.0 + s),
            Arc::new(|_| 1.0),
            Some(0.5),
            Vec::new(),
            false,
        )
        .unwrap();
        assert_eq!(fam.kind(), PhiKind::Custom);
    }

    #[test]
    fn kropina_defined_only_on_positive_half() {
        let k = PhiFamily::kropina();
        assert!(!k.is_defined_at(0.0));
        assert!(!k.is_defined_at(-0.3));
        assert!(k.is_defined_at(0.3));
    }

    #[test]
    fn randers_validity() {
        assert!(validity_for_norm(&PhiFamily::randers(), 0.5, 40).passed);
        let r = validity_for_norm(&PhiFamily::randers(), 1.2, 40);
        assert!(!r.passed);
        assert!(!r.norm_ok);
        assert!(r.inequality_ok);
        assert!((r.min_value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn matsumoto_validity_boundary() {
        let m = PhiFamily::matsumoto();
        assert!(validity_for_norm(&m, 0.4, 40).passed);
        assert!(validity_for_norm(&m, 0.49, 40).passed);
        let r = validity_for_norm(&m, 0.51, 40);
        assert!(!r.passed);
        assert!(!r.inequality_ok);
        assert!(r.min_value < 0.0);
    }

    #[test]
    fn kropina_validity_on_half_cone() {
        let r = validity_for_norm(&PhiFamily::kropina(), 2.0, 20);
        assert!(r.passed);
        // 2b²/s³ is smallest at s = b
        assert!((r.min_value - 1.0).abs() < 1e-12);
    }
}
