//! Left-invariant (α,β)-metrics on Lie groups and their complete and vertical
//! lifts to the tangent Lie group.
//!
//! The crate works entirely at the Lie-algebra level: a Lie group is given by
//! the structure constants of its algebra, a left-invariant Riemannian metric
//! by an inner product on that algebra, and an (α,β)-metric by a drift vector
//! `X` (the metric dual of β) together with a [`PhiFamily`].
//!
//! Module map:
//!
//! - [`lie`]: structure constants, brackets, metric adjoints, derived algebra
//!   and center.
//! - [`connection`]: Koszul connection, curvature, sectional curvature and the
//!   symmetric `U` map of a metric Lie algebra.
//! - [`lift`]: the `2n`-dimensional tangent algebra, its block metric and the
//!   closed-form lifted Levi-Civita connection.
//! - [`finsler`]: φ families, lifted (α,β)-norms, the fundamental tensor and
//!   Berwald/Douglas classification of `F`, `F^c`, `F^v`.
//! - [`flag`]: flag-curvature formulas for the lifted metrics plus
//!   definition-level numeric oracles.
//! - [`sample`]: seeded random metrics, vectors and flag planes.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod algebras;
pub mod connection;
mod error;
pub mod finsler;
pub mod flag;
pub mod lie;
pub mod lift;
mod linalg;
pub mod sample;
mod tolerances;

pub use connection::{
    curvature, levi_civita, sectional, u_map, ConnectionTable, MetricGeometry, MetricLieAlgebra,
};
pub use error::Error;
pub use finsler::{
    classify_base, classify_fc, classify_fv, AlphaBetaStructure, Classification, DouglasReason,
    PhiFamily, PhiKind,
};
pub use flag::{CaseTag, CurvatureResult, CurvatureValue, FlagPlane, Method};
pub use lie::{AlgVector, LieAlgebra, MetricTensor, ValidationReport};
pub use lift::{Lift, LiftedVector, TangentMetricLieAlgebra};
pub use tolerances::Tolerances;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
