//! Exact deterministic measurement-based computation on Reed-Muller and
//! phase-coset resource states.

use std::fmt::Debug;

use num_traits::{Float, FloatConst};

pub mod boolfn;
pub mod contextuality;
pub mod error;
pub mod gf2;
pub mod lulc;
pub mod mbqc;
pub mod oracle;
pub mod phasestate;
pub mod reedmuller;
pub mod report;
pub mod rmfamily;

pub use error::{Error, Result};

/// Floating-point scalar for the numeric (non-exact) paths.
pub trait Scalar: Float + FloatConst + Debug + Send + Sync + 'static {}

impl<T: Float + FloatConst + Debug + Send + Sync + 'static> Scalar for T {}

pub type DenseState64 = oracle::DenseState<f64>;
pub type DenseState32 = oracle::DenseState<f32>;
