//! Multivariate Meixner polynomials as matrix elements of `SO(d,1)`
//! representations on oscillator states.
//!
//! Every evaluation route is generic over [`Scalar`]: instantiate with
//! [`Rational`] for exact identity checks or `f64` for quantities that carry
//! square roots (orthonormal polynomials, matrix elements, truncated sums).

pub mod bivariate;
pub mod error;
pub mod harness;
pub mod lorentz;
pub mod multivariate;
pub mod numerics;
pub mod report;
pub mod scalar;
pub mod univariate;

pub use error::{Error, Result};
pub use lorentz::{Matrix, PseudoRotation, SubgroupParam};
pub use bivariate::MeixnerSystem;
pub use multivariate::{MeixnerSystemD, MultiIndex};
pub use numerics::TruncatedSeries;
pub use report::{EvalReport, LatticeBox};
pub use scalar::{FloatScalar, Rational, Scalar, ScalarMode};

pub type ExactSeries = TruncatedSeries<Rational>;
pub type ExactSystem = MeixnerSystem<Rational>;
pub type FloatSystem = MeixnerSystem<f64>;
pub type ExactSystemD = MeixnerSystemD<Rational>;
pub type FloatSystemD = MeixnerSystemD<f64>;
