//! Quadriphase sequence families over the Galois ring GR(4,n).
//!
//! The crate builds the families `L`, `V` and `W` of Z4-valued sequences,
//! computes their exact correlation spectra over the Gaussian integers, and
//! measures linear complexity with an independent shift-register synthesis.

pub mod analysis;
mod error;
pub mod families;
pub mod lincomp;
pub mod ring;

pub use error::{Error, Result};

/// Largest supported extension degree `n`.
pub const MAX_DEGREE: usize = 20;

/// Correlation values with 64-bit integer parts.
pub type Gaussian = analysis::GaussianInt<i64>;
/// Narrow correlation values, enough for periods below `2^31`.
pub type Gaussian32 = analysis::GaussianInt<i32>;
