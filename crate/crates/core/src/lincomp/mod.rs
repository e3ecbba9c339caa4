//! Linear complexity over Z4 and the predicted span formulas.

mod formulas;
mod lfsr;

pub use formulas::{span_formula_l, span_formula_w};
pub use lfsr::{lfsr_synthesize, linear_complexity_periodic, LfsrResult};
