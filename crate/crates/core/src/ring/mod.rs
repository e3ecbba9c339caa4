//! Exact arithmetic in the Galois ring GR(4,n) and its residue field GF(2^n).

mod context;
mod coset;
mod field;
mod poly;
mod z4;

pub use context::{RingContext, RingElement};
pub use coset::{coset_leader, cyclotomic_coset};
pub use field::{FieldElement, GaloisField};
pub use poly::{lift_primitive_poly, BinaryPoly, Z4Poly, TABLE_DEGREES};
pub use z4::Z4;

