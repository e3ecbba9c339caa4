use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of the integers modulo 4.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Z4(u8);

impl Z4 {
    pub const ZERO: Z4 = Z4(0);
    pub const ONE: Z4 = Z4(1);
    pub const TWO: Z4 = Z4(2);
    pub const THREE: Z4 = Z4(3);

    pub const fn new(v: u8) -> Self {
        Z4(v & 3)
    }

    /// Reduces an arbitrary integer into `0..4`.
    pub fn from_i64(v: i64) -> Self {
        Z4(v.rem_euclid(4) as u8)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Residue modulo 2.
    pub const fn bit(self) -> u8 {
        self.0 & 1
    }

    /// `2 * b` for a bit `b`.
    pub const fn double_bit(b: u8) -> Self {
        Z4((b & 1) << 1)
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<Z4> for u8 {
    fn from(v: Z4) -> u8 {
        v.0
    }
}

impl Add for Z4 {
    type Output = Z4;
    fn add(self, rhs: Z4) -> Z4 {
        Z4((self.0 + rhs.0) & 3)
    }
}

impl AddAssign for Z4 {
    fn add_assign(&mut self, rhs: Z4) {
        *self = *self + rhs;
    }
}

impl Sub for Z4 {
    type Output = Z4;
    fn sub(self, rhs: Z4) -> Z4 {
        Z4((self.0 + 4 - rhs.0) & 3)
    }
}

impl Neg for Z4 {
    type Output = Z4;
    fn neg(self) -> Z4 {
        Z4((4 - self.0) & 3)
    }
}

impl Mul for Z4 {
    type Output = Z4;
    fn mul(self, rhs: Z4) -> Z4 {
        Z4((self.0 * rhs.0) & 3)
    }
}

impl std::iter::Sum for Z4 {
    fn sum<I: Iterator<Item = Z4>>(iter: I) -> Z4 {
        iter.fold(Z4::ZERO, Add::add)
    }
}
