use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{Float, NumCast, PrimInt, Signed};
use serde::{Deserialize, Serialize};

use crate::ring::Z4;

/// Exact complex integer `re + im * w` with `w^2 = -1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianInt<T> {
    pub re: T,
    pub im: T,
}

impl<T: PrimInt + Signed> GaussianInt<T> {
    pub fn new(re: T, im: T) -> Self {
        GaussianInt { re, im }
    }

    pub fn real(re: T) -> Self {
        GaussianInt { re, im: T::zero() }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// `w^k` for a Z4 exponent.
    pub fn unit(k: Z4) -> Self {
        let (o, z) = (T::one(), T::zero());
        match k.value() {
            0 => Self::new(o, z),
            1 => Self::new(z, o),
            2 => Self::new(-o, z),
            _ => Self::new(z, -o),
        }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }

    /// `|self|` in the requested float type.
    pub fn abs<F: Float>(self) -> F {
        let n: F = NumCast::from(self.norm_sqr()).expect("norm fits float");
        n.sqrt()
    }

    /// Multiplication by `w`.
    pub fn times_w(self) -> Self {
        Self::new(-self.im, self.re)
    }

    pub fn cast<U: PrimInt + Signed>(self) -> Option<GaussianInt<U>> {
        Some(GaussianInt::new(NumCast::from(self.re)?, NumCast::from(self.im)?))
    }
}

impl<T: PrimInt + Signed> Add for GaussianInt<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<T: PrimInt + Signed> AddAssign for GaussianInt<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: PrimInt + Signed> Sub for GaussianInt<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<T: PrimInt + Signed> Neg for GaussianInt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<T: PrimInt + Signed> Mul for GaussianInt<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.re * rhs.re - self.im * rhs.im, self.re * rhs.im + self.im * rhs.re)
    }
}

impl<T: PrimInt + Signed> std::iter::Sum for GaussianInt<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Add::add)
    }
}

impl<T: PrimInt + Signed + fmt::Display> fmt::Display for GaussianInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}w", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}w", self.re, self.im)
        }
    }
}
