//! GF(2^n) with log/antilog tables over a primitive modulus.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::poly::BinaryPoly;

/// Element of GF(2^n) as its coefficient bitvector modulo the field polynomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// characteristic 2: addition is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// GF(2^n) built from a primitive polynomial; `alpha = x` generates the unit group.
#[derive(Clone, Debug)]
pub struct GaloisField {
    n: usize,
    modulus: BinaryPoly,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(modulus: BinaryPoly) -> Result<Self> {
        if !modulus.is_primitive() {
            return Err(Error::Construction(format!("{modulus} is not primitive over GF(2)")));
        }
        let n = modulus.degree().expect("nonzero");
        let order = (1usize << n) - 1;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; 1 << n];
        let mut acc = 1u32;
        for k in 0..order {
            exp.push(acc);
            log[acc as usize] = k as u32;
            acc <<= 1;
            if (acc >> n) & 1 == 1 {
                acc ^= modulus.0;
            }
        }
        Ok(GaloisField { n, modulus, exp, log })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> BinaryPoly {
        self.modulus
    }

    /// Multiplicative group order `2^n - 1`.
    pub fn order(&self) -> usize {
        self.exp.len()
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..1u32 << self.n).map(FieldElement)
    }

    pub fn alpha(&self) -> FieldElement {
        self.exp_of(1)
    }

    /// `alpha^k` for any integer exponent.
    pub fn exp_of(&self, k: i64) -> FieldElement {
        FieldElement(self.exp[k.rem_euclid(self.order() as i64) as usize])
    }

    /// Discrete log base `alpha`; `None` for zero.
    pub fn log_of(&self, y: FieldElement) -> Option<usize> {
        if y.is_zero() {
            None
        } else {
            Some(self.log[y.0 as usize] as usize)
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.exp[s % self.order()])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        self.log_of(a).map(|l| self.exp_of(-(l as i64)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, k: i64) -> FieldElement {
        match self.log_of(a) {
            None if k == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(l) => self.exp_of((l as i64).wrapping_mul(k.rem_euclid(self.order() as i64))),
        }
    }

    /// `y^(2^k)`.
    pub fn frobenius(&self, y: FieldElement, k: usize) -> FieldElement {
        match self.log_of(y) {
            None => y,
            Some(l) => {
                let order = self.order() as u64;
                let shift = pow_mod(2, k as u64, order);
                FieldElement(self.exp[((l as u64 * shift) % order) as usize])
            }
        }
    }

    /// Relative trace onto GF(2^e): `y + y^(2^e) + ... + y^(2^(e(n/e - 1)))`.
    pub fn trace(&self, y: FieldElement, e: usize) -> Result<FieldElement> {
        if e == 0 || self.n % e != 0 {
            return Err(Error::Config(format!("subfield degree {e} does not divide {}", self.n)));
        }
        let mut acc = FieldElement::ZERO;
        let mut cur = y;
        for _ in 0..self.n / e {
            acc += cur;
            cur = self.frobenius(cur, e);
        }
        Ok(acc)
    }

    /// Absolute trace as a bit.
    pub fn abs_trace(&self, y: FieldElement) -> u8 {
        let t = self.trace(y, 1).expect("1 divides n");
        debug_assert!(t.0 <= 1);
        t.0 as u8
    }

    /// Membership in the subfield GF(2^d), `d | n`.
    pub fn in_subfield(&self, y: FieldElement, d: usize) -> bool {
        self.frobenius(y, d) == y
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut r = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            r = r * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    r
}
