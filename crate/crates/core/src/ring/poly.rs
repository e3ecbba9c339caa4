//! Binary and quaternary polynomials, the default primitive-polynomial table
//! and the Graeffe lift from GF(2)[x] to Z4[x].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::z4::Z4;
use crate::MAX_DEGREE;

/// Polynomial over GF(2); bit `i` is the coefficient of `x^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryPoly(pub u32);

/// Smallest primitive polynomial of each degree 2..=16, ordered by integer encoding.
const PRIMITIVE_TABLE: [u32; 15] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b,
    0x8003, 0x1002d,
];

/// Degree range covered by the built-in table.
pub const TABLE_DEGREES: std::ops::RangeInclusive<usize> = 2..=16;

impl BinaryPoly {
    pub fn degree(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(31 - self.0.leading_zeros() as usize)
        }
    }

    /// Built-in primitive polynomial for degree `n`, if tabulated.
    pub fn default_primitive(n: usize) -> Option<BinaryPoly> {
        if TABLE_DEGREES.contains(&n) {
            Some(BinaryPoly(PRIMITIVE_TABLE[n - 2]))
        } else {
            None
        }
    }

    pub fn coefficients(self) -> Vec<u8> {
        let d = self.degree().unwrap_or(0);
        (0..=d).map(|i| ((self.0 >> i) & 1) as u8).collect()
    }

    pub fn from_coefficients(coeffs: &[u8]) -> Result<BinaryPoly> {
        if coeffs.len() > 32 {
            return Err(Error::Config(format!("binary polynomial of degree {} is too large", coeffs.len() - 1)));
        }
        let mut bits = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                _ => return Err(Error::Config(format!("binary coefficient {c} out of range"))),
            }
        }
        Ok(BinaryPoly(bits))
    }

    /// True when `self` is primitive over GF(2): irreducible with `x` of order `2^n - 1`.
    pub fn is_primitive(self) -> bool {
        let n = match self.degree() {
            Some(n) if (2..=MAX_DEGREE).contains(&n) => n,
            _ => return false,
        };
        if self.0 & 1 == 0 {
            return false;
        }
        let order = (1u64 << n) - 1;
        let x = 0b10u32;
        if pow_mod_binary(x, order, self.0, n) != 1 {
            return false;
        }
        prime_factors(order).into_iter().all(|p| pow_mod_binary(x, order / p, self.0, n) != 1)
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coefficients(f, self.coefficients().into_iter())
    }
}

impl FromStr for BinaryPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<BinaryPoly> {
        let coeffs = parse_coefficients(s)?;
        BinaryPoly::from_coefficients(&coeffs)
    }
}

fn mul_mod_binary(mut a: u32, mut b: u32, modulus: u32, n: usize) -> u32 {
    let mut r = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> n) & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

fn pow_mod_binary(mut base: u32, mut exp: u64, modulus: u32, n: usize) -> u32 {
    let mut r = 1u32;
    while exp > 0 {
        if exp & 1 == 1 {
            r = mul_mod_binary(r, base, modulus, n);
        }
        base = mul_mod_binary(base, base, modulus, n);
        exp >>= 1;
    }
    r
}

pub(crate) fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v % p == 0 {
            out.push(p);
            while v % p == 0 {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Polynomial over Z4 stored constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z4Poly(pub Vec<Z4>);

impl Z4Poly {
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn coefficients(&self) -> &[Z4] {
        &self.0
    }

    /// Coefficientwise reduction modulo 2.
    pub fn reduce_mod2(&self) -> BinaryPoly {
        let bits = self.0.iter().enumerate().fold(0u32, |acc, (i, c)| acc | (u32::from(c.bit()) << i));
        BinaryPoly(bits)
    }

    fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }
}

impl fmt::Display for Z4Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coefficients(f, self.0.iter().map(|c| c.value()))
    }
}

impl FromStr for Z4Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Z4Poly> {
        let coeffs = parse_coefficients(s)?;
        if let Some(bad) = coeffs.iter().find(|&&c| c > 3) {
            return Err(Error::Config(format!("Z4 coefficient {bad} out of range")));
        }
        Ok(Z4Poly(coeffs.into_iter().map(Z4::new).collect()))
    }
}

pub(crate) fn write_coefficients(f: &mut fmt::Formatter<'_>, coeffs: impl Iterator<Item = u8>) -> fmt::Result {
    for (i, c) in coeffs.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

pub(crate) fn parse_coefficients(s: &str) -> Result<Vec<u8>> {
    s.trim()
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u8>()
                .map_err(|_| Error::Config(format!("bad coefficient `{}` in `{s}`", tok.trim())))
        })
        .collect()
}

/// Graeffe lift of a primitive binary polynomial `g` of degree `n`: the monic
/// `f` over Z4 with `f(x^2) = (-1)^n g(x) g(-x) (mod 4)`.
///
/// Fails if `g` is not primitive over GF(2).
pub fn lift_primitive_poly(g: BinaryPoly) -> Result<Z4Poly> {
    if !g.is_primitive() {
        return Err(Error::Construction(format!("{g} is not primitive over GF(2)")));
    }
    let n = g.degree().expect("primitive polynomial is nonzero");
    let plus: Vec<i64> = g.coefficients().iter().map(|&c| i64::from(c)).collect();
    let minus: Vec<i64> = plus.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { -c }).collect();
    let mut prod = vec![0i64; 2 * n + 1];
    for (i, a) in plus.iter().enumerate() {
        for (j, b) in minus.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    debug_assert!(prod.iter().skip(1).step_by(2).all(|c| c.rem_euclid(4) == 0));
    let f = Z4Poly((0..=n).map(|i| Z4::from_i64(sign * prod[2 * i])).collect()).trimmed();
    debug_assert_eq!(f.degree(), Some(n));
    debug_assert_eq!(f.0[n], Z4::ONE);
    Ok(f)
}
