use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::field::{pow_mod, FieldElement, GaloisField};
use crate::ring::poly::{lift_primitive_poly, write_coefficients, BinaryPoly, Z4Poly};
use crate::ring::z4::Z4;
use crate::MAX_DEGREE;

/// Element of GR(4,n) = Z4[x]/(f).
///
/// Coefficients are held as two bit planes: coefficient `i` equals
/// `lo_i + 2 * hi_i`. Elements are always fully reduced, so equality is
/// plane equality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    lo: u32,
    hi: u32,
}

impl RingElement {
    pub const ZERO: RingElement = RingElement { lo: 0, hi: 0 };
    pub const ONE: RingElement = RingElement { lo: 1, hi: 0 };

    pub fn scalar(c: Z4) -> RingElement {
        let v = u32::from(c.value());
        RingElement { lo: v & 1, hi: v >> 1 }
    }

    pub fn coeff(self, i: usize) -> Z4 {
        Z4::new((((self.lo >> i) & 1) | (((self.hi >> i) & 1) << 1)) as u8)
    }

    pub fn is_zero(self) -> bool {
        self.lo == 0 && self.hi == 0
    }

    /// `2 * self`.
    pub fn double(self) -> RingElement {
        RingElement { lo: 0, hi: self.lo }
    }

    pub fn scale(self, c: Z4) -> RingElement {
        match c.value() {
            0 => RingElement::ZERO,
            1 => self,
            2 => self.double(),
            _ => -self,
        }
    }

    /// Some scalar `c` when the element lies in Z4 (all higher coefficients zero).
    pub fn as_scalar(self) -> Option<Z4> {
        if (self.lo | self.hi) >> 1 == 0 {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    /// Projection modulo 2 onto GF(2^n).
    pub fn project(self) -> FieldElement {
        FieldElement(self.lo)
    }

    /// `2 * lift(y)` depends only on `y`; this builds it without a table.
    pub fn twice_field(y: FieldElement) -> RingElement {
        RingElement { lo: 0, hi: y.0 }
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        let carry = self.lo & rhs.lo;
        RingElement { lo: self.lo ^ rhs.lo, hi: self.hi ^ rhs.hi ^ carry }
    }
}

impl AddAssign for RingElement {
    fn add_assign(&mut self, rhs: RingElement) {
        *self = *self + rhs;
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { lo: self.lo, hi: self.hi ^ self.lo }
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        self + (-rhs)
    }
}

impl std::iter::Sum for RingElement {
    fn sum<I: Iterator<Item = RingElement>>(iter: I) -> RingElement {
        iter.fold(RingElement::ZERO, Add::add)
    }
}

/// Immutable description of GR(4,n) with `n = e * m` and its lookup tables.
#[derive(Clone, Debug)]
pub struct RingContext {
    e: usize,
    m: usize,
    n: usize,
    g: BinaryPoly,
    f: Z4Poly,
    // -(f - x^n), added once per overflow at x^n
    neg_tail: RingElement,
    field: GaloisField,
    beta_pows: Vec<RingElement>,
    teich: Vec<RingElement>,
    abs_trace_table: Vec<Z4>,
}

impl RingContext {
    /// Builds GR(4, e*m) from the default primitive polynomial of degree `e*m`.
    pub fn new(e: usize, m: usize) -> Result<Self> {
        Self::check_params(e, m)?;
        let n = e * m;
        let g = BinaryPoly::default_primitive(n).ok_or_else(|| {
            Error::Config(format!("no built-in primitive polynomial for n = {n}; supply one explicitly"))
        })?;
        Self::with_poly(e, m, g)
    }

    fn check_params(e: usize, m: usize) -> Result<()> {
        if e < 2 || m < 2 {
            return Err(Error::Config(format!("need e >= 2 and m >= 2, got e = {e}, m = {m}")));
        }
        if e * m > MAX_DEGREE {
            return Err(Error::Config(format!("n = {} exceeds the supported maximum {MAX_DEGREE}", e * m)));
        }
        Ok(())
    }

    /// Builds GR(4, e*m) from an explicit primitive polynomial `g` of degree `e*m`.
    pub fn with_poly(e: usize, m: usize, g: BinaryPoly) -> Result<Self> {
        Self::check_params(e, m)?;
        Self::build(e, m, g)
    }

    // No e, m >= 2 restriction; used for small auxiliary rings.
    pub(crate) fn build(e: usize, m: usize, g: BinaryPoly) -> Result<Self> {
        let n = e * m;
        if g.degree() != Some(n) {
            return Err(Error::Config(format!("polynomial {g} does not have degree {n}")));
        }
        let f = lift_primitive_poly(g)?;
        let field = GaloisField::new(g)?;

        let mut neg_tail = RingElement::ZERO;
        for (i, &c) in f.coefficients().iter().take(n).enumerate() {
            let v = u32::from((-c).value());
            neg_tail.lo |= (v & 1) << i;
            neg_tail.hi |= (v >> 1) << i;
        }

        let mut ctx = RingContext {
            e,
            m,
            n,
            g,
            f,
            neg_tail,
            field,
            beta_pows: Vec::new(),
            teich: Vec::new(),
            abs_trace_table: Vec::new(),
        };

        let order = (1usize << n) - 1;
        let mut pows = Vec::with_capacity(order);
        let mut acc = RingElement::ONE;
        for k in 0..order {
            if k > 0 && acc == RingElement::ONE {
                return Err(Error::Construction(format!("beta has order {k} < {order}")));
            }
            pows.push(acc);
            acc = ctx.mul_by_x(acc);
        }
        if acc != RingElement::ONE {
            return Err(Error::Construction(format!("beta^{order} != 1")));
        }

        let mut teich = vec![RingElement::ZERO; 1 << n];
        let mut seen = vec![false; 1 << n];
        seen[0] = true;
        for (k, &p) in pows.iter().enumerate() {
            let y = p.project();
            if seen[y.0 as usize] || ctx.field.exp_of(k as i64) != y {
                return Err(Error::Construction("Teichmuller table is not a bijection".into()));
            }
            seen[y.0 as usize] = true;
            teich[y.0 as usize] = p;
        }
        ctx.beta_pows = pows;
        ctx.teich = teich;

        let table: Vec<Z4> = (0..order)
            .map(|k| {
                let t = ctx.trace_orbit(ctx.beta_pows[k], 1, n);
                t.as_scalar().ok_or_else(|| Error::Construction("absolute trace is not a scalar".into()))
            })
            .collect::<Result<_>>()?;
        ctx.abs_trace_table = table;
        Ok(ctx)
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n - 1`, the order of the Teichmuller unit group.
    pub fn order(&self) -> usize {
        self.beta_pows.len()
    }

    pub fn binary_poly(&self) -> BinaryPoly {
        self.g
    }

    pub fn lifted_poly(&self) -> &Z4Poly {
        &self.f
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn beta(&self) -> RingElement {
        self.beta_pow(1)
    }

    /// `beta^k` for any integer `k`.
    pub fn beta_pow(&self, k: i64) -> RingElement {
        self.beta_pows[k.rem_euclid(self.order() as i64) as usize]
    }

    /// Teichmuller representative of `y`.
    pub fn teich(&self, y: FieldElement) -> RingElement {
        self.teich[y.0 as usize]
    }

    /// Discrete log of a nonzero Teichmuller element base `beta`.
    pub fn teich_log(&self, x: RingElement) -> Option<usize> {
        self.field.log_of(x.project()).filter(|_| self.teich(x.project()) == x)
    }

    pub fn is_teichmuller(&self, x: RingElement) -> bool {
        self.teich(x.project()) == x
    }

    /// The Teichmuller set T = {0} followed by `beta^0, beta^1, ..., beta^(2^n - 2)`.
    pub fn teichmuller_set(&self) -> impl Iterator<Item = RingElement> + '_ {
        std::iter::once(RingElement::ZERO).chain(self.beta_pows.iter().copied())
    }

    /// All `4^n` elements, in coefficient order. Only sensible for small `n`.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> {
        let n = self.n;
        let mask = (1u64 << n) - 1;
        (0u64..1u64 << (2 * n)).map(move |v| RingElement { lo: (v & mask) as u32, hi: (v >> n) as u32 })
    }

    pub fn element_from_coeffs(&self, coeffs: &[Z4]) -> Result<RingElement> {
        if coeffs.len() > self.n {
            return Err(Error::Argument(format!("{} coefficients for a degree-{} ring", coeffs.len(), self.n)));
        }
        let mut x = RingElement::ZERO;
        for (i, c) in coeffs.iter().enumerate() {
            let v = u32::from(c.value());
            x.lo |= (v & 1) << i;
            x.hi |= (v >> 1) << i;
        }
        Ok(x)
    }

    pub fn coeffs(&self, x: RingElement) -> Vec<Z4> {
        (0..self.n).map(|i| x.coeff(i)).collect()
    }

    /// Comma-separated coefficient list, constant term first, `n` entries.
    pub fn format_element(&self, x: RingElement) -> String {
        struct Fmt<'a>(&'a [Z4]);
        impl fmt::Display for Fmt<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_coefficients(f, self.0.iter().map(|c| c.value()))
            }
        }
        Fmt(&self.coeffs(x)).to_string()
    }

    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let p: Z4Poly = s.parse()?;
        if p.coefficients().len() != self.n {
            return Err(Error::Argument(format!("expected {} coefficients, got {}", self.n, p.coefficients().len())));
        }
        self.element_from_coeffs(p.coefficients())
    }

    fn mul_by_x(&self, x: RingElement) -> RingElement {
        let n = self.n;
        let top = Z4::new((((x.lo >> (n - 1)) & 1) | (((x.hi >> (n - 1)) & 1) << 1)) as u8);
        let mask = (1u32 << n) - 1;
        let shifted = RingElement { lo: (x.lo << 1) & mask, hi: (x.hi << 1) & mask };
        shifted + self.neg_tail.scale(top)
    }

    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        let mut acc = RingElement::ZERO;
        for i in (0..self.n).rev() {
            acc = self.mul_by_x(acc) + b.scale(a.coeff(i));
        }
        acc
    }

    pub fn pow(&self, mut base: RingElement, mut exp: u64) -> RingElement {
        let mut r = RingElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        r
    }

    pub fn project(&self, x: RingElement) -> FieldElement {
        x.project()
    }

    /// 2-adic decomposition `x = x0 + 2 x1` with `x0, x1` in T.
    pub fn teichmuller_decompose(&self, x: RingElement) -> (RingElement, RingElement) {
        let x0 = self.teich(x.project());
        let rest = x - x0;
        debug_assert_eq!(rest.lo, 0);
        (x0, self.teich(FieldElement(rest.hi)))
    }

    /// `sigma_1^k`: `x0^(2^k) + 2 x1^(2^k)`.
    pub fn frobenius_pow(&self, x: RingElement, k: usize) -> RingElement {
        let (x0, x1) = self.teichmuller_decompose(x);
        let y0 = self.field.frobenius(x0.project(), k);
        let y1 = self.field.frobenius(x1.project(), k);
        self.teich(y0) + RingElement::twice_field(y1)
    }

    /// Frobenius automorphism of GR(4,n) over GR(4,e).
    pub fn frobenius(&self, x: RingElement) -> RingElement {
        self.frobenius_pow(x, self.e)
    }

    // sum_{i < upper/step} sigma_1^(step*i)(x)
    fn trace_orbit(&self, x: RingElement, step: usize, upper: usize) -> RingElement {
        let mut acc = RingElement::ZERO;
        let mut cur = x;
        for _ in 0..upper / step {
            acc += cur;
            cur = self.frobenius_pow(cur, step);
        }
        acc
    }

    /// Relative trace `Tr_e^n`, landing in GR(4,e).
    pub fn trace_rel(&self, x: RingElement) -> RingElement {
        self.trace_orbit(x, self.e, self.n)
    }

    /// `Tr_lower^upper` for `x` in GR(4,upper) with `lower | upper | n`.
    pub fn trace_between(&self, x: RingElement, lower: usize, upper: usize) -> Result<RingElement> {
        if lower == 0 || upper % lower != 0 || self.n % upper != 0 {
            return Err(Error::Config(format!("need {lower} | {upper} | {}", self.n)));
        }
        if !self.in_subring(x, upper) {
            return Err(Error::Argument(format!("element is not in GR(4,{upper})")));
        }
        Ok(self.trace_orbit(x, lower, upper))
    }

    /// Absolute trace `Tr_1^n` via the orbit sum.
    pub fn abs_trace_orbit(&self, x: RingElement) -> Z4 {
        self.trace_orbit(x, 1, self.n).as_scalar().expect("absolute trace lands in Z4")
    }

    /// Absolute trace `Tr_1^n` via the 2-adic split and the trace table of `beta^k`.
    pub fn abs_trace(&self, x: RingElement) -> Z4 {
        let (x0, x1) = self.teichmuller_decompose(x);
        self.teich_trace(x0) + Z4::double_bit(self.field.abs_trace(x1.project()))
    }

    fn teich_trace(&self, x0: RingElement) -> Z4 {
        match self.field.log_of(x0.project()) {
            None => Z4::ZERO,
            Some(k) => self.abs_trace_table[k],
        }
    }

    /// `Tr_1^n(beta^k)`.
    pub fn trace_of_beta_pow(&self, k: i64) -> Z4 {
        self.abs_trace_table[k.rem_euclid(self.order() as i64) as usize]
    }

    /// `x` lies in GR(4,d) iff it is fixed by `sigma_1^d`.
    pub fn in_subring(&self, x: RingElement, d: usize) -> bool {
        self.n % d == 0 && self.frobenius_pow(x, d) == x
    }

    /// `(beta^a)^(2^k)` exponent arithmetic helper: `a * 2^k mod (2^n - 1)`.
    pub fn frobenius_exponent(&self, a: u64, k: usize) -> u64 {
        let order = self.order() as u64;
        a % order * pow_mod(2, k as u64, order) % order
    }
}
