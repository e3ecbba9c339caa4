use crate::ring::{RingContext, RingElement, Z4};

/// The quadratic-form function `P` on GR(4,n), `n = e*m`.
///
/// For `m = 2l + 1`: `P(x) = sum_{j=1..l} Tr_1^n(x^(2^(ej)+1))`.
/// For `m = 2l`: `P(x) = sum_{j=1..l-1} Tr_1^n(x^(2^(ej)+1)) + Tr_1^(le)(x^(2^(le)+1))`.
///
/// The half-length term is only a Z4 scalar for Teichmuller `x`. For
/// `x = x0 + 2 x1` it is taken as `Tr_1^(le)(x0^(q+1)) + 2 tr_1^n(x0^q x1)`
/// with `q = 2^(le)`, the polarization of the form. `2P` does not depend on
/// that choice.
#[derive(Clone, Debug)]
pub struct PFunction {
    e: usize,
    m: usize,
    n: usize,
    // P(beta^k) for k < 2^n - 1
    on_units: Vec<Z4>,
}

impl PFunction {
    pub fn new(ring: &RingContext) -> Self {
        let mut p = PFunction { e: ring.e(), m: ring.m(), n: ring.n(), on_units: Vec::new() };
        p.on_units = (0..ring.order() as u64).map(|k| p.eval_teich_log(ring, k)).collect();
        p
    }

    /// Exponents `2^(ej) + 1` of the full-length trace terms.
    pub fn full_exponents(&self) -> Vec<u64> {
        let count = if self.m % 2 == 0 { self.m / 2 - 1 } else { self.m / 2 };
        (1..=count).map(|j| (1u64 << (self.e * j)) + 1).collect()
    }

    /// `le` for even `m`: the degree of the half-length trace term.
    pub fn half_degree(&self) -> Option<usize> {
        (self.m % 2 == 0).then_some(self.n / 2)
    }

    fn eval_teich_log(&self, ring: &RingContext, k: u64) -> Z4 {
        let order = ring.order() as u64;
        let mut acc: Z4 = self
            .full_exponents()
            .into_iter()
            .map(|d| ring.trace_of_beta_pow(((k % order) * (d % order) % order) as i64))
            .sum();
        if let Some(h) = self.half_degree() {
            let d = (1u64 << h) + 1;
            let w = ring.beta_pow(((k % order) * (d % order) % order) as i64);
            acc += half_trace(ring, w, h);
        }
        acc
    }

    /// `P(beta^k)`.
    pub fn at_beta_pow(&self, k: i64) -> Z4 {
        self.on_units[k.rem_euclid(self.on_units.len() as i64) as usize]
    }

    /// `P(x)` for a Teichmuller element `x`, via the table.
    pub fn at_teich(&self, ring: &RingContext, x: RingElement) -> Z4 {
        match ring.teich_log(x) {
            Some(k) => self.on_units[k],
            None if x.is_zero() => Z4::ZERO,
            None => self.eval(ring, x),
        }
    }

    /// `P(x)` for arbitrary `x` by direct ring arithmetic.
    pub fn eval(&self, ring: &RingContext, x: RingElement) -> Z4 {
        let mut acc: Z4 = self.full_exponents().into_iter().map(|d| ring.abs_trace(ring.pow(x, d))).sum();
        if let Some(h) = self.half_degree() {
            let q = 1u64 << h;
            let (x0, x1) = ring.teichmuller_decompose(x);
            let main = half_trace(ring, ring.pow(x0, q + 1), h);
            let field = ring.field();
            let cross = field.mul(field.pow(x0.project(), q as i64), x1.project());
            acc += main + Z4::double_bit(field.abs_trace(cross));
        }
        acc
    }
}

// Tr_1^h on an element of GR(4,h).
fn half_trace(ring: &RingContext, w: RingElement, h: usize) -> Z4 {
    ring.trace_between(w, 1, h)
        .ok()
        .and_then(RingElement::as_scalar)
        .expect("norm-type power lies in GR(4,le)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_at_zero_and_one() {
        let r = RingContext::new(2, 2).unwrap();
        let p = PFunction::new(&r);
        assert_eq!(p.eval(&r, RingElement::ZERO), Z4::ZERO);
        // l = 1: P(x) = Tr_1^2(x^5); P(1) = 1 + 1
        assert!(p.full_exponents().is_empty());
        assert_eq!(p.half_degree(), Some(2));
        assert_eq!(p.eval(&r, RingElement::ONE), Z4::TWO);
    }

    #[test]
    fn table_and_direct_routes_agree_on_t() {
        for (e, m) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let r = RingContext::new(e, m).unwrap();
            let p = PFunction::new(&r);
            for k in 0..r.order() as i64 {
                assert_eq!(p.at_beta_pow(k), p.eval(&r, r.beta_pow(k)), "e={e} m={m} k={k}");
            }
        }
    }

    #[test]
    fn odd_m_exponents() {
        let r = RingContext::new(2, 3).unwrap();
        let p = PFunction::new(&r);
        assert_eq!(p.full_exponents(), vec![5]);
        assert_eq!(p.half_degree(), None);
        let r = RingContext::new(2, 5).unwrap();
        assert_eq!(PFunction::new(&r).full_exponents(), vec![5, 17]);
    }
}
