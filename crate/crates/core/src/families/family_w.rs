use crate::error::{Error, Result};
use crate::families::{FamilyConfig, FamilyKind, PFunction, QuadSequence, SequenceMeta};
use crate::ring::{FieldElement, RingContext, RingElement, Z4};

/// The maximal subset G of the Teichmuller units with `2 eta_i != 2(eta_j + 1)`.
///
/// Contains 1, plus for each pair `{a, a+1}` inside GF(2^n) \ {0, 1} the lift of
/// the member with the smaller discrete log. Returned in discrete-log order.
pub fn build_set_g(ring: &RingContext) -> Vec<RingElement> {
    let field = ring.field();
    let mut logs: Vec<usize> = (0..ring.order())
        .filter(|&k| {
            let a = field.exp_of(k as i64);
            let partner = a + FieldElement::ONE;
            match field.log_of(partner) {
                // a = 1: partner is 0, always admissible
                None => true,
                // partner = 1 means a = 0, impossible here
                Some(p) => k < p,
            }
        })
        .collect();
    logs.sort_unstable();
    let g: Vec<RingElement> = logs.into_iter().map(|k| ring.beta_pow(k as i64)).collect();
    debug_assert_eq!(g.len(), 1 << (ring.n() - 1));
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfPeriodVariant {
    U,
    V,
}

/// Generator for family `W` of period `2(2^n - 1)`.
///
/// With `h = 2^(n-1)` (so `beta^h` squares to `beta`):
/// `u_i(2t) = Tr[(1 + 2 eta_i) beta^t] + 2 P(lambda beta^t)` and
/// `u_i(2t+1) = Tr[(1 + 2(eta_i + 1)) beta^(t+h)] + 2 P(lambda beta^(t+h))`;
/// `v_i` adds 2 at even positions.
#[derive(Clone, Debug)]
pub struct FamilyW {
    config: FamilyConfig,
    p: PFunction,
    set_g: Vec<RingElement>,
}

impl FamilyW {
    pub fn new(config: FamilyConfig) -> Result<Self> {
        if config.kind() != FamilyKind::W {
            return Err(Error::Config(format!("family {} is not W", config.kind())));
        }
        let p = PFunction::new(config.ring());
        let set_g = build_set_g(config.ring());
        Ok(FamilyW { config, p, set_g })
    }

    pub fn config(&self) -> &FamilyConfig {
        &self.config
    }

    pub fn p_function(&self) -> &PFunction {
        &self.p
    }

    pub fn set_g(&self) -> &[RingElement] {
        &self.set_g
    }

    pub fn half_count(&self) -> usize {
        self.set_g.len()
    }

    /// File/report index of `u_i` or `v_i`.
    pub fn index_of(&self, i: usize, variant: HalfPeriodVariant) -> usize {
        match variant {
            HalfPeriodVariant::U => i,
            HalfPeriodVariant::V => self.half_count() + i,
        }
    }

    /// `beta^(1/2) := beta^(2^(n-1))`.
    pub fn half_shift(&self) -> i64 {
        1i64 << (self.config.ring().n() - 1)
    }

    pub fn values(&self, i: usize, variant: HalfPeriodVariant) -> Result<Vec<Z4>> {
        let eta = *self
            .set_g
            .get(i)
            .ok_or_else(|| Error::Argument(format!("W member {i} outside 0..{}", self.half_count())))?;
        let ring = self.config.ring();
        let eta_log = ring.teich_log(eta).expect("G is inside the unit group") as i64;
        let lam = self.config.lambda_log() as i64;
        let half = self.half_shift();
        let extra = if variant == HalfPeriodVariant::V { Z4::TWO } else { Z4::ZERO };
        let mut out = Vec::with_capacity(2 * ring.order());
        for t0 in 0..ring.order() as i64 {
            // Tr[(1 + 2 eta) y] = Tr(y) + 2 tr(eta y)
            let bit = ring.trace_of_beta_pow(eta_log + t0).bit() ^ self.p.at_beta_pow(lam + t0).bit();
            out.push(ring.trace_of_beta_pow(t0) + Z4::double_bit(bit) + extra);
            // Tr[(3 + 2 eta) y] = -Tr(y) + 2 tr(eta y)
            let s = t0 + half;
            let bit = ring.trace_of_beta_pow(eta_log + s).bit() ^ self.p.at_beta_pow(lam + s).bit();
            out.push(-ring.trace_of_beta_pow(s) + Z4::double_bit(bit));
        }
        Ok(out)
    }

    /// Direct ring-arithmetic evaluation of the same sequence.
    pub fn values_reference(&self, i: usize, variant: HalfPeriodVariant) -> Vec<Z4> {
        let ring = self.config.ring();
        let eta = self.set_g[i];
        let lambda = self.config.lambda();
        let sqrt_beta = ring.beta_pow(self.half_shift());
        let c_even = RingElement::ONE + eta.double();
        let c_odd = RingElement::ONE + (eta + RingElement::ONE).double();
        let mut out = Vec::with_capacity(2 * ring.order());
        for t0 in 0..ring.order() as i64 {
            let x = ring.beta_pow(t0);
            let mut even = ring.abs_trace(ring.mul(c_even, x)) + Z4::TWO * self.p.eval(ring, ring.mul(lambda, x));
            if variant == HalfPeriodVariant::V {
                even += Z4::TWO;
            }
            out.push(even);
            let y = ring.mul(x, sqrt_beta);
            out.push(ring.abs_trace(ring.mul(c_odd, y)) + Z4::TWO * self.p.eval(ring, ring.mul(lambda, y)));
        }
        out
    }

    pub fn member(&self, i: usize, variant: HalfPeriodVariant) -> Result<QuadSequence> {
        Ok(QuadSequence {
            values: self.values(i, variant)?,
            meta: SequenceMeta { kind: FamilyKind::W, index: self.index_of(i, variant), tuple: None },
        })
    }

    /// `(u_0, ..., u_{2^(n-1)-1})` and `(v_0, ...)`.
    pub fn members(&self) -> Result<(Vec<QuadSequence>, Vec<QuadSequence>)> {
        let us = (0..self.half_count()).map(|i| self.member(i, HalfPeriodVariant::U)).collect::<Result<_>>()?;
        let vs = (0..self.half_count()).map(|i| self.member(i, HalfPeriodVariant::V)).collect::<Result<_>>()?;
        Ok((us, vs))
    }
}

/// Generates `(u_i)` and `(v_i)` of a `W` family.
pub fn gen_family_w(config: &FamilyConfig) -> Result<(Vec<QuadSequence>, Vec<QuadSequence>)> {
    FamilyW::new(config.clone())?.members()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn family(e: usize, m: usize) -> FamilyW {
        let ring = Arc::new(RingContext::new(e, m).unwrap());
        FamilyW::new(FamilyConfig::new(ring, FamilyKind::W, 1, None).unwrap()).unwrap()
    }

    #[test]
    fn set_g_n4() {
        let fam = family(2, 2);
        let ring = fam.config().ring();
        let g = fam.set_g();
        assert_eq!(g.len(), 8);
        assert_eq!(g[0], RingElement::ONE);
        // alpha^4 = alpha + 1 in GF(16) with x^4 + x + 1, so alpha is kept
        assert!(g.contains(&ring.beta()));
        assert!(!g.contains(&ring.beta_pow(4)));
        for a in g {
            for b in g {
                assert_ne!(a.project(), b.project() + FieldElement::ONE);
            }
        }
    }

    #[test]
    fn set_g_sizes() {
        for (e, m) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let ring = RingContext::new(e, m).unwrap();
            assert_eq!(build_set_g(&ring).len(), 1 << (ring.n() - 1));
        }
    }

    #[test]
    fn family_w_n4_shape() {
        let fam = family(2, 2);
        let (us, vs) = fam.members().unwrap();
        assert_eq!((us.len(), vs.len()), (8, 8));
        for (u, v) in us.iter().zip(&vs) {
            assert_eq!((u.period(), v.period()), (30, 30));
            for t in 0..30 {
                let d = v.values[t] - u.values[t];
                assert_eq!(d, if t % 2 == 0 { Z4::TWO } else { Z4::ZERO });
            }
        }
        assert_eq!(vs[3].meta.index, 11);
    }

    #[test]
    fn sqrt_beta_squares_to_beta() {
        let fam = family(2, 2);
        let ring = fam.config().ring();
        let s = ring.beta_pow(fam.half_shift());
        assert_eq!(ring.mul(s, s), ring.beta());
    }

    #[test]
    fn table_route_matches_reference() {
        for (e, m) in [(2, 2), (3, 2), (2, 4)] {
            let fam = family(e, m);
            for i in (0..fam.half_count()).step_by((fam.half_count() / 16).max(1)) {
                for variant in [HalfPeriodVariant::U, HalfPeriodVariant::V] {
                    assert_eq!(fam.values(i, variant).unwrap(), fam.values_reference(i, variant));
                }
            }
        }
    }

    #[test]
    fn odd_m_rejected() {
        let ring = Arc::new(RingContext::new(2, 3).unwrap());
        assert!(FamilyConfig::new(ring, FamilyKind::W, 1, None).is_err());
    }
}
