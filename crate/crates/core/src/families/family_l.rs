use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{CoefficientTuple, FamilyConfig, FamilyKind, PFunction, QuadSequence, SequenceMeta};
use crate::ring::{RingContext, RingElement, Z4};

/// Refuse to materialize families larger than this; use [`FamilyL::member`] instead.
pub const MAX_MATERIALIZED_MEMBERS: u128 = 1 << 20;

/// Generator for family `L` (and its `rho = 1`, even-`m` special case `V`).
///
/// Member `i` in `1..=2^(n*rho)` is
/// `Tr[(1 + 2 l0) beta^t] + 2 sum_k Tr(l_k beta^(t(1+2^k))) + 2 P(lambda beta^t)`
/// where `(l0, ..., l_{rho-1})` is the `(i-1)`-th tuple of `T^rho` in row-major
/// order, `T` ordered as `0, beta^0, ..., beta^(2^n - 2)`.
#[derive(Clone, Debug)]
pub struct FamilyL {
    config: FamilyConfig,
    p: PFunction,
}

impl FamilyL {
    pub fn new(config: FamilyConfig) -> Result<Self> {
        if !matches!(config.kind(), FamilyKind::L | FamilyKind::V) {
            return Err(Error::Config(format!("family {} is not an L-type family", config.kind())));
        }
        let p = PFunction::new(config.ring());
        Ok(FamilyL { config, p })
    }

    pub fn config(&self) -> &FamilyConfig {
        &self.config
    }

    pub fn p_function(&self) -> &PFunction {
        &self.p
    }

    /// Members other than the m-sequence row: `2^(n*rho)`.
    pub fn tuple_count(&self) -> u128 {
        1u128 << (self.config.ring().n() * self.config.rho())
    }

    pub fn size(&self) -> u128 {
        self.tuple_count() + 1
    }

    pub fn m_sequence_index(&self) -> usize {
        self.tuple_count() as usize + 1
    }

    /// Position of an element of T in the fixed enumeration order.
    pub fn teich_digit(ring: &RingContext, x: RingElement) -> Option<u64> {
        if x.is_zero() {
            Some(0)
        } else {
            ring.teich_log(x).map(|k| k as u64 + 1)
        }
    }

    fn teich_from_digit(ring: &RingContext, d: u64) -> RingElement {
        if d == 0 {
            RingElement::ZERO
        } else {
            ring.beta_pow(d as i64 - 1)
        }
    }

    /// Coefficient tuple of member `index`, `1 <= index <= 2^(n*rho)`.
    pub fn tuple_for_index(&self, index: u128) -> Result<CoefficientTuple> {
        if index < 1 || index > self.tuple_count() {
            return Err(Error::Argument(format!("member index {index} outside 1..={}", self.tuple_count())));
        }
        let ring = self.config.ring();
        let base = 1u128 << ring.n();
        let mut rest = index - 1;
        let mut digits = vec![0u64; self.config.rho()];
        for slot in digits.iter_mut().rev() {
            *slot = (rest % base) as u64;
            rest /= base;
        }
        Ok(CoefficientTuple(digits.into_iter().map(|d| Self::teich_from_digit(ring, d)).collect()))
    }

    /// Inverse of [`FamilyL::tuple_for_index`].
    pub fn index_for_tuple(&self, tuple: &CoefficientTuple) -> Result<u128> {
        let ring = self.config.ring();
        if tuple.len() != self.config.rho() {
            return Err(Error::Argument(format!("tuple has {} entries, expected {}", tuple.len(), self.config.rho())));
        }
        let base = 1u128 << ring.n();
        let mut idx = 0u128;
        for &x in &tuple.0 {
            let d = Self::teich_digit(ring, x)
                .ok_or_else(|| Error::Argument("tuple entry is not in the Teichmuller set".into()))?;
            idx = idx * base + u128::from(d);
        }
        Ok(idx + 1)
    }

    /// Sequence for a coefficient tuple, using trace tables.
    pub fn sequence_for_tuple(&self, tuple: &CoefficientTuple) -> Vec<Z4> {
        let ring = self.config.ring();
        let order = ring.order() as i64;
        let lam = self.config.lambda_log() as i64;
        let l0 = ring.teich_log(tuple.lambda0()).map(|k| k as i64);
        let terms: Vec<(i64, i64)> = (1..tuple.len())
            .filter_map(|k| ring.teich_log(tuple.lambda_k(k)).map(|a| (a as i64, ((1i64 << k) + 1) % order)))
            .collect();
        (0..order)
            .map(|t| {
                let mut bit = self.p.at_beta_pow(lam + t).bit();
                if let Some(a) = l0 {
                    bit ^= ring.trace_of_beta_pow(a + t).bit();
                }
                for &(a, d) in &terms {
                    bit ^= ring.trace_of_beta_pow(a + t * d % order).bit();
                }
                ring.trace_of_beta_pow(t) + Z4::double_bit(bit)
            })
            .collect()
    }

    /// The same sequence evaluated with plain ring arithmetic.
    pub fn sequence_for_tuple_reference(&self, tuple: &CoefficientTuple) -> Vec<Z4> {
        let ring = self.config.ring();
        let lambda = self.config.lambda();
        let one_plus = RingElement::ONE + tuple.lambda0().double();
        (0..ring.order() as i64)
            .map(|t| {
                let x = ring.beta_pow(t);
                let mut v = ring.abs_trace(ring.mul(one_plus, x));
                for k in 1..tuple.len() {
                    let w = ring.mul(tuple.lambda_k(k), ring.pow(x, (1u64 << k) + 1));
                    v += Z4::TWO * ring.abs_trace(w);
                }
                v + Z4::TWO * self.p.eval(ring, ring.mul(lambda, x))
            })
            .collect()
    }

    /// The doubled m-sequence `2 Tr(beta^t)`.
    pub fn m_sequence(&self) -> Vec<Z4> {
        let ring = self.config.ring();
        (0..ring.order() as i64).map(|t| Z4::TWO * ring.trace_of_beta_pow(t)).collect()
    }

    /// Member `index` in `1..=2^(n*rho) + 1`.
    pub fn member(&self, index: u128) -> Result<QuadSequence> {
        let kind = self.config.kind();
        if index == self.tuple_count() + 1 {
            return Ok(QuadSequence {
                values: self.m_sequence(),
                meta: SequenceMeta { kind, index: index as usize, tuple: None },
            });
        }
        let tuple = self.tuple_for_index(index)?;
        Ok(QuadSequence {
            values: self.sequence_for_tuple(&tuple),
            meta: SequenceMeta { kind, index: index as usize, tuple: Some(tuple) },
        })
    }

    /// All members in index order.
    pub fn members(&self) -> Result<Vec<QuadSequence>> {
        if self.size() > MAX_MATERIALIZED_MEMBERS {
            return Err(Error::Argument(format!(
                "family has {} members; generate individual members instead",
                self.size()
            )));
        }
        (1..=self.size() as u64).into_par_iter().map(|i| self.member(u128::from(i))).collect()
    }
}

/// Generates every member of an `L`/`V` family.
pub fn gen_family_l(config: &FamilyConfig) -> Result<Vec<QuadSequence>> {
    let fam = FamilyL::new(config.clone())?;
    let members = fam.members()?;
    if members.len() as u128 != config.family_size() {
        return Err(Error::Diagnostic(format!("generated {} members, expected {}", members.len(), config.family_size())));
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn family(e: usize, m: usize, kind: FamilyKind, rho: usize) -> FamilyL {
        let ring = Arc::new(RingContext::new(e, m).unwrap());
        FamilyL::new(FamilyConfig::new(ring, kind, rho, None).unwrap()).unwrap()
    }

    #[test]
    fn family_v_n4_shape() {
        let fam = family(2, 2, FamilyKind::V, 1);
        let members = fam.members().unwrap();
        assert_eq!(members.len(), 17);
        assert!(members.iter().all(|s| s.period() == 15));
        let last = members.last().unwrap();
        assert!(last.values.iter().all(|v| v.bit() == 0));
        assert_eq!(last.meta.index, 17);
    }

    #[test]
    fn table_route_matches_reference() {
        for (e, m, kind, rho) in [(2, 2, FamilyKind::V, 1), (2, 3, FamilyKind::L, 2), (3, 2, FamilyKind::L, 2)] {
            let fam = family(e, m, kind, rho);
            let step = (fam.tuple_count() / 97).max(1);
            let mut i = 1;
            while i <= fam.tuple_count() {
                let tuple = fam.tuple_for_index(i).unwrap();
                assert_eq!(fam.sequence_for_tuple(&tuple), fam.sequence_for_tuple_reference(&tuple), "index {i}");
                i += step;
            }
        }
    }

    #[test]
    fn tuple_enumeration_is_row_major() {
        let fam = family(2, 3, FamilyKind::L, 2);
        let ring = fam.config().ring();
        let first = fam.tuple_for_index(1).unwrap();
        assert_eq!(first.0, vec![RingElement::ZERO, RingElement::ZERO]);
        let second = fam.tuple_for_index(2).unwrap();
        assert_eq!(second.0, vec![RingElement::ZERO, RingElement::ONE]);
        let t = fam.tuple_for_index(65).unwrap();
        assert_eq!(t.0, vec![RingElement::ONE, RingElement::ZERO]);
        let last = fam.tuple_for_index(4096).unwrap();
        assert_eq!(last.0, vec![ring.beta_pow(62), ring.beta_pow(62)]);
        for i in [1u128, 2, 77, 4096] {
            assert_eq!(fam.index_for_tuple(&fam.tuple_for_index(i).unwrap()).unwrap(), i);
        }
        assert!(fam.tuple_for_index(0).is_err());
        assert!(fam.tuple_for_index(4097).is_err());
        assert!(fam.member(4097).unwrap().meta.tuple.is_none());
    }

    #[test]
    fn n6_rho2_family_size() {
        let fam = family(2, 3, FamilyKind::L, 2);
        assert_eq!(fam.size(), 4097);
        let members = fam.members().unwrap();
        assert_eq!(members.len(), 4097);
        assert!(members.iter().all(|s| s.period() == 63));
    }
}
