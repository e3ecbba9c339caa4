use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{CoefficientTuple, FamilyConfig, FamilyKind};
use crate::lincomp::span_formula_l;

/// Which value of `lambda_i`, `i` in B, cancels a trace term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BValueConvention {
    /// `lambda_i == lambda^(2^i + 1)` (projected).
    #[default]
    Exponentiated,
    /// `lambda_i == lambda` (projected).
    Plain,
}

/// Partition of `{1, ..., rho-1}` into multiples of `e` (B) and the rest (A).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanClassification {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl SpanClassification {
    pub fn new(rho: usize, e: usize) -> Self {
        let (b, a): (Vec<usize>, Vec<usize>) = (1..rho).partition(|i| i % e == 0);
        SpanClassification { a, b }
    }
}

/// Span class `(j, l)` of one `L` member and its predicted linear span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpanClass {
    pub j: usize,
    pub l: usize,
    pub linear_span: u64,
}

pub fn classify_span(tuple: &CoefficientTuple, config: &FamilyConfig, convention: BValueConvention) -> Result<SpanClass> {
    if !matches!(config.kind(), FamilyKind::L | FamilyKind::V) {
        return Err(Error::Config("span classes are defined for L-type families".into()));
    }
    let ring = config.ring();
    let (rho, e) = (config.rho(), ring.e());
    if tuple.len() != rho {
        return Err(Error::Argument(format!("tuple has {} entries, expected {rho}", tuple.len())));
    }
    let parts = SpanClassification::new(rho, e);
    let j = parts.a.iter().filter(|&&i| tuple.lambda_k(i).is_zero()).count();
    let lambda_bar = config.lambda().project();
    let field = ring.field();
    let l = parts
        .b
        .iter()
        .filter(|&&i| {
            let target = match convention {
                BValueConvention::Exponentiated => field.pow(lambda_bar, (1i64 << i) + 1),
                BValueConvention::Plain => lambda_bar,
            };
            tuple.lambda_k(i).project() == target
        })
        .count();
    let linear_span = span_formula_l(ring.n(), e, ring.m(), rho, j, l)?;
    Ok(SpanClass { j, l, linear_span })
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Number of `L` members in span class `(j, l)`:
/// `C(rho-1-floor((rho-1)/e), j) * C(floor((rho-1)/e), l) * 2^n * (2^n - 1)^(rho-1-j-l)`.
pub fn count_span_class(config: &FamilyConfig, j: usize, l: usize) -> Result<u128> {
    let ring = config.ring();
    let parts = SpanClassification::new(config.rho(), ring.e());
    if j > parts.a.len() || l > parts.b.len() {
        return Err(Error::Argument(format!(
            "class (j={j}, l={l}) outside 0..={} x 0..={}",
            parts.a.len(),
            parts.b.len()
        )));
    }
    let q = 1u128 << ring.n();
    let free = (config.rho() - 1 - j - l) as u32;
    Ok(binomial(parts.a.len() as u64, j as u64) * binomial(parts.b.len() as u64, l as u64) * q * (q - 1).pow(free))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::families::FamilyL;
    use crate::ring::{RingContext, RingElement};

    fn config(e: usize, m: usize, rho: usize) -> FamilyConfig {
        let ring = Arc::new(RingContext::new(e, m).unwrap());
        FamilyConfig::new(ring, FamilyKind::L, rho, None).unwrap()
    }

    #[test]
    fn partition_of_indices() {
        assert_eq!(SpanClassification::new(1, 2), SpanClassification { a: vec![], b: vec![] });
        assert_eq!(SpanClassification::new(2, 2), SpanClassification { a: vec![1], b: vec![] });
        assert_eq!(SpanClassification::new(6, 2), SpanClassification { a: vec![1, 3, 5], b: vec![2, 4] });
    }

    #[test]
    fn class_counts_n6() {
        let cfg = config(2, 3, 2);
        assert_eq!(count_span_class(&cfg, 0, 0).unwrap(), 4032);
        assert_eq!(count_span_class(&cfg, 1, 0).unwrap(), 64);
        assert!(count_span_class(&cfg, 2, 0).is_err());
        assert!(count_span_class(&cfg, 0, 1).is_err());
    }

    #[test]
    fn class_counts_partition_the_family() {
        for (e, m, rho) in [(2, 3, 2), (2, 4, 3), (2, 5, 4), (3, 3, 3), (2, 2, 1)] {
            let cfg = config(e, m, rho);
            let parts = SpanClassification::new(rho, e);
            let mut total = 0u128;
            for j in 0..=parts.a.len() {
                for l in 0..=parts.b.len() {
                    total += count_span_class(&cfg, j, l).unwrap();
                }
            }
            assert_eq!(total, 1u128 << (cfg.ring().n() * rho), "e={e} m={m} rho={rho}");
        }
    }

    #[test]
    fn classify_members() {
        let cfg = config(2, 3, 2);
        let fam = FamilyL::new(cfg.clone()).unwrap();
        let t = fam.tuple_for_index(2).unwrap();
        let c = classify_span(&t, &cfg, BValueConvention::default()).unwrap();
        assert_eq!((c.j, c.l, c.linear_span), (0, 0, 18));
        let t = fam.tuple_for_index(1).unwrap();
        assert_eq!(t.lambda_k(1), RingElement::ZERO);
        let c = classify_span(&t, &cfg, BValueConvention::default()).unwrap();
        assert_eq!((c.j, c.l, c.linear_span), (1, 0, 12));

        let v = config(2, 2, 1);
        let fam = FamilyL::new(v.clone()).unwrap();
        let c = classify_span(&fam.tuple_for_index(5).unwrap(), &v, BValueConvention::default()).unwrap();
        assert_eq!(c.linear_span, 6);
    }

    #[test]
    fn b_convention_counts_matching_entries() {
        // n = 8, e = 2, rho = 3: B = {2}
        let cfg = config(2, 4, 3);
        let ring = cfg.ring();
        let lam = cfg.lambda();
        let exp_val = ring.pow(lam, 5);
        let t = CoefficientTuple(vec![RingElement::ZERO, ring.beta(), exp_val]);
        assert_eq!(classify_span(&t, &cfg, BValueConvention::Exponentiated).unwrap().l, 1);
        let t = CoefficientTuple(vec![RingElement::ZERO, ring.beta(), lam]);
        assert_eq!(classify_span(&t, &cfg, BValueConvention::Plain).unwrap().l, 1);
    }
}
