mod common;

use std::sync::Arc;

use common::{bits, graeffe_lift, NaiveRing};
use quadseq::families::*;
use quadseq::ring::{RingContext, Z4};

/// Direct evaluation of the defining formulas with schoolbook ring arithmetic.
struct Oracle {
    ring: NaiveRing,
    e: usize,
    m: usize,
}

impl Oracle {
    fn new(ring: &RingContext) -> Self {
        let n = ring.n();
        Oracle { ring: NaiveRing { n, f: graeffe_lift(&bits(ring.binary_poly().0, n)) }, e: ring.e(), m: ring.m() }
    }

    fn beta(&self, k: u64) -> Vec<u8> {
        self.ring.pow(&self.ring.x(), k % ((1 << self.ring.n) - 1))
    }

    /// `Tr_1^d` of a Teichmuller element that lies in GR(4, d).
    fn trace_teich(&self, x: &[u8], d: usize) -> u8 {
        let mut acc = vec![0; self.ring.n];
        let mut cur = x.to_vec();
        for _ in 0..d {
            acc = self.ring.add(&acc, &cur);
            cur = self.ring.mul(&cur, &cur);
        }
        assert!(acc[1..].iter().all(|&c| c == 0), "trace of a subring element is a scalar");
        acc[0]
    }

    fn p_teich(&self, x: &[u8]) -> u8 {
        let n = self.ring.n;
        let (e, m) = (self.e, self.m);
        let full = if m % 2 == 0 { m / 2 - 1 } else { m / 2 };
        let mut acc = 0;
        for j in 1..=full {
            acc += self.trace_teich(&self.ring.pow(x, (1 << (e * j)) + 1), n);
        }
        if m % 2 == 0 {
            let h = n / 2;
            acc += self.trace_teich(&self.ring.pow(x, (1 << h) + 1), h);
        }
        acc & 3
    }

    /// Member with tuple given by logs (`None` = 0) and `lambda = beta^lam`.
    fn l_member(&self, tuple: &[Option<u64>], lam: u64) -> Vec<u8> {
        let n = self.ring.n;
        let order = (1u64 << n) - 1;
        (0..order)
            .map(|t| {
                let y = self.beta(t);
                let mut v = self.trace_teich(&y, n);
                if let Some(l0) = tuple[0] {
                    v += 2 * self.trace_teich(&self.beta(l0 + t), n);
                }
                for (k, lk) in tuple.iter().enumerate().skip(1) {
                    if let Some(lk) = lk {
                        v += 2 * self.trace_teich(&self.beta(lk + t * (1 + (1 << k))), n);
                    }
                }
                v += 2 * self.p_teich(&self.beta(lam + t));
                v & 3
            })
            .collect()
    }

    fn w_member(&self, eta_log: u64, lam: u64, v_variant: bool) -> Vec<u8> {
        let n = self.ring.n;
        let order = (1u64 << n) - 1;
        let h = 1u64 << (n - 1);
        let mut out = Vec::new();
        for t0 in 0..order {
            let even = self.trace_teich(&self.beta(t0), n)
                + 2 * self.trace_teich(&self.beta(eta_log + t0), n)
                + 2 * self.p_teich(&self.beta(lam + t0))
                + if v_variant { 2 } else { 0 };
            out.push(even & 3);
            // (1 + 2(eta + 1)) y = 3y + 2 eta y
            let s = t0 + h;
            let odd = 3 * self.trace_teich(&self.beta(s), n)
                + 2 * self.trace_teich(&self.beta(eta_log + s), n)
                + 2 * self.p_teich(&self.beta(lam + s));
            out.push(odd & 3);
        }
        out
    }
}

fn values(s: &QuadSequence) -> Vec<u8> {
    s.values.iter().map(|v| v.value()).collect()
}

fn config(e: usize, m: usize, kind: FamilyKind, rho: usize) -> FamilyConfig {
    FamilyConfig::new(Arc::new(RingContext::new(e, m).unwrap()), kind, rho, None).unwrap()
}

/// Log of the `d`-th element of T in enumeration order, `None` for 0.
fn digit_log(d: u128) -> Option<u64> {
    (d > 0).then(|| (d - 1) as u64)
}

#[test]
fn family_v_matches_direct_formula() {
    let cfg = config(2, 2, FamilyKind::V, 1);
    let oracle = Oracle::new(cfg.ring());
    let fam = gen_family_l(&cfg).unwrap();
    assert_eq!(fam.len(), 17);
    for s in &fam[..16] {
        let want = oracle.l_member(&[digit_log(s.meta.index as u128 - 1)], cfg.lambda_log());
        assert_eq!(values(s), want, "member {}", s.meta.index);
    }
    let m: Vec<u8> = (0..15).map(|t| (2 * oracle.trace_teich(&oracle.beta(t), 4)) & 3).collect();
    assert_eq!(values(&fam[16]), m);
}

#[test]
fn family_l_rho2_matches_direct_formula() {
    let cfg = config(2, 3, FamilyKind::L, 2);
    let oracle = Oracle::new(cfg.ring());
    let fam = FamilyL::new(cfg.clone()).unwrap();
    for idx in [1u128, 2, 64, 65, 66, 1000, 2345, 4096] {
        // row-major over T^2: the last entry varies fastest
        let (d0, d1) = ((idx - 1) / 64, (idx - 1) % 64);
        let want = oracle.l_member(&[digit_log(d0), digit_log(d1)], cfg.lambda_log());
        assert_eq!(values(&fam.member(idx).unwrap()), want, "member {idx}");
    }
}

#[test]
fn family_l_odd_m_matches_direct_formula() {
    let cfg = config(3, 3, FamilyKind::L, 3);
    let oracle = Oracle::new(cfg.ring());
    let fam = FamilyL::new(cfg.clone()).unwrap();
    let per = 1u128 << 9;
    for idx in [1u128, 77_777, per * per * per] {
        let r = idx - 1;
        let digits = [r / (per * per), r / per % per, r % per];
        let want = oracle.l_member(&digits.map(digit_log), cfg.lambda_log());
        assert_eq!(values(&fam.member(idx).unwrap()), want, "member {idx}");
    }
}

#[test]
fn family_w_matches_direct_formula() {
    for (e, m) in [(2, 2), (3, 2)] {
        let cfg = config(e, m, FamilyKind::W, 0);
        let oracle = Oracle::new(cfg.ring());
        let fam = FamilyW::new(cfg.clone()).unwrap();
        for (i, eta) in fam.set_g().iter().enumerate().step_by(3) {
            let log = cfg.ring().teich_log(*eta).unwrap() as u64;
            for (variant, is_v) in [(HalfPeriodVariant::U, false), (HalfPeriodVariant::V, true)] {
                let got = values(&fam.member(i, variant).unwrap());
                assert_eq!(got, oracle.w_member(log, cfg.lambda_log(), is_v), "e={e} m={m} i={i} {variant:?}");
            }
        }
    }
}

#[test]
fn family_sizes() {
    assert_eq!(config(2, 2, FamilyKind::V, 1).family_size(), 17);
    assert_eq!(config(2, 3, FamilyKind::L, 1).family_size(), 65);
    assert_eq!(config(2, 3, FamilyKind::L, 2).family_size(), 4097);
    let w = config(2, 2, FamilyKind::W, 0);
    assert_eq!(w.family_size(), 16);
    assert_eq!(w.period(), 30);
    let (u, v) = gen_family_w(&w).unwrap();
    assert_eq!(u.len() + v.len(), 16);
}

#[test]
fn parameter_preconditions() {
    let ring = Arc::new(RingContext::new(2, 2).unwrap());
    let err = |kind, rho, lam| FamilyConfig::new(ring.clone(), kind, rho, lam).unwrap_err();
    assert!(matches!(err(FamilyKind::L, 3, None), quadseq::Error::Config(_)));
    assert!(matches!(err(FamilyKind::L, 2, None), quadseq::Error::Config(_)));
    assert!(matches!(err(FamilyKind::L, 0, None), quadseq::Error::Config(_)));
    assert!(matches!(err(FamilyKind::V, 2, None), quadseq::Error::Config(_)));
    // lambda must sit in GF(4) \ {0, 1}: logs 5 and 10 only
    assert!(FamilyConfig::new(ring.clone(), FamilyKind::V, 1, Some(10)).is_ok());
    assert!(FamilyConfig::new(ring.clone(), FamilyKind::V, 1, Some(3)).is_err());
    assert!(FamilyConfig::new(ring.clone(), FamilyKind::V, 1, Some(15)).is_err());
    let odd = Arc::new(RingContext::new(2, 3).unwrap());
    assert!(FamilyConfig::new(odd.clone(), FamilyKind::V, 1, None).is_err());
    assert!(FamilyConfig::new(odd, FamilyKind::W, 1, None).is_err());
}

#[test]
fn tuple_enumeration_round_trips() {
    let fam = FamilyL::new(config(2, 3, FamilyKind::L, 2)).unwrap();
    for idx in (1..=4096u128).step_by(97) {
        let t = fam.tuple_for_index(idx).unwrap();
        assert_eq!(fam.index_for_tuple(&t).unwrap(), idx);
    }
    assert!(fam.tuple_for_index(0).is_err());
    assert!(fam.tuple_for_index(4097).is_err());
    assert!(fam.member(4097).unwrap().meta.tuple.is_none());
}

#[test]
fn family_v_members_are_cyclically_distinct() {
    let fam = gen_family_l(&config(2, 2, FamilyKind::V, 1)).unwrap();
    assert!(cyclic_distinctness(&fam).unwrap().is_empty());
}

#[test]
fn family_l_n6_members_are_cyclically_distinct() {
    let fam = gen_family_l(&config(2, 3, FamilyKind::L, 1)).unwrap();
    assert_eq!(fam.len(), 65);
    assert!(cyclic_distinctness(&fam).unwrap().is_empty());
}

#[test]
fn distinctness_detects_planted_shift() {
    let mut fam = gen_family_l(&config(2, 2, FamilyKind::V, 1)).unwrap();
    let mut shifted = fam[3].clone();
    shifted.values.rotate_left(4);
    fam.push(shifted);
    let hits = cyclic_distinctness(&fam).unwrap();
    assert_eq!(hits, vec![Coincidence { first: 3, second: 17, shift: 11 }]);
}

#[test]
fn family_w_members_are_cyclically_distinct() {
    let (u, v) = gen_family_w(&config(2, 2, FamilyKind::W, 0)).unwrap();
    let all: Vec<_> = u.into_iter().chain(v).collect();
    assert!(cyclic_distinctness(&all).unwrap().is_empty());
}

#[test]
fn sequence_file_round_trip_w() {
    let cfg = config(2, 2, FamilyKind::W, 0);
    let (u, v) = gen_family_w(&cfg).unwrap();
    let all: Vec<_> = u.into_iter().chain(v).collect();
    let header = FileHeader::for_config(&cfg, all.len());
    let mut buf = Vec::new();
    write_sequence_file(&mut buf, &header, &all).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("# family=W n=4 e=2 m=2 rho=0 lambda_log=5 period=30 count=16\n0:"));
    let back = read_sequence_file(buf.as_slice()).unwrap();
    assert_eq!(back.header, header);
    let idx: Vec<usize> = back.sequences.iter().map(|(i, _)| *i).collect();
    assert_eq!(idx, (0..16).collect::<Vec<_>>());
    for (s, (_, vals)) in all.iter().zip(&back.sequences) {
        assert_eq!(&s.values, vals);
    }
}

#[test]
fn m_sequence_row_is_doubled_binary_sequence() {
    let fam = FamilyL::new(config(2, 3, FamilyKind::L, 1)).unwrap();
    let m = fam.m_sequence();
    assert!(m.iter().all(|&v| v == Z4::ZERO || v == Z4::TWO));
    assert_eq!(m.iter().filter(|&&v| v == Z4::TWO).count(), 32);
}
