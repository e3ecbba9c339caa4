use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::families::PFunction;
use crate::ring::{RingContext, RingElement, Z4};

/// Result of checking `2P(x) + 2P(y) + 2P(x+y) = 2Tr[y(x + Tr_e^n(x))]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub checked: u64,
    /// Offending pairs as coefficient strings.
    pub violations: Vec<(String, String)>,
}

impl IdentityCheck {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether the polarization identity of `P` holds at `(x, y)`.
pub fn p_identity_holds(ring: &RingContext, p: &PFunction, x: RingElement, y: RingElement) -> bool {
    let lhs = Z4::TWO * (p.eval(ring, x) + p.eval(ring, y) + p.eval(ring, x + y));
    let rhs = Z4::TWO * ring.abs_trace(ring.mul(y, x + ring.trace_rel(x)));
    lhs == rhs
}

fn collect(ring: &RingContext, p: &PFunction, pairs: impl ParallelIterator<Item = (RingElement, RingElement)>) -> IdentityCheck {
    let (checked, mut violations) = pairs
        .map(|(x, y)| {
            if p_identity_holds(ring, p, x, y) {
                (1u64, Vec::new())
            } else {
                (1, vec![(ring.format_element(x), ring.format_element(y))])
            }
        })
        .reduce(|| (0, Vec::new()), |(a, mut va), (b, vb)| {
            va.extend(vb);
            (a + b, va)
        });
    violations.sort();
    IdentityCheck { checked, violations }
}

/// All `4^(2n)` pairs.
pub fn check_p_identity_exhaustive(ring: &RingContext) -> IdentityCheck {
    let p = PFunction::new(ring);
    let elems: Vec<RingElement> = ring.elements().collect();
    let pairs = elems.par_iter().flat_map_iter(|&x| elems.iter().map(move |&y| (x, y)));
    collect(ring, &p, pairs)
}

/// `samples` seeded pseudorandom pairs.
pub fn check_p_identity_sampled(ring: &RingContext, samples: u64, seed: u64) -> IdentityCheck {
    let p = PFunction::new(ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ring.n();
    let mut random = || {
        let coeffs: Vec<Z4> = (0..n).map(|_| Z4::new(rng.gen_range(0..4))).collect();
        ring.element_from_coeffs(&coeffs).expect("n coefficients")
    };
    let pairs: Vec<(RingElement, RingElement)> = (0..samples).map(|_| (random(), random())).collect();
    collect(ring, &p, pairs.into_par_iter())
}
