//! The exponential sum that splits family-`W` correlations into halves.

use serde::{Deserialize, Serialize};

use crate::analysis::WPairClass;
use crate::error::{Error, Result};
use crate::families::FamilyW;
use crate::ring::{RingElement, Z4};
use crate::Gaussian;

/// `sum_{x in G_C} w^(Tr[(1 + 2 g1 - (1 + 2 g2) d) x] + 2(P(lambda x) + P(lambda d x)))`
/// over the `2^n - 1` Teichmuller units, for a unit `d = beta^delta_log`.
pub fn varsigma(family: &FamilyW, gamma1: RingElement, gamma2: RingElement, delta_log: i64) -> Gaussian {
    let ring = family.config().ring();
    let p = family.p_function();
    let lam = family.config().lambda_log() as i64;
    let delta = ring.beta_pow(delta_log);
    let c = RingElement::ONE + gamma1.double() - ring.mul(RingElement::ONE + gamma2.double(), delta);
    (0..ring.order() as i64)
        .map(|k| {
            let x = ring.beta_pow(k);
            let exp = ring.abs_trace(ring.mul(c, x)) + Z4::TWO * (p.at_beta_pow(lam + k) + p.at_beta_pow(lam + delta_log + k));
            Gaussian::unit(exp)
        })
        .sum()
}

/// The same sum taken over all of T, i.e. with the `x = 0` term added.
pub fn varsigma_over_t(family: &FamilyW, gamma1: RingElement, gamma2: RingElement, delta_log: i64) -> Gaussian {
    varsigma(family, gamma1, gamma2, delta_log) + Gaussian::real(1)
}

/// Two sums whose combination gives one family-`W` correlation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WDecomposition {
    /// Sum collecting the even positions `t`.
    pub even_part: Gaussian,
    /// Sum collecting the odd positions `t`.
    pub odd_part: Gaussian,
    pub value: Gaussian,
}

/// Rebuilds `R(tau)` between `W` members `i`, `j` (indices into G) from two
/// `varsigma` sums over the units.
///
/// With `h = 2^(n-1)` and `eta` the members of G:
/// odd `tau = 2 t0 + 1` uses `d = beta^(t0 + h)` with argument pairs
/// `(eta_i, eta_j + 1)` on even `t` and `(eta_i + 1, eta_j)` on odd `t`;
/// even `tau = 2 t0` uses `d = beta^t0` with `(eta_i, eta_j)` and
/// `(eta_i + 1, eta_j + 1)`. A `v` side negates the even-position half it owns.
pub fn decompose_w_correlation(family: &FamilyW, i: usize, j: usize, class: WPairClass, tau: usize) -> Result<WDecomposition> {
    let g = family.set_g();
    let (Some(&ei), Some(&ej)) = (g.get(i), g.get(j)) else {
        return Err(Error::Argument(format!("W member index outside 0..{}", g.len())));
    };
    let order = family.config().ring().order();
    if tau >= 2 * order {
        return Err(Error::Argument(format!("shift {tau} outside 0..{}", 2 * order)));
    }
    let one = RingElement::ONE;
    let t0 = (tau / 2) as i64;
    let (even_args, odd_args, d) = if tau % 2 == 1 {
        ((ei, ej + one), (ei + one, ej), t0 + family.half_shift())
    } else {
        ((ei, ej), (ei + one, ej + one), t0)
    };
    let mut even_part = varsigma(family, even_args.0, even_args.1, d);
    let mut odd_part = varsigma(family, odd_args.0, odd_args.1, d);
    // a +2 at an even position of either side flips the sign of that term
    let u_i = matches!(class, WPairClass::UU | WPairClass::UV);
    let u_j = matches!(class, WPairClass::UU | WPairClass::VU);
    let j_even_on_even_t = tau % 2 == 0;
    let mut flip_even = !u_i;
    let mut flip_odd = false;
    if !u_j {
        if j_even_on_even_t {
            flip_even = !flip_even;
        } else {
            flip_odd = true;
        }
    }
    if flip_even {
        even_part = -even_part;
    }
    if flip_odd {
        odd_part = -odd_part;
    }
    Ok(WDecomposition { even_part, odd_part, value: even_part + odd_part })
}
