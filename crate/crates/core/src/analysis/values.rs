//! Admissible correlation values of the `V` and `W` families.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::analysis::{CorrelationEntry, CorrelationReport};
use crate::error::{Error, Result};
use crate::Gaussian;

/// Outcome of a membership check. Passes vacuously on an empty report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSetCheck {
    pub pass: bool,
    pub checked: usize,
    pub violations: Vec<CorrelationEntry>,
}

/// Entries failing `allowed`, listed with their `(i, j, tau)`.
pub fn verify_entries(report: &CorrelationReport, allowed: impl Fn(&CorrelationEntry) -> bool) -> ValueSetCheck {
    let violations: Vec<CorrelationEntry> = report.entries.iter().filter(|e| !allowed(e)).copied().collect();
    ValueSetCheck { pass: violations.is_empty(), checked: report.len(), violations }
}

/// Every entry must lie in `allowed`.
pub fn verify_value_set(report: &CorrelationReport, allowed: &BTreeSet<Gaussian>) -> ValueSetCheck {
    verify_entries(report, |e| allowed.contains(&e.value))
}

fn half_power(n: usize, extra: usize) -> Result<i64> {
    if (n + extra) % 2 != 0 {
        return Err(Error::Config(format!(
            "2^(({n}+{extra})/2) is not an integer; exact value sets need n + e even"
        )));
    }
    Ok(1i64 << ((n + extra) / 2))
}

fn around(center: Gaussian, radii: &[i64], real: bool, imaginary: bool) -> BTreeSet<Gaussian> {
    let mut out = BTreeSet::from([center]);
    for &r in radii {
        for s in [r, -r] {
            if real {
                out.insert(center + Gaussian::real(s));
            }
            if imaginary {
                out.insert(center + Gaussian::new(0, s));
            }
        }
    }
    out
}

/// Off-peak values of family `V`:
/// `{-1, -1 +- 2^(n/2), -1 +- 2^(n/2) w, -1 +- 2^((n+e)/2), -1 +- 2^((n+e)/2) w}`.
pub fn family_v_values(n: usize, e: usize) -> Result<BTreeSet<Gaussian>> {
    let radii = [half_power(n, 0)?, half_power(n, e)?];
    Ok(around(Gaussian::real(-1), &radii, true, true))
}

/// Which halves of family `W` a correlation pairs up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WPairClass {
    UU,
    UV,
    VU,
    VV,
}

impl WPairClass {
    /// Class of member indices `i`, `j` with `u` below `half` and `v` from `half` on.
    pub fn of(i: usize, j: usize, half: usize) -> Self {
        match (i < half, j < half) {
            (true, true) => WPairClass::UU,
            (true, false) => WPairClass::UV,
            (false, true) => WPairClass::VU,
            (false, false) => WPairClass::VV,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            WPairClass::UU => "u-u",
            WPairClass::UV => "u-v",
            WPairClass::VU => "v-u",
            WPairClass::VV => "v-v",
        }
    }
}

/// Admissible values of a family-`W` correlation at shift `tau`.
///
/// Period `2(2^n - 1)`. `same_index` is whether both members come from the same
/// `eta`. Pairs `v_i, u_j` take the `u-v` values: `R_{v,u}(tau)` is the
/// conjugate of `R_{u,v}(-tau)` and those sets are closed under conjugation.
pub fn family_w_values(n: usize, e: usize, class: WPairClass, tau: usize, same_index: bool) -> Result<BTreeSet<Gaussian>> {
    let order = (1usize << n) - 1;
    let period = 2 * order;
    if tau >= period {
        return Err(Error::Argument(format!("shift {tau} outside 0..{period}")));
    }
    let radii = [2 * half_power(n, 0)?, 2 * half_power(n, e)?];
    let cross = matches!(class, WPairClass::UV | WPairClass::VU);
    let auto_center = if class == WPairClass::VV { 2 } else { -2 };
    if tau == 0 {
        return Ok(if cross {
            BTreeSet::from([Gaussian::zero()])
        } else if same_index {
            BTreeSet::from([Gaussian::real(period as i64)])
        } else {
            BTreeSet::from([Gaussian::real(-2)])
        });
    }
    if tau == order {
        return Ok(BTreeSet::from([if cross { Gaussian::zero() } else { Gaussian::real(auto_center) }]));
    }
    let center = if tau % 2 == 0 { -2 } else { auto_center };
    Ok(if cross {
        let mut s = around(Gaussian::zero(), &radii, false, true);
        s.remove(&Gaussian::zero());
        s
    } else {
        around(Gaussian::real(center), &radii, true, false)
    })
}

/// Checks a family-`W` report (member indices `0..2^n`, `u` first) value by value.
pub fn verify_family_w(report: &CorrelationReport, n: usize, e: usize) -> Result<ValueSetCheck> {
    let half = 1usize << (n - 1);
    let mut bad = Vec::new();
    for entry in &report.entries {
        let class = WPairClass::of(entry.i, entry.j, half);
        let allowed = family_w_values(n, e, class, entry.tau, entry.i % half == entry.j % half)?;
        if !allowed.contains(&entry.value) {
            bad.push(*entry);
        }
    }
    Ok(ValueSetCheck { pass: bad.is_empty(), checked: report.len(), violations: bad })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::new(re, im)
    }

    #[test]
    fn family_v_set_n4() {
        let s = family_v_values(4, 2).unwrap();
        let expect: BTreeSet<Gaussian> =
            [g(-1, 0), g(3, 0), g(-5, 0), g(-1, 4), g(-1, -4), g(7, 0), g(-9, 0), g(-1, 8), g(-1, -8)].into();
        assert_eq!(s, expect);
        assert!(family_v_values(6, 3).is_err());
    }

    #[test]
    fn family_w_sets_n4() {
        let odd_uu = family_w_values(4, 2, WPairClass::UU, 1, false).unwrap();
        assert_eq!(odd_uu, [g(-2, 0), g(6, 0), g(-10, 0), g(14, 0), g(-18, 0)].into());
        let odd_vv = family_w_values(4, 2, WPairClass::VV, 3, false).unwrap();
        assert!(odd_vv.contains(&g(2, 0)) && odd_vv.contains(&g(18, 0)));
        let even_vv = family_w_values(4, 2, WPairClass::VV, 2, false).unwrap();
        assert_eq!(even_vv, odd_uu);
        let uv = family_w_values(4, 2, WPairClass::UV, 7, false).unwrap();
        assert_eq!(uv, [g(0, 8), g(0, -8), g(0, 16), g(0, -16)].into());
        assert_eq!(family_w_values(4, 2, WPairClass::UU, 15, true).unwrap(), [g(-2, 0)].into());
        assert_eq!(family_w_values(4, 2, WPairClass::VV, 15, true).unwrap(), [g(2, 0)].into());
        assert_eq!(family_w_values(4, 2, WPairClass::VU, 15, false).unwrap(), [g(0, 0)].into());
        assert_eq!(family_w_values(4, 2, WPairClass::UU, 0, true).unwrap(), [g(30, 0)].into());
        assert_eq!(family_w_values(4, 2, WPairClass::VV, 0, false).unwrap(), [g(-2, 0)].into());
        assert!(family_w_values(4, 2, WPairClass::UU, 30, true).is_err());
    }

    #[test]
    fn empty_report_passes() {
        let r = CorrelationReport::default();
        let c = verify_value_set(&r, &BTreeSet::new());
        assert!(c.pass && c.violations.is_empty());
    }

    #[test]
    fn violations_are_listed() {
        let entries = vec![
            CorrelationEntry { i: 1, j: 2, tau: 3, value: g(-1, 0) },
            CorrelationEntry { i: 2, j: 1, tau: 4, value: g(5, 0) },
        ];
        let r = CorrelationReport::from_entries(entries);
        let c = verify_value_set(&r, &family_v_values(4, 2).unwrap());
        assert!(!c.pass);
        assert_eq!(c.violations.len(), 1);
        assert_eq!((c.violations[0].i, c.violations[0].tau), (2, 4));
    }
}
