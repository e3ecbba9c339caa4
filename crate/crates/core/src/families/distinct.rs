use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::QuadSequence;

/// `first` equals `second` cyclically shifted left by `shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coincidence {
    pub first: usize,
    pub second: usize,
    pub shift: usize,
}

/// Brute-force cyclic-distinctness check.
///
/// Reports every `(i, j, tau)` with `s_i(t) = s_j(t + tau)` for all `t`, where
/// `i < j`, or `i == j` and `tau != 0`. Positions, not member indices, are reported.
pub fn cyclic_distinctness(family: &[QuadSequence]) -> Result<Vec<Coincidence>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let period = first.period();
    if let Some(bad) = family.iter().find(|s| s.period() != period) {
        return Err(Error::Argument(format!("mixed periods {period} and {}", bad.period())));
    }
    let mut found = Vec::new();
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i) {
            for shift in 0..period {
                if i == j && shift == 0 {
                    continue;
                }
                if (0..period).all(|t| a.values[t] == b.values[(t + shift) % period]) {
                    found.push(Coincidence { first: i, second: j, shift });
                }
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilyKind, SequenceMeta};
    use crate::ring::Z4;

    fn seq(v: &[u8]) -> QuadSequence {
        QuadSequence {
            values: v.iter().map(|&x| Z4::new(x)).collect(),
            meta: SequenceMeta { kind: FamilyKind::L, index: 0, tuple: None },
        }
    }

    #[test]
    fn detects_shifted_duplicate() {
        let fam = vec![seq(&[0, 1, 2]), seq(&[3, 3, 1]), seq(&[2, 0, 1])];
        let found = cyclic_distinctness(&fam).unwrap();
        assert_eq!(found, vec![Coincidence { first: 0, second: 2, shift: 1 }]);
    }

    #[test]
    fn detects_short_internal_period() {
        let found = cyclic_distinctness(&[seq(&[1, 2, 1, 2])]).unwrap();
        assert_eq!(found, vec![Coincidence { first: 0, second: 0, shift: 2 }]);
    }

    #[test]
    fn mixed_periods_rejected() {
        assert!(matches!(cyclic_distinctness(&[seq(&[1, 2]), seq(&[1, 2, 3])]), Err(Error::Argument(_))));
        assert!(cyclic_distinctness(&[]).unwrap().is_empty());
    }
}
