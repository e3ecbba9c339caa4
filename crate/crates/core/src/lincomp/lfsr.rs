//! Shortest linear recurrence over Z4.
//!
//! A recurrence of length `L` with coefficients `c_1..c_L` reproduces a prefix
//! `s_0..s_{N-1}` when `s_t = c_1 s_{t-1} + ... + c_L s_{t-L}` for every
//! `L <= t < N`. Solvability is monotone in `L`, so the minimal length is found
//! by bisection; each probe diagonalizes the Hankel-type system over the chain
//! ring Z4 with full pivoting on 2-adic valuation.

use crate::error::{Error, Result};
use crate::ring::{Z4Poly, Z4};

/// Minimal linear recurrence of a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrResult {
    pub complexity: usize,
    /// Monic characteristic polynomial `x^L - c_1 x^(L-1) - ... - c_L`,
    /// constant term first.
    pub connection: Z4Poly,
    /// Whether the periodic driver saw the same result on 2 and 3 periods.
    /// Always `true` for plain prefix synthesis.
    pub stabilized: bool,
}

impl LfsrResult {
    /// Feedback taps `c_1..c_L`.
    pub fn taps(&self) -> Vec<Z4> {
        let coeffs = self.connection.coefficients();
        let l = self.complexity;
        (1..=l).map(|i| -coeffs[l - i]).collect()
    }

    /// Runs the recurrence from the first `L` terms of `seed` out to `len` terms.
    pub fn extend(&self, seed: &[Z4], len: usize) -> Vec<Z4> {
        let taps = self.taps();
        let l = self.complexity;
        let mut out: Vec<Z4> = seed.iter().take(l.min(len)).copied().collect();
        while out.len() < len {
            let t = out.len();
            out.push(taps.iter().enumerate().map(|(i, &c)| c * out[t - 1 - i]).sum());
        }
        out
    }
}

fn is_unit(v: u8) -> bool {
    v & 1 == 1
}

/// Solves `A c = b` over Z4, or `None` if inconsistent. `A` is row-major with `cols` columns.
pub(crate) fn solve_z4(mut a: Vec<u8>, mut b: Vec<u8>, cols: usize) -> Option<Vec<u8>> {
    let rows = b.len();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    while rank < rows.min(cols) {
        // entry of smallest 2-adic valuation in the trailing block
        let mut best: Option<(usize, usize, u8)> = None;
        'search: for i in rank..rows {
            for j in rank..cols {
                let v = a[i * cols + j];
                if v == 0 {
                    continue;
                }
                if is_unit(v) {
                    best = Some((i, j, v));
                    break 'search;
                }
                if best.is_none() {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((pi, pj, pv)) = best else { break };
        if pi != rank {
            for j in 0..cols {
                a.swap(pi * cols + j, rank * cols + j);
            }
            b.swap(pi, rank);
        }
        if pj != rank {
            for i in 0..rows {
                a.swap(i * cols + pj, i * cols + rank);
            }
            perm.swap(pj, rank);
        }
        let unit_pivot = is_unit(pv);
        if unit_pivot && pv == 3 {
            // 3 is its own inverse
            for j in rank..cols {
                a[rank * cols + j] = (a[rank * cols + j] * 3) & 3;
            }
            b[rank] = (b[rank] * 3) & 3;
        }
        for i in rank + 1..rows {
            let v = a[i * cols + rank];
            if v == 0 {
                continue;
            }
            // with a non-unit pivot every entry in the block is even
            let factor = if unit_pivot { v } else { v >> 1 };
            for j in rank..cols {
                let sub = (factor * a[rank * cols + j]) & 3;
                a[i * cols + j] = (a[i * cols + j] + 4 - sub) & 3;
            }
            b[i] = (b[i] + 4 - ((factor * b[rank]) & 3)) & 3;
        }
        pivots.push(unit_pivot);
        rank += 1;
    }
    if b[rank..].iter().any(|&v| v != 0) {
        return None;
    }
    // Back substitution; free columns get 0. A row with pivot 2 has only even
    // entries to its right, so the choice of the high bit never matters.
    let mut sol = vec![0u8; cols];
    for k in (0..rank).rev() {
        let mut rhs = b[k];
        for j in k + 1..cols {
            rhs = (rhs + 4 - ((a[k * cols + j] * sol[j]) & 3)) & 3;
        }
        if pivots[k] {
            sol[k] = rhs;
        } else {
            if rhs & 1 == 1 {
                return None;
            }
            sol[k] = rhs >> 1;
        }
    }
    let mut out = vec![0u8; cols];
    for (pos, &col) in perm.iter().enumerate() {
        out[col] = sol[pos];
    }
    Some(out)
}

fn recurrence_taps(prefix: &[Z4], len: usize) -> Option<Vec<Z4>> {
    let n = prefix.len();
    if len >= n {
        // no constraints; any taps will do
        return Some(vec![Z4::ZERO; len]);
    }
    let rows = n - len;
    let mut a = Vec::with_capacity(rows * len);
    let mut b = Vec::with_capacity(rows);
    for t in len..n {
        for i in 1..=len {
            a.push(prefix[t - i].value());
        }
        b.push(prefix[t].value());
    }
    solve_z4(a, b, len).map(|c| c.into_iter().map(Z4::new).collect())
}

fn reproduces(prefix: &[Z4], taps: &[Z4]) -> bool {
    let l = taps.len();
    (l..prefix.len()).all(|t| taps.iter().enumerate().map(|(i, &c)| c * prefix[t - 1 - i]).sum::<Z4>() == prefix[t])
}

/// Shortest linear recurrence over Z4 reproducing `prefix`.
pub fn lfsr_synthesize(prefix: &[Z4]) -> Result<LfsrResult> {
    if prefix.is_empty() {
        return Err(Error::Argument("empty prefix".into()));
    }
    let (mut lo, mut hi) = (0usize, prefix.len());
    let mut best = recurrence_taps(prefix, hi).expect("full length is unconstrained");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match recurrence_taps(prefix, mid) {
            Some(taps) => {
                hi = mid;
                best = taps;
            }
            None => lo = mid + 1,
        }
    }
    let taps = if best.len() == hi { best } else { recurrence_taps(prefix, hi).expect("bisection bound") };
    if !reproduces(prefix, &taps) {
        return Err(Error::Diagnostic(format!("length-{hi} recurrence does not reproduce its prefix")));
    }
    // x^L - c_1 x^(L-1) - ... - c_L
    let mut conn = vec![Z4::ZERO; hi + 1];
    conn[hi] = Z4::ONE;
    for (i, &c) in taps.iter().enumerate() {
        conn[hi - 1 - i] = -c;
    }
    Ok(LfsrResult { complexity: hi, connection: Z4Poly(conn), stabilized: true })
}

/// Linear complexity of a periodic sequence given one period.
///
/// Synthesizes on two periods and confirms on three.
pub fn linear_complexity_periodic(period_values: &[Z4]) -> Result<LfsrResult> {
    if period_values.is_empty() {
        return Err(Error::Argument("empty sequence".into()));
    }
    let two: Vec<Z4> = period_values.iter().chain(period_values).copied().collect();
    let three: Vec<Z4> = two.iter().chain(period_values).copied().collect();
    let first = lfsr_synthesize(&two)?;
    let second = lfsr_synthesize(&three)?;
    if first.complexity != second.complexity {
        return Err(Error::Diagnostic(format!(
            "linear complexity did not stabilize: {} on two periods, {} on three",
            first.complexity, second.complexity
        )));
    }
    Ok(LfsrResult { stabilized: true, ..second })
}
