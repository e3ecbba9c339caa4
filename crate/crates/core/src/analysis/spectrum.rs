use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::QuadSequence;
use crate::ring::Z4;
use crate::Gaussian;

fn correlate_values(a: &[Z4], b: &[Z4], tau: usize) -> Gaussian {
    let l = a.len();
    let mut counts = [0i64; 4];
    for (t, &x) in a.iter().enumerate() {
        let mut k = t + tau;
        if k >= l {
            k -= l;
        }
        counts[(x - b[k]).value() as usize] += 1;
    }
    Gaussian::new(counts[0] - counts[2], counts[1] - counts[3])
}

/// `R_{a,b}(tau) = sum_t w^(a(t) - b(t + tau))` over one period.
pub fn correlate(a: &QuadSequence, b: &QuadSequence, tau: usize) -> Result<Gaussian> {
    correlate_slices(&a.values, &b.values, tau)
}

pub fn correlate_slices(a: &[Z4], b: &[Z4], tau: usize) -> Result<Gaussian> {
    if a.len() != b.len() {
        return Err(Error::Argument(format!("period mismatch: {} vs {}", a.len(), b.len())));
    }
    if a.is_empty() || tau >= a.len() {
        return Err(Error::Argument(format!("shift {tau} outside 0..{}", a.len())));
    }
    Ok(correlate_values(a, b, tau % a.len()))
}

/// One correlation value; `i` and `j` are member indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CorrelationEntry {
    pub i: usize,
    pub j: usize,
    pub tau: usize,
    pub value: Gaussian,
}

impl CorrelationEntry {
    pub fn is_in_phase_auto(&self) -> bool {
        self.i == self.j && self.tau == 0
    }
}

/// Multiset of correlation values with histogram and maximum magnitude.
///
/// `r_max` ignores in-phase autocorrelations and is `None` when nothing else
/// was collected.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub entries: Vec<CorrelationEntry>,
    pub histogram: BTreeMap<Gaussian, u64>,
    pub r_max_norm_sqr: Option<i64>,
    pub r_max: Option<f64>,
}

impl CorrelationReport {
    pub fn from_entries(mut entries: Vec<CorrelationEntry>) -> Self {
        entries.sort_unstable();
        let mut histogram = BTreeMap::new();
        let mut best: Option<i64> = None;
        for e in &entries {
            *histogram.entry(e.value).or_insert(0) += 1;
            if !e.is_in_phase_auto() {
                let n = e.value.norm_sqr();
                best = Some(best.map_or(n, |b| b.max(n)));
            }
        }
        CorrelationReport { entries, histogram, r_max_norm_sqr: best, r_max: best.map(|n| (n as f64).sqrt()) }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries satisfying `keep`, as a new report.
    pub fn filtered(&self, keep: impl Fn(&CorrelationEntry) -> bool) -> Self {
        Self::from_entries(self.entries.iter().copied().filter(|e| keep(e)).collect())
    }

    /// Spectrum CSV: header `i,j,tau,re,im` then one row per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,tau,re,im\n");
        for e in &self.entries {
            out.push_str(&format!("{},{},{},{},{}\n", e.i, e.j, e.tau, e.value.re, e.value.im));
        }
        out
    }
}

type PairPredicate<'a> = dyn Fn(&QuadSequence, &QuadSequence, usize) -> bool + Sync + 'a;

/// Selects `(first, second, tau)` triples for a spectrum run.
pub struct PairFilter<'a> {
    pred: Box<PairPredicate<'a>>,
}

impl<'a> PairFilter<'a> {
    pub fn new(pred: impl Fn(&QuadSequence, &QuadSequence, usize) -> bool + Sync + 'a) -> Self {
        PairFilter { pred: Box::new(pred) }
    }

    pub fn all() -> Self {
        Self::new(|_, _, _| true)
    }

    pub fn none() -> Self {
        Self::new(|_, _, _| false)
    }

    /// Everything except the in-phase autocorrelations.
    pub fn nontrivial() -> Self {
        Self::new(|a, b, tau| !(tau == 0 && a.meta.index == b.meta.index))
    }

    pub fn accepts(&self, a: &QuadSequence, b: &QuadSequence, tau: usize) -> bool {
        (self.pred)(a, b, tau)
    }
}

/// All correlations accepted by `filter`, computed in parallel over pairs.
pub fn full_spectrum(family: &[QuadSequence], filter: &PairFilter<'_>) -> Result<CorrelationReport> {
    let Some(first) = family.first() else {
        return Ok(CorrelationReport::default());
    };
    let period = first.period();
    if family.iter().any(|s| s.period() != period) {
        return Err(Error::Argument("family has mixed periods".into()));
    }
    let entries: Vec<CorrelationEntry> = (0..family.len() * family.len())
        .into_par_iter()
        .flat_map_iter(|p| {
            let (a, b) = (&family[p / family.len()], &family[p % family.len()]);
            (0..period).filter(|&tau| filter.accepts(a, b, tau)).map(move |tau| CorrelationEntry {
                i: a.meta.index,
                j: b.meta.index,
                tau,
                value: correlate_values(&a.values, &b.values, tau),
            })
        })
        .collect();
    Ok(CorrelationReport::from_entries(entries))
}

/// Correlations at `samples` distinct pseudorandom `(i, j, tau)` triples drawn
/// from those accepted by `filter`. Deterministic for a given seed.
///
/// `member` produces the sequence at a position in `0..family_size`.
pub fn sampled_spectrum<F>(
    family_size: usize,
    period: usize,
    member: F,
    filter: &PairFilter<'_>,
    samples: usize,
    seed: u64,
) -> Result<CorrelationReport>
where
    F: Fn(usize) -> Result<QuadSequence> + Sync,
{
    let total = family_size as u128 * family_size as u128 * period as u128;
    if total == 0 {
        return Ok(CorrelationReport::default());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples: Vec<(usize, usize, usize)> = Vec::with_capacity(samples);
    if total <= usize::MAX as u128 && total as usize <= 4 * samples {
        for flat in sample(&mut rng, total as usize, samples.min(total as usize)).into_iter() {
            let (p, tau) = (flat / period, flat % period);
            triples.push((p / family_size, p % family_size, tau));
        }
    } else {
        let mut seen = std::collections::HashSet::new();
        while triples.len() < samples {
            let t = (rng.gen_range(0..family_size), rng.gen_range(0..family_size), rng.gen_range(0..period));
            if seen.insert(t) {
                triples.push(t);
            }
        }
    }
    let entries: Vec<Option<CorrelationEntry>> = triples
        .par_iter()
        .map(|&(i, j, tau)| -> Result<Option<CorrelationEntry>> {
            let a = member(i)?;
            let b = member(j)?;
            if a.period() != period || b.period() != period {
                return Err(Error::Argument("member period differs from the declared period".into()));
            }
            if !filter.accepts(&a, &b, tau) {
                return Ok(None);
            }
            Ok(Some(CorrelationEntry { i: a.meta.index, j: b.meta.index, tau, value: correlate_values(&a.values, &b.values, tau) }))
        })
        .collect::<Result<_>>()?;
    Ok(CorrelationReport::from_entries(entries.into_iter().flatten().collect()))
}
