//! Uniform access to generated or loaded families, plus workload budgets.

use std::path::Path;

use quadseq::analysis::{full_spectrum, sampled_spectrum, CorrelationReport, PairFilter};
use quadseq::families::{classify_span, BValueConvention, FamilyConfig, FamilyKind, FamilyL, FamilyW, HalfPeriodVariant, QuadSequence};
use quadseq::lincomp::{span_formula_l, span_formula_w};

use crate::error::CliError;
use crate::setup::{build_config, load_family};
use crate::{Params, Sampling};

/// Largest number of `(i, j, tau)` triples computed exhaustively.
pub const SPECTRUM_BUDGET: u128 = 1 << 22;
/// Largest `members * (2 * period)^3` for exhaustive linear-complexity runs.
pub const LINCOMP_BUDGET: u128 = 1 << 34;
/// Sample count used for L-family spectra with n >= 6 and rho >= 2.
pub const DEFAULT_L_SAMPLES: u64 = 10_000;

enum Source {
    L(FamilyL),
    W(FamilyW),
    Loaded(Vec<QuadSequence>),
}

pub struct Family {
    pub config: FamilyConfig,
    source: Source,
    // tuple lookup for span classes of L-type members
    tuples: Option<FamilyL>,
}

impl Family {
    pub fn generate(config: FamilyConfig) -> Result<Self, CliError> {
        let source = match config.kind() {
            FamilyKind::L | FamilyKind::V => Source::L(FamilyL::new(config.clone())?),
            FamilyKind::W => Source::W(FamilyW::new(config.clone())?),
        };
        Self::with_source(config, source)
    }

    fn with_source(config: FamilyConfig, source: Source) -> Result<Self, CliError> {
        let tuples = match config.kind() {
            FamilyKind::L | FamilyKind::V => Some(FamilyL::new(config.clone())?),
            FamilyKind::W => None,
        };
        Ok(Family { config, source, tuples })
    }

    pub fn from_params(params: &Params, default: FamilyKind) -> Result<Self, CliError> {
        let (e, m) = params.ring_dims()?;
        Self::generate(build_config(e, m, params.family_or(default), params.rho, params.lambda_log)?)
    }

    /// From `--input` when given, otherwise from the generation parameters.
    pub fn from_input_or_params(input: Option<&Path>, params: &Params) -> Result<Self, CliError> {
        match input {
            Some(path) => {
                let loaded = load_family(path)?;
                Self::with_source(loaded.config, Source::Loaded(loaded.sequences))
            }
            None => {
                let kind = params.family.ok_or_else(|| CliError::Config("--family or --input is required".into()))?;
                let (e, m) = params.ring_dims()?;
                Self::generate(build_config(e, m, kind, params.rho, params.lambda_log)?)
            }
        }
    }

    pub fn size(&self) -> u128 {
        match &self.source {
            Source::Loaded(seqs) => seqs.len() as u128,
            _ => self.config.family_size(),
        }
    }

    pub fn period(&self) -> usize {
        self.config.period()
    }

    /// Member at position `pos` in `0..size`.
    pub fn member_at(&self, pos: usize) -> quadseq::Result<QuadSequence> {
        match &self.source {
            Source::L(f) => f.member(pos as u128 + 1),
            Source::W(f) => {
                let half = f.half_count();
                if pos < half {
                    f.member(pos, HalfPeriodVariant::U)
                } else {
                    f.member(pos - half, HalfPeriodVariant::V)
                }
            }
            Source::Loaded(seqs) => seqs
                .get(pos)
                .cloned()
                .ok_or_else(|| quadseq::Error::Argument(format!("member {pos} outside 0..{}", seqs.len()))),
        }
    }

    pub fn all_members(&self) -> Result<Vec<QuadSequence>, CliError> {
        Ok(match &self.source {
            Source::L(f) => f.members()?,
            Source::W(f) => {
                let (mut u, v) = f.members()?;
                u.extend(v);
                u
            }
            Source::Loaded(seqs) => seqs.clone(),
        })
    }

    /// Index of the m-sequence row for L-type families.
    pub fn m_sequence_index(&self) -> Option<usize> {
        match self.config.kind() {
            FamilyKind::L | FamilyKind::V => usize::try_from(self.config.family_size()).ok(),
            FamilyKind::W => None,
        }
    }

    /// Predicted linear span of the member with file index `index`.
    pub fn span_formula(&self, index: usize) -> Result<u64, CliError> {
        let ring = self.config.ring();
        let (n, e, m) = (ring.n(), ring.e(), ring.m());
        match self.config.kind() {
            FamilyKind::W => {
                let variant = if index < 1 << (n - 1) { HalfPeriodVariant::U } else { HalfPeriodVariant::V };
                Ok(span_formula_w(n, e, variant)?)
            }
            FamilyKind::L | FamilyKind::V => {
                if Some(index) == self.m_sequence_index() {
                    return Ok(n as u64);
                }
                let gen = self.tuples.as_ref().expect("L-type families carry a tuple lookup");
                let tuple = gen.tuple_for_index(index as u128)?;
                let class = classify_span(&tuple, &self.config, BValueConvention::default())?;
                debug_assert_eq!(
                    class.linear_span,
                    span_formula_l(n, e, m, self.config.rho(), class.j, class.l)?
                );
                Ok(class.linear_span)
            }
        }
    }

    /// Exhaustive spectrum within budget, otherwise a seeded sample.
    ///
    /// Returns the report and the sample count used, if any.
    pub fn spectrum(&self, filter: &PairFilter<'_>, sampling: &Sampling) -> Result<(CorrelationReport, Option<u64>), CliError> {
        let triples = self.size() * self.size() * self.period() as u128;
        let samples = match sampling.samples {
            Some(s) => Some(s),
            None if triples <= SPECTRUM_BUDGET => None,
            None if self.default_sampled() => Some(DEFAULT_L_SAMPLES),
            None => {
                return Err(CliError::Config(format!(
                    "an exhaustive spectrum needs {triples} correlations (budget {SPECTRUM_BUDGET}); \
                     pass --samples N (for example --samples {DEFAULT_L_SAMPLES}) to sample instead"
                )))
            }
        };
        match samples {
            None => Ok((full_spectrum(&self.all_members()?, filter)?, None)),
            Some(s) => {
                let size = usize::try_from(self.size())
                    .map_err(|_| CliError::Config(format!("family of {} members is too large to index", self.size())))?;
                let s = usize::try_from(s).map_err(|_| CliError::Config("--samples is too large".into()))?;
                if s as u128 > triples {
                    return Err(CliError::Config(format!("--samples {s} exceeds the {triples} available triples")));
                }
                let report = sampled_spectrum(size, self.period(), |p| self.member_at(p), filter, s, sampling.seed)?;
                Ok((report, Some(s as u64)))
            }
        }
    }

    fn default_sampled(&self) -> bool {
        let ring = self.config.ring();
        self.config.kind() == FamilyKind::L && ring.n() >= 6 && self.config.rho() >= 2
    }

    /// Members for a linear-complexity run: all of them within budget,
    /// otherwise `--samples` distinct seeded positions.
    pub fn lincomp_positions(&self, sampling: &Sampling) -> Result<(Vec<usize>, bool), CliError> {
        let size = self.size();
        let cost = size * (2 * self.period() as u128).pow(3);
        match sampling.samples {
            None if cost <= LINCOMP_BUDGET => Ok(((0..size as usize).collect(), false)),
            None => Err(CliError::Config(format!(
                "measuring all {size} members exceeds the linear-complexity budget; pass --samples N"
            ))),
            Some(s) => {
                use rand::seq::index::sample;
                use rand::SeedableRng;
                let size = usize::try_from(size).map_err(|_| CliError::Config("family too large to sample".into()))?;
                let s = (s as usize).min(size);
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(sampling.seed);
                let mut picked = sample(&mut rng, size, s).into_vec();
                picked.sort_unstable();
                Ok((picked, true))
            }
        }
    }
}
