use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use quadseq::analysis::{bound_theorem1, count_l_kernel, KernelEquation, KernelInterpretation, PairFilter, SpectrumSummary};
use quadseq::families::{select_lambda, write_sequence_file, FamilyKind, FileHeader, HalfPeriodVariant};
use quadseq::lincomp::{linear_complexity_periodic, span_formula_w};
use quadseq::ring::{FieldElement, RingContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::family::Family;
use crate::setup::build_ring;
use crate::{Format, Params, Sampling};

/// Largest `rows * 2^n` equation evaluations for a kernel table.
const KERNEL_BUDGET: u128 = 1 << 28;

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|err| CliError::Io(format!("cannot write {}: {err}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).map_err(|err| CliError::Io(err.to_string()))
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn saturating_u64(v: u128) -> u64 {
    u64::try_from(v).unwrap_or(u64::MAX)
}

/// Ring and family parameters as report metadata.
pub fn param_map(family: &Family) -> BTreeMap<String, u64> {
    let cfg = &family.config;
    let ring = cfg.ring();
    let rho = if cfg.kind() == FamilyKind::W { 0 } else { cfg.rho() };
    [
        ("n", ring.n() as u64),
        ("e", ring.e() as u64),
        ("m", ring.m() as u64),
        ("rho", rho as u64),
        ("lambda_log", cfg.lambda_log()),
        ("period", cfg.period() as u64),
        ("size", saturating_u64(family.size())),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

pub fn generate(params: &Params, out: Option<&Path>) -> Result<(), CliError> {
    let kind = params.family.ok_or_else(|| CliError::Config("--family is required".into()))?;
    let family = Family::from_params(params, kind)?;
    let members = family.all_members()?;
    let header = FileHeader::for_config(&family.config, members.len());
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|err| CliError::Io(format!("cannot create {}: {err}", path.display())))?;
            write_sequence_file(BufWriter::new(file), &header, &members)?;
        }
        None => write_sequence_file(std::io::stdout().lock(), &header, &members)?,
    }
    let cfg = &family.config;
    let ring = cfg.ring();
    let mut summary = format!(
        "family={} n={} e={} m={} rho={} lambda_log={} period={} size={}",
        cfg.kind(),
        ring.n(),
        ring.e(),
        ring.m(),
        header.rho,
        cfg.lambda_log(),
        cfg.period(),
        members.len()
    );
    if cfg.kind() != FamilyKind::W {
        summary.push_str(&format!(" bound={:.3}", bound_theorem1(ring.n(), ring.e(), cfg.rho())));
    }
    // keep stdout clean when it carries the sequence file
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

pub fn spectrum(params: &Params, input: Option<&Path>, sampling: &Sampling, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let family = Family::from_input_or_params(input, params)?;
    let (report, samples) = family.spectrum(&PairFilter::all(), sampling)?;
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => {
            let mut meta = param_map(&family);
            if let Some(s) = samples {
                meta.insert("samples".into(), s);
                meta.insert("seed".into(), sampling.seed);
            }
            to_json(&SpectrumSummary::new(family.config.kind().to_string(), meta, &report, Vec::new()))?
        }
    };
    emit(out, &text)
}

#[derive(Clone, Debug, Serialize)]
pub struct LincompRow {
    pub index: usize,
    pub measured: usize,
    pub formula: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Measured linear complexity against the formula for the selected members.
pub fn lincomp_rows(family: &Family, positions: &[usize]) -> Result<Vec<LincompRow>, CliError> {
    positions
        .par_iter()
        .map(|&pos| {
            let seq = family.member_at(pos)?;
            let measured = linear_complexity_periodic(&seq.values)?.complexity;
            let formula = family.span_formula(seq.meta.index)?;
            Ok(LincompRow { index: seq.meta.index, measured, formula, matches: measured as u64 == formula })
        })
        .collect()
}

pub fn lincomp(params: &Params, input: Option<&Path>, sampling: &Sampling, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let family = Family::from_input_or_params(input, params)?;
    let (positions, _) = family.lincomp_positions(sampling)?;
    let rows = lincomp_rows(&family, &positions)?;
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("index,measured,formula,match\n");
            for r in &rows {
                s.push_str(&format!("{},{},{},{}\n", r.index, r.measured, r.formula, r.matches));
            }
            s
        }
    };
    emit(out, &text)?;
    let bad = rows.iter().filter(|r| !r.matches).count();
    if bad > 0 {
        return Err(CliError::Failed(format!("{bad} of {} members differ from the span formula", rows.len())));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelRow {
    pub eta_set: usize,
    pub delta_log: usize,
    pub count: u64,
    /// Trace criterion for a `2^e`-root kernel; only for `rho = 1`, even `m`, `delta != 1`.
    pub large_predicted: Option<bool>,
}

#[derive(Serialize)]
struct KernelTable {
    params: BTreeMap<String, u64>,
    interpretation: String,
    /// Integer encodings of `eta_1..eta_(rho-1)` for each eta set.
    etas: Vec<Vec<u32>>,
    /// Root count -> number of rows.
    counts: BTreeMap<u64, u64>,
    rows: Vec<KernelRow>,
}

/// Root counts for `delta = alpha^k`, `k` in `0..2^n-1`, for each eta set.
pub fn kernel_rows(
    ring: &RingContext,
    lambda: FieldElement,
    eta_sets: &[Vec<FieldElement>],
    interpretation: KernelInterpretation,
) -> Result<Vec<KernelRow>, CliError> {
    let field = ring.field();
    let predict = eta_sets.iter().all(|s| s.is_empty()) && ring.m() % 2 == 0;
    let mut rows = Vec::new();
    for (set, etas) in eta_sets.iter().enumerate() {
        let part: Vec<KernelRow> = (0..ring.order())
            .into_par_iter()
            .map(|k| {
                let delta = field.exp_of(k as i64);
                let count = count_l_kernel(field, ring.e(), delta, lambda, etas, interpretation)?;
                let large_predicted = if predict {
                    KernelEquation::new(field, ring.e(), delta, lambda, Vec::new())?.predicts_large_kernel()
                } else {
                    None
                };
                Ok(KernelRow { eta_set: set, delta_log: k, count, large_predicted })
            })
            .collect::<Result<_, CliError>>()?;
        rows.extend(part);
    }
    Ok(rows)
}

pub fn kernel_count(
    params: &Params,
    sampling: &Sampling,
    interpretation: KernelInterpretation,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (e, m) = params.ring_dims()?;
    let ring = build_ring(e, m)?;
    let n = ring.n();
    if params.rho < 1 || params.rho >= n / 2 {
        return Err(CliError::Config(format!("need 1 <= rho < floor(n/2) = {}, got rho = {}", n / 2, params.rho)));
    }
    let (lambda, lambda_log) = select_lambda(&ring, params.lambda_log)?;
    let eta_sets: Vec<Vec<FieldElement>> = if params.rho == 1 {
        vec![Vec::new()]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        (0..sampling.samples.unwrap_or(1))
            .map(|_| (1..params.rho).map(|_| FieldElement(rng.gen_range(0..1u32 << n))).collect())
            .collect()
    };
    let work = eta_sets.len() as u128 * ring.order() as u128 * (1u128 << n);
    if work > KERNEL_BUDGET {
        return Err(CliError::Config(format!(
            "kernel table needs {work} evaluations (budget {KERNEL_BUDGET}); use a smaller n or fewer --samples"
        )));
    }
    let rows = kernel_rows(&ring, lambda.project(), &eta_sets, interpretation)?;
    let text = match format {
        Format::Csv => {
            let mut s = String::from("eta_set,delta_log,count,large_predicted\n");
            for r in &rows {
                let pred = r.large_predicted.map_or(String::new(), |p| p.to_string());
                s.push_str(&format!("{},{},{},{}\n", r.eta_set, r.delta_log, r.count, pred));
            }
            s
        }
        Format::Json => {
            let mut counts = BTreeMap::new();
            for r in &rows {
                *counts.entry(r.count).or_insert(0) += 1;
            }
            let params = [("n", n as u64), ("e", e as u64), ("m", m as u64), ("rho", params.rho as u64), ("lambda_log", lambda_log)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            to_json(&KernelTable {
                params,
                interpretation: format!("{interpretation:?}").to_lowercase(),
                etas: eta_sets.iter().map(|s| s.iter().map(|y| y.0).collect()).collect(),
                counts,
                rows,
            })?
        }
    };
    emit(out, &text)
}

#[derive(Serialize)]
struct FamilyInfo {
    family: String,
    rho: usize,
    period: usize,
    size: u128,
    /// Bound on every nontrivial `|R|` (L-type families).
    max_correlation_bound: Option<f64>,
    /// Predicted linear spans: the m-sequence row for L-type families, `u`/`v` for W.
    spans: BTreeMap<String, u64>,
}

#[derive(Serialize)]
struct RingInfo {
    n: usize,
    e: usize,
    m: usize,
    binary_poly: String,
    lifted_poly: String,
    ring_size: u128,
    unit_group_order: usize,
    lambda_log: u64,
    lambda: String,
    families: Vec<FamilyInfo>,
}

pub fn ring_info(params: &Params, out: Option<&Path>) -> Result<(), CliError> {
    let (e, m) = params.ring_dims()?;
    let ring = build_ring(e, m)?;
    let n = ring.n();
    let (lambda, lambda_log) = select_lambda(&ring, params.lambda_log)?;
    let mut families = Vec::new();
    if params.rho >= 1 && params.rho < n / 2 {
        families.push(FamilyInfo {
            family: "L".into(),
            rho: params.rho,
            period: ring.order(),
            size: (1u128 << (n * params.rho)) + 1,
            max_correlation_bound: Some(bound_theorem1(n, e, params.rho)),
            spans: BTreeMap::from([("m_sequence".to_string(), n as u64)]),
        });
    }
    if m % 2 == 0 {
        families.push(FamilyInfo {
            family: "V".into(),
            rho: 1,
            period: ring.order(),
            size: (1u128 << n) + 1,
            max_correlation_bound: Some(bound_theorem1(n, e, 1)),
            spans: BTreeMap::from([("m_sequence".to_string(), n as u64)]),
        });
        families.push(FamilyInfo {
            family: "W".into(),
            rho: 0,
            period: 2 * ring.order(),
            size: 1u128 << n,
            max_correlation_bound: None,
            spans: BTreeMap::from([
                ("u".to_string(), span_formula_w(n, e, HalfPeriodVariant::U)?),
                ("v".to_string(), span_formula_w(n, e, HalfPeriodVariant::V)?),
            ]),
        });
    }
    let info = RingInfo {
        n,
        e,
        m,
        binary_poly: ring.binary_poly().to_string(),
        lifted_poly: ring.lifted_poly().to_string(),
        ring_size: 1u128 << (2 * n),
        unit_group_order: ring.order(),
        lambda_log,
        lambda: ring.format_element(lambda),
        families,
    };
    emit(out, &to_json(&info)?)
}
