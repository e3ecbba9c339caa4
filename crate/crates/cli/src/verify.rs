//! `verify --suite ...`: property checks with a JSON report.

use std::collections::BTreeMap;
use std::path::Path;

use quadseq::analysis::{
    bound_theorem1, check_l_bounds, check_p_identity_exhaustive, check_p_identity_sampled, family_v_values,
    verify_family_w, verify_value_set, CorrelationEntry, CorrelationReport, KernelInterpretation, PairFilter,
    ValueSetCheck, WPairClass,
};
use quadseq::families::{cyclic_distinctness, select_lambda, FamilyKind};
use quadseq::lincomp::linear_complexity_periodic;
use quadseq::Gaussian;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{emit, kernel_rows, lincomp_rows, param_map, to_json};
use crate::error::CliError;
use crate::family::Family;
use crate::setup::build_ring;
use crate::{Params, Sampling, Suite};

/// Violations listed per check; the total is always reported.
const MAX_LISTED: usize = 100;
/// Largest `16^n` for an exhaustive identity check.
const IDENTITY_BUDGET: u128 = 1 << 24;
/// Largest `members^2 * period` for an exhaustive distinctness check.
const DISTINCT_BUDGET: u128 = 1 << 28;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Value>,
    pub notes: Vec<String>,
}

impl Check {
    fn new(name: &str, checked: u64, violations: Vec<Value>) -> Self {
        let violation_count = violations.len() as u64;
        let mut violations = violations;
        violations.truncate(MAX_LISTED);
        Check { name: name.into(), pass: violation_count == 0, checked, violation_count, violations, notes: Vec::new() }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Serialize)]
struct SamplingInfo {
    samples: u64,
    seed: u64,
}

#[derive(Serialize)]
struct Report {
    suite: String,
    pass: bool,
    params: BTreeMap<String, u64>,
    sampling: Option<SamplingInfo>,
    checks: Vec<Check>,
}

fn entry_json(e: &CorrelationEntry) -> Value {
    json!({ "i": e.i, "j": e.j, "tau": e.tau, "re": e.value.re, "im": e.value.im })
}

fn value_check(name: &str, check: &ValueSetCheck) -> Check {
    Check::new(name, check.checked as u64, check.violations.iter().map(entry_json).collect())
}

fn require_kind(params: &Params, kind: FamilyKind, suite: Suite) -> Result<(), CliError> {
    match params.family {
        Some(k) if k != kind => Err(CliError::Config(format!("suite {suite:?} applies to family {kind}, not {k}"))),
        _ => Ok(()),
    }
}

fn sampling_info(samples: Option<u64>, sampling: &Sampling) -> Option<SamplingInfo> {
    samples.map(|samples| SamplingInfo { samples, seed: sampling.seed })
}

struct Outcome {
    params: BTreeMap<String, u64>,
    samples: Option<u64>,
    checks: Vec<Check>,
}

fn ring_params(e: usize, m: usize) -> BTreeMap<String, u64> {
    BTreeMap::from([("n".to_string(), (e * m) as u64), ("e".to_string(), e as u64), ("m".to_string(), m as u64)])
}

fn eq2(params: &Params, sampling: &Sampling) -> Result<Outcome, CliError> {
    let (e, m) = params.ring_dims()?;
    let ring = build_ring(e, m)?;
    let pairs = 1u128 << (4 * ring.n());
    let (result, samples) = match sampling.samples {
        None if pairs <= IDENTITY_BUDGET => (check_p_identity_exhaustive(&ring), None),
        None => {
            return Err(CliError::Config(format!(
                "{pairs} pairs exceed the exhaustive budget {IDENTITY_BUDGET}; pass --samples N"
            )))
        }
        Some(s) => (check_p_identity_sampled(&ring, s, sampling.seed), Some(s)),
    };
    let violations = result.violations.iter().map(|(x, y)| json!({ "x": x, "y": y })).collect();
    let check = Check::new("2P(x)+2P(y)+2P(x+y) = 2Tr[y(x+Tr_e(x))]", result.checked, violations);
    Ok(Outcome { params: ring_params(e, m), samples, checks: vec![check] })
}

fn lemma1(params: &Params, sampling: &Sampling) -> Result<Outcome, CliError> {
    let family = Family::from_params(params, FamilyKind::L)?;
    let cost = family.size() * family.size() * family.period() as u128;
    let mut samples = None;
    let (checked, found) = match sampling.samples {
        None if cost <= DISTINCT_BUDGET => {
            let members = family.all_members()?;
            let found: Vec<Value> = cyclic_distinctness(&members)?
                .into_iter()
                .map(|c| json!({ "i": members[c.first].meta.index, "j": members[c.second].meta.index, "shift": c.shift }))
                .collect();
            (family.size() * (family.size() + 1) / 2, found)
        }
        None => {
            return Err(CliError::Config(format!(
                "pairwise comparison of {} members exceeds the exhaustive budget; pass --samples N to check random pairs",
                family.size()
            )))
        }
        Some(s) => {
            samples = Some(s);
            let size = usize::try_from(family.size()).map_err(|_| CliError::Config("family too large to sample".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
            let mut found = Vec::new();
            for _ in 0..s {
                let (a, b) = (rng.gen_range(0..size), rng.gen_range(0..size));
                let (a, b) = (a.min(b), a.max(b));
                let pair = if a == b { vec![family.member_at(a)?] } else { vec![family.member_at(a)?, family.member_at(b)?] };
                for c in cyclic_distinctness(&pair)? {
                    found.push(json!({ "i": pair[c.first].meta.index, "j": pair[c.second].meta.index, "shift": c.shift }));
                }
            }
            (u128::from(s), found)
        }
    };
    let check = Check::new("members are cyclically distinct", checked as u64, found);
    Ok(Outcome { params: param_map(&family), samples, checks: vec![check] })
}

fn theorem1(params: &Params, sampling: &Sampling) -> Result<Outcome, CliError> {
    let family = Family::from_params(params, FamilyKind::L)?;
    if family.config.kind() == FamilyKind::W {
        return Err(CliError::Config("correlation bounds apply to families L and V".into()));
    }
    let ring = family.config.ring();
    let (n, e, rho) = (ring.n(), ring.e(), family.config.rho());
    let msi = family.m_sequence_index().ok_or_else(|| CliError::Config("family too large to index".into()))?;
    let (report, samples) = family.spectrum(&PairFilter::all(), sampling)?;
    let bounds = check_l_bounds(&report, n, e, rho, msi);
    let mut check = Check::new("|R+1| bounds per case", bounds.checked as u64, bounds.violations.iter().map(entry_json).collect())
        .note(format!(
            "max |R+1|^2: shifted {:?}, against m-sequence {:?}, in phase {:?}, m-sequence auto {:?}",
            bounds.max_shifted_sqr, bounds.max_vs_msequence_sqr, bounds.max_in_phase_sqr, bounds.max_msequence_auto_sqr
        ));
    for case in &bounds.vacuous {
        check = check.note(format!("{case:?} bound is at least period + 1, so it holds vacuously"));
    }
    let overall = bound_theorem1(n, e, rho);
    let over: Vec<Value> = report
        .entries
        .iter()
        .filter(|x| !x.is_in_phase_auto() && x.value.abs::<f64>() > overall)
        .map(entry_json)
        .collect();
    let total = Check::new("every nontrivial |R| <= overall bound", report.len() as u64, over)
        .note(format!("overall bound {overall:.3}; reached: {}", !bounds.strict_overall));
    Ok(Outcome { params: param_map(&family), samples, checks: vec![check, total] })
}

fn theorem2(params: &Params, sampling: &Sampling) -> Result<Outcome, CliError> {
    let family = Family::from_params(params, FamilyKind::L)?;
    if family.config.kind() == FamilyKind::W {
        return Err(CliError::Config("this span formula applies to families L and V".into()));
    }
    let n = family.config.ring().n();
    let (positions, sampled) = family.lincomp_positions(sampling)?;
    let rows = lincomp_rows(&family, &positions)?;
    let mut per_span: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    for r in &rows {
        let slot = per_span.entry(r.formula).or_default();
        slot.0 += 1;
        slot.1 += u64::from(r.matches);
    }
    let bad = rows.iter().filter(|r| !r.matches).map(|r| serde_json::to_value(r).expect("plain struct")).collect();
    let mut check = Check::new("measured linear span equals the formula", rows.len() as u64, bad);
    for (span, (total, ok)) in &per_span {
        check = check.note(format!("predicted span {span}: {ok}/{total} match"));
    }
    let last = usize::try_from(family.size() - 1).map_err(|_| CliError::Config("family too large to index".into()))?;
    let mseq = family.member_at(last)?;
    let got = linear_complexity_periodic(&mseq.values)?.complexity;
    let mut mrow = Check::new(
        "m-sequence row has linear span n",
        1,
        if got == n { vec![] } else { vec![json!({ "index": mseq.meta.index, "measured": got, "formula": n })] },
    );
    if got == n {
        mrow = mrow.note(format!("measured {got}"));
    }
    let samples = sampled.then_some(positions.len() as u64);
    Ok(Outcome { params: param_map(&family), samples, checks: vec![check, mrow] })
}

fn theorem3(params: &Params, sampling: &Sampling) -> Result<Outcome, CliError> {
    require_kind(params, FamilyKind::V, Suite::Theorem3)?;
    let family = Family::from_params(params, FamilyKind::V)?;
    let ring = family.config.ring();
    let (report, samples) = family.spectrum(&PairFilter::nontrivial(), sampling)?;
    let allowed = family_v_values(ring.n(), ring.e())?;
    let check = value_check("nontrivial correlations lie in the stated set", &verify_value_set(&report, &allowed));
    let rendered: Vec<String> = allowed.iter().map(|g| format!("{}{:+}i", g.re, g.im)).collect();
    let check = check
        .note(format!("allowed values: {}", rendered.join(", ")))
        .note(format!("max |R| = sqrt({})", report.r_max_norm_sqr.unwrap_or(0)));
    Ok(Outcome { params: param_map(&family), samples, checks: vec![check] })
}

fn theorem4(params: &Params, sampling: &Sampling) -> Result<Outcome, CliError> {
    require_kind(params, FamilyKind::W, Suite::Theorem4)?;
    let family = Family::from_params(params, FamilyKind::W)?;
    let ring = family.config.ring();
    let (n, e) = (ring.n(), ring.e());
    let half_period = ring.order();
    let (report, samples) = family.spectrum(&PairFilter::all(), sampling)?;
    let part = |keep: &dyn Fn(&CorrelationEntry) -> bool| -> CorrelationReport { report.filtered(keep) };
    let at_half = verify_family_w(&part(&|x| x.tau == half_period), n, e)?;
    let at_zero = verify_family_w(&part(&|x| x.tau == 0), n, e)?;
    let generic = verify_family_w(&part(&|x| x.tau != 0 && x.tau != half_period), n, e)?;
    let half = 1usize << (n - 1);
    let cross_zeros = generic
        .violations
        .iter()
        .filter(|x| matches!(WPairClass::of(x.i, x.j, half), WPairClass::UV | WPairClass::VU) && x.value == Gaussian::zero())
        .count();
    let mut generic_check = value_check("other shifts lie in the stated sets", &generic);
    if cross_zeros > 0 {
        generic_check = generic_check.note(format!(
            "{cross_zeros} of {} violations are u-v/v-u correlations equal to 0, a value the stated cross-pair sets omit",
            generic.violations.len()
        ));
    }
    let checks = vec![
        value_check("tau = 2^n-1: -2 (u-u), 2 (v-v), 0 (u-v)", &at_half),
        value_check("tau = 0: period iff same member, else -2 or 0", &at_zero),
        generic_check,
    ];
    Ok(Outcome { params: param_map(&family), samples, checks })
}

fn theorem5(params: &Params, sampling: &Sampling) -> Result<Outcome, CliError> {
    require_kind(params, FamilyKind::W, Suite::Theorem5)?;
    let family = Family::from_params(params, FamilyKind::W)?;
    let (positions, sampled) = family.lincomp_positions(sampling)?;
    let rows = lincomp_rows(&family, &positions)?;
    let ok = rows.iter().filter(|r| r.matches).count();
    let bad = rows.iter().filter(|r| !r.matches).map(|r| serde_json::to_value(r).expect("plain struct")).collect();
    let check = Check::new("measured linear span equals the formula", rows.len() as u64, bad)
        .note(format!("{ok}/{} formula-oracle matches", rows.len()));
    let samples = sampled.then_some(positions.len() as u64);
    Ok(Outcome { params: param_map(&family), samples, checks: vec![check] })
}

fn kernel(params: &Params, interpretation: KernelInterpretation) -> Result<Outcome, CliError> {
    if params.rho != 1 {
        return Err(CliError::Config("the kernel suite covers rho = 1; use kernel-count for larger rho".into()));
    }
    let (e, m) = params.ring_dims()?;
    let ring = build_ring(e, m)?;
    let (lambda, lambda_log) = select_lambda(&ring, params.lambda_log)?;
    let rows = kernel_rows(&ring, lambda.project(), &[Vec::new()], interpretation)?;
    let large = 1u64 << e;
    // delta = 1 is shift 0, where every z is a root
    let (at_one, rest): (Vec<_>, Vec<_>) = rows.iter().partition(|r| r.delta_log == 0);
    let bad_counts = rest
        .iter()
        .filter(|r| r.count != 1 && r.count != large)
        .map(|r| json!({ "delta_log": r.delta_log, "count": r.count }))
        .collect();
    let mut counts = Check::new(&format!("root count is 1 or 2^e = {large} for delta != 0, 1"), rest.len() as u64, bad_counts)
        .note(format!("interpretation: {}", format!("{interpretation:?}").to_lowercase()));
    if let Some(r) = at_one.first() {
        counts = counts.note(format!("delta = 1 (shift 0) has {} roots and is excluded", r.count));
    }
    let mut checks = vec![counts];
    if m % 2 == 0 {
        let mismatched = rest
            .iter()
            .filter(|r| r.large_predicted.is_some_and(|p| p != (r.count == large)))
            .map(|r| json!({ "delta_log": r.delta_log, "count": r.count, "large_predicted": r.large_predicted }))
            .collect();
        checks.push(Check::new("2^e roots exactly when tr(1/(1+delta)) = (lambda^2+1)/lambda^2", rest.len() as u64, mismatched));
    } else {
        checks[0].notes.push("m is odd: the trace criterion assumes even m and is not checked".into());
    }
    let mut p = ring_params(e, m);
    p.insert("lambda_log".into(), lambda_log);
    Ok(Outcome { params: p, samples: None, checks })
}

pub fn run(
    suite: Suite,
    params: &Params,
    sampling: &Sampling,
    interpretation: KernelInterpretation,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let outcome = match suite {
        Suite::Eq2 => eq2(params, sampling)?,
        Suite::Lemma1 => lemma1(params, sampling)?,
        Suite::Theorem1 => theorem1(params, sampling)?,
        Suite::Theorem2 => theorem2(params, sampling)?,
        Suite::Theorem3 => theorem3(params, sampling)?,
        Suite::Theorem4 => theorem4(params, sampling)?,
        Suite::Theorem5 => theorem5(params, sampling)?,
        Suite::Kernel => kernel(params, interpretation)?,
    };
    let pass = outcome.checks.iter().all(|c| c.pass);
    for c in &outcome.checks {
        eprintln!(
            "[{}] {}: {} checked, {} violations",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.checked,
            c.violation_count
        );
    }
    let name = format!("{suite:?}").to_lowercase();
    let report = Report {
        suite: name.clone(),
        pass,
        params: outcome.params,
        sampling: sampling_info(outcome.samples, sampling),
        checks: outcome.checks,
    };
    emit(out, &to_json(&report)?)?;
    if pass {
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        Err(CliError::Failed(format!("suite {name}: {failed} of {} checks failed", report.checks.len())))
    }
}
