//! Ring and family construction from command-line parameters.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::sync::Arc;

use quadseq::families::{read_sequence_file, FamilyConfig, FamilyKind, QuadSequence, SequenceMeta};
use quadseq::ring::{BinaryPoly, RingContext};

use crate::error::CliError;

pub const POLY_TABLE_ENV: &str = "QUADSEQ_POLY_TABLE";

/// Parses a primitive-polynomial table: one `n: c0,c1,...,cn` line per degree,
/// `#` starts a comment.
pub fn parse_poly_table(text: &str) -> Result<BTreeMap<usize, BinaryPoly>, CliError> {
    let mut table = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::Config(format!("{POLY_TABLE_ENV} line {}: {msg}", no + 1));
        let (deg, coeffs) = line.split_once(':').ok_or_else(|| bad("expected `n: c0,c1,...`".into()))?;
        let n: usize = deg.trim().parse().map_err(|_| bad(format!("bad degree `{}`", deg.trim())))?;
        let g: BinaryPoly = coeffs.parse().map_err(|e| bad(format!("{e}")))?;
        if g.degree() != Some(n) {
            return Err(bad(format!("polynomial {g} does not have degree {n}")));
        }
        if !g.is_primitive() {
            return Err(bad(format!("polynomial {g} is not primitive")));
        }
        table.insert(n, g);
    }
    Ok(table)
}

/// GR(4, e*m), with the polynomial taken from the table named by
/// `QUADSEQ_POLY_TABLE` when that variable is set.
pub fn build_ring(e: usize, m: usize) -> Result<Arc<RingContext>, CliError> {
    let ring = match std::env::var_os(POLY_TABLE_ENV) {
        Some(path) => {
            let path = Path::new(&path);
            let text = std::fs::read_to_string(path)
                .map_err(|err| CliError::Io(format!("cannot read {}: {err}", path.display())))?;
            let table = parse_poly_table(&text)?;
            let n = e * m;
            let g = *table
                .get(&n)
                .ok_or_else(|| CliError::Config(format!("{} has no polynomial of degree {n}", path.display())))?;
            RingContext::with_poly(e, m, g)?
        }
        None => RingContext::new(e, m)?,
    };
    Ok(Arc::new(ring))
}

pub fn build_config(e: usize, m: usize, kind: FamilyKind, rho: usize, lambda_log: Option<u64>) -> Result<FamilyConfig, CliError> {
    Ok(FamilyConfig::new(build_ring(e, m)?, kind, rho, lambda_log)?)
}

/// Family parameters and sequences read back from a sequence file.
pub struct LoadedFamily {
    pub config: FamilyConfig,
    pub sequences: Vec<QuadSequence>,
}

pub fn load_family(path: &Path) -> Result<LoadedFamily, CliError> {
    let file = File::open(path).map_err(|err| CliError::Io(format!("cannot open {}: {err}", path.display())))?;
    let parsed = read_sequence_file(BufReader::new(file))
        .map_err(|err| CliError::Config(format!("{}: {err}", path.display())))?;
    let h = parsed.header;
    let config = build_config(h.e, h.m, h.family, h.rho.max(1), Some(h.lambda_log))?;
    if config.period() != h.period {
        return Err(CliError::Config(format!(
            "{}: header period {} does not match the parameters (expected {})",
            path.display(),
            h.period,
            config.period()
        )));
    }
    let sequences = parsed
        .sequences
        .into_iter()
        .map(|(index, values)| QuadSequence { values, meta: SequenceMeta { kind: h.family, index, tuple: None } })
        .collect();
    Ok(LoadedFamily { config, sequences })
}
