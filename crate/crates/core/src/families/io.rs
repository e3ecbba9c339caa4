//! Text format for generated families.
//!
//! ```text
//! # family=V n=4 e=2 m=2 rho=1 lambda_log=5 period=15 count=17
//! 1:0,1,3,...
//! ```
//!
//! `rho` is written as 0 for family `W`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::families::{FamilyConfig, FamilyKind, QuadSequence};
use crate::ring::Z4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileHeader {
    pub family: FamilyKind,
    pub n: usize,
    pub e: usize,
    pub m: usize,
    pub rho: usize,
    pub lambda_log: u64,
    pub period: usize,
    pub count: usize,
}

impl FileHeader {
    pub fn for_config(config: &FamilyConfig, count: usize) -> Self {
        let ring = config.ring();
        FileHeader {
            family: config.kind(),
            n: ring.n(),
            e: ring.e(),
            m: ring.m(),
            rho: if config.kind() == FamilyKind::W { 0 } else { config.rho() },
            lambda_log: config.lambda_log(),
            period: config.period(),
            count,
        }
    }

    fn render(&self) -> String {
        format!(
            "# family={} n={} e={} m={} rho={} lambda_log={} period={} count={}",
            self.family, self.n, self.e, self.m, self.rho, self.lambda_log, self.period, self.count
        )
    }

    fn parse(line: &str) -> Result<Self> {
        let err = |msg: String| Error::Parse { line: 1, msg };
        let body = line.strip_prefix('#').ok_or_else(|| err("header must start with `#`".into()))?;
        let mut fields = std::collections::HashMap::new();
        for tok in body.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| err(format!("malformed header field `{tok}`")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| err(format!("missing header field `{k}`")));
        let num = |k: &str| -> Result<u64> { get(k)?.parse().map_err(|_| err(format!("bad value for `{k}`"))) };
        Ok(FileHeader {
            family: get("family")?.parse().map_err(|_| err("bad family".into()))?,
            n: num("n")? as usize,
            e: num("e")? as usize,
            m: num("m")? as usize,
            rho: num("rho")? as usize,
            lambda_log: num("lambda_log")?,
            period: num("period")? as usize,
            count: num("count")? as usize,
        })
    }
}

/// Parsed contents: `(index, values)` pairs in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFile {
    pub header: FileHeader,
    pub sequences: Vec<(usize, Vec<Z4>)>,
}

pub fn write_sequence_file<W: Write>(mut out: W, header: &FileHeader, sequences: &[QuadSequence]) -> Result<()> {
    writeln!(out, "{}", header.render())?;
    let mut line = String::new();
    for s in sequences {
        line.clear();
        line.push_str(&s.meta.index.to_string());
        line.push(':');
        for (t, v) in s.values.iter().enumerate() {
            if t > 0 {
                line.push(',');
            }
            line.push(char::from(b'0' + v.value()));
        }
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_sequence_file<R: BufRead>(input: R) -> Result<SequenceFile> {
    let mut lines = input.lines();
    let header = match lines.next() {
        Some(line) => FileHeader::parse(line?.trim_end())?,
        None => return Err(Error::Parse { line: 1, msg: "empty file".into() }),
    };
    let mut sequences = Vec::with_capacity(header.count);
    for (no, line) in lines.enumerate() {
        let line_no = no + 2;
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let (idx, digits) = line.split_once(':').ok_or_else(|| err("expected `<index>:<digits>`".into()))?;
        let index: usize = idx.trim().parse().map_err(|_| err(format!("bad index `{idx}`")))?;
        let values = digits
            .split(',')
            .map(|d| match d.trim() {
                "0" => Ok(Z4::ZERO),
                "1" => Ok(Z4::ONE),
                "2" => Ok(Z4::TWO),
                "3" => Ok(Z4::THREE),
                other => Err(err(format!("digit `{other}` not in 0..3"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != header.period {
            return Err(err(format!("sequence has {} values, header says period {}", values.len(), header.period)));
        }
        sequences.push((index, values));
    }
    if sequences.len() != header.count {
        return Err(Error::Parse {
            line: sequences.len() + 1,
            msg: format!("found {} sequences, header says {}", sequences.len(), header.count),
        });
    }
    Ok(SequenceFile { header, sequences })
}
