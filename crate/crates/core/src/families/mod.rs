//! Construction of the quadriphase families `L`, `V` and `W`.
//!
//! Members of `L`/`V` have period `2^n - 1` and are indexed `1..=2^(n*rho) + 1`;
//! the last index is the doubled binary m-sequence `2 Tr(beta^t)`. Members of
//! `W` have period `2(2^n - 1)`; `u_i` carries index `i` and `v_i` carries
//! index `2^(n-1) + i`.

mod distinct;
mod family_l;
mod family_w;
mod io;
mod pfunc;
mod span;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement, Z4};

pub use distinct::{cyclic_distinctness, Coincidence};
pub use family_l::{gen_family_l, FamilyL, MAX_MATERIALIZED_MEMBERS};
pub use family_w::{build_set_g, gen_family_w, FamilyW, HalfPeriodVariant};
pub use io::{read_sequence_file, write_sequence_file, FileHeader, SequenceFile};
pub use pfunc::PFunction;
pub use span::{classify_span, count_span_class, BValueConvention, SpanClass, SpanClassification};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    L,
    V,
    W,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::L => "L",
            FamilyKind::V => "V",
            FamilyKind::W => "W",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(FamilyKind::L),
            "V" | "v" => Ok(FamilyKind::V),
            "W" | "w" => Ok(FamilyKind::W),
            other => Err(Error::Config(format!("unknown family `{other}`"))),
        }
    }
}

/// Validated parameters of one family.
#[derive(Clone, Debug)]
pub struct FamilyConfig {
    ring: Arc<RingContext>,
    kind: FamilyKind,
    rho: usize,
    lambda: RingElement,
    lambda_log: u64,
}

impl FamilyConfig {
    /// `rho` is ignored for `W` and must be 1 for `V`. `lambda_log` overrides the
    /// default choice of `lambda` as a power of `beta`.
    pub fn new(ring: Arc<RingContext>, kind: FamilyKind, rho: usize, lambda_log: Option<u64>) -> Result<Self> {
        let n = ring.n();
        let rho = match kind {
            FamilyKind::L => {
                if rho < 1 || rho >= n / 2 {
                    return Err(Error::Config(format!("family L needs 1 <= rho < floor(n/2) = {}, got rho = {rho}", n / 2)));
                }
                rho
            }
            FamilyKind::V => {
                if ring.m() % 2 != 0 {
                    return Err(Error::Config(format!("family V needs m even, got m = {}", ring.m())));
                }
                if rho != 1 {
                    return Err(Error::Config(format!("family V has rho = 1, got rho = {rho}")));
                }
                1
            }
            FamilyKind::W => {
                if ring.m() % 2 != 0 {
                    return Err(Error::Config(format!("family W needs m even, got m = {}", ring.m())));
                }
                1
            }
        };
        let (lambda, lambda_log) = select_lambda(&ring, lambda_log)?;
        Ok(FamilyConfig { ring, kind, rho, lambda, lambda_log })
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn shared_ring(&self) -> Arc<RingContext> {
        Arc::clone(&self.ring)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn lambda(&self) -> RingElement {
        self.lambda
    }

    pub fn lambda_log(&self) -> u64 {
        self.lambda_log
    }

    pub fn period(&self) -> usize {
        match self.kind {
            FamilyKind::L | FamilyKind::V => self.ring.order(),
            FamilyKind::W => 2 * self.ring.order(),
        }
    }

    /// Number of family members: `2^(n*rho) + 1` for L/V, `2^n` for W.
    pub fn family_size(&self) -> u128 {
        match self.kind {
            FamilyKind::L | FamilyKind::V => (1u128 << (self.ring.n() * self.rho)) + 1,
            FamilyKind::W => 1u128 << self.ring.n(),
        }
    }
}

/// Picks `lambda = beta^k` in the Teichmuller subgroup of GR(4,e).
///
/// The default exponent `(2^n - 1)/(2^e - 1)` gives a generator of that
/// subgroup. An override must land in GR(4,e) and project outside `{0, 1}`.
pub fn select_lambda(ring: &RingContext, lambda_log: Option<u64>) -> Result<(RingElement, u64)> {
    let order = ring.order() as u64;
    let sub_order = (1u64 << ring.e()) - 1;
    let step = order / sub_order;
    let k = lambda_log.unwrap_or(step) % order;
    let lambda = ring.beta_pow(k as i64);
    if k % step != 0 {
        return Err(Error::Config(format!("beta^{k} does not lie in GR(4,{})", ring.e())));
    }
    if k == 0 {
        return Err(Error::Config("lambda must not project to 1".into()));
    }
    debug_assert!(ring.in_subring(lambda, ring.e()));
    Ok((lambda, k))
}

/// Coefficients `(lambda_0, lambda_1, ..., lambda_{rho-1})` of an `L` member, each in T.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientTuple(pub Vec<RingElement>);

impl CoefficientTuple {
    pub fn lambda0(&self) -> RingElement {
        self.0[0]
    }

    /// `lambda_k` for `1 <= k < rho`.
    pub fn lambda_k(&self, k: usize) -> RingElement {
        self.0[k]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceMeta {
    pub kind: FamilyKind,
    pub index: usize,
    pub tuple: Option<CoefficientTuple>,
}

/// One period of a Z4-valued periodic sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSequence {
    pub values: Vec<Z4>,
    pub meta: SequenceMeta,
}

impl QuadSequence {
    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn at(&self, t: usize) -> Z4 {
        self.values[t % self.values.len()]
    }

    /// `periods` consecutive copies of one period.
    pub fn repeated(&self, periods: usize) -> Vec<Z4> {
        let mut out = Vec::with_capacity(self.values.len() * periods);
        for _ in 0..periods {
            out.extend_from_slice(&self.values);
        }
        out
    }
}
