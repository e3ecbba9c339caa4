//! Correlation spectra, value-set and bound checks, and kernel diagnostics.

mod bounds;
mod gaussian;
mod identity;
mod kernel;
mod spectrum;
mod values;
mod varsigma;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use bounds::{bound_theorem1, check_l_bounds, BoundCase, BoundCheck};
pub use gaussian::GaussianInt;
pub use identity::{check_p_identity_exhaustive, check_p_identity_sampled, p_identity_holds, IdentityCheck};
pub use kernel::{count_l_kernel, KernelEquation, KernelInterpretation};
pub use spectrum::{correlate, correlate_slices, full_spectrum, sampled_spectrum, CorrelationEntry, CorrelationReport, PairFilter};
pub use values::{
    family_v_values, family_w_values, verify_entries, verify_family_w, verify_value_set, ValueSetCheck, WPairClass,
};
pub use varsigma::{decompose_w_correlation, varsigma, varsigma_over_t, WDecomposition};

use crate::Gaussian;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub re: i64,
    pub im: i64,
    pub count: u64,
}

/// JSON summary `{family, params, histogram, r_max, violations}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub histogram: Vec<HistogramBin>,
    pub r_max: Option<f64>,
    pub violations: Vec<CorrelationEntry>,
}

impl SpectrumSummary {
    pub fn new(family: impl Into<String>, params: BTreeMap<String, u64>, report: &CorrelationReport, violations: Vec<CorrelationEntry>) -> Self {
        SpectrumSummary {
            family: family.into(),
            params,
            histogram: report
                .histogram
                .iter()
                .map(|(g, &count): (&Gaussian, &u64)| HistogramBin { re: g.re, im: g.im, count })
                .collect(),
            r_max: report.r_max,
            violations,
        }
    }
}
