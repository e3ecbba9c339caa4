//! Solution counts of the linearized kernel equation behind the `L` bounds.
//!
//! For nonzero `d` and `lambda` in GF(2^e) \ {0, 1} the map is
//! `L(z) = d tr(d z) + tr(z) + (lambda^2+1)(d^2+1)/lambda^2 z
//!        + 1/lambda^2 sum_k (eta_k^(-2^k) z^(-2^k) + eta_k z^(2^k))`
//! with `tr` the relative trace onto GF(2^e). The number of roots bounds the
//! magnitude of a correlation through `|R+1|^2 = 2^n * #roots` or 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{FieldElement, GaloisField};

/// Reading of the `z^(-2^k)` terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelInterpretation {
    /// Field inverse for `z != 0`. The terms come from
    /// `Tr(eta_k (z y^(2^k) + z^(2^k) y))`, which vanishes at `z = 0`, so 0 is
    /// always counted.
    #[default]
    Literal,
    /// Inverse Frobenius: `a^(-2^k)` read as `a^(2^(n-k))`, which makes `L`
    /// GF(2)-linear.
    Linearized,
}

impl std::str::FromStr for KernelInterpretation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(KernelInterpretation::Literal),
            "linearized" => Ok(KernelInterpretation::Linearized),
            other => Err(Error::Argument(format!("unknown interpretation `{other}` (literal|linearized)"))),
        }
    }
}

/// Inputs of the kernel equation over GF(2^n).
#[derive(Clone, Debug)]
pub struct KernelEquation<'a> {
    pub field: &'a GaloisField,
    pub e: usize,
    pub delta: FieldElement,
    pub lambda: FieldElement,
    /// `eta_1..eta_(rho-1)`; empty for `rho = 1`.
    pub etas: Vec<FieldElement>,
}

impl<'a> KernelEquation<'a> {
    pub fn new(field: &'a GaloisField, e: usize, delta: FieldElement, lambda: FieldElement, etas: Vec<FieldElement>) -> Result<Self> {
        if e == 0 || field.degree() % e != 0 {
            return Err(Error::Config(format!("e = {e} does not divide n = {}", field.degree())));
        }
        if delta.is_zero() {
            return Err(Error::Argument("delta must be nonzero".into()));
        }
        if lambda.is_zero() || lambda == FieldElement::ONE || !field.in_subfield(lambda, e) {
            return Err(Error::Argument("lambda must lie in GF(2^e) \\ {0, 1}".into()));
        }
        Ok(KernelEquation { field, e, delta, lambda, etas })
    }

    /// `L(z)`.
    pub fn eval(&self, z: FieldElement, interpretation: KernelInterpretation) -> FieldElement {
        let f = self.field;
        let n = f.degree();
        let tr = |y| f.trace(y, self.e).expect("e divides n");
        let lam2 = f.mul(self.lambda, self.lambda);
        let inv_lam2 = f.inv(lam2).expect("lambda is nonzero");
        let d2 = f.mul(self.delta, self.delta);
        let coef = f.mul(f.mul(lam2 + FieldElement::ONE, d2 + FieldElement::ONE), inv_lam2);
        let mut acc = f.mul(self.delta, tr(f.mul(self.delta, z))) + tr(z) + f.mul(coef, z);
        let mut sum = FieldElement::ZERO;
        for (idx, &eta) in self.etas.iter().enumerate() {
            let k = idx + 1;
            let forward = f.mul(eta, f.frobenius(z, k));
            let backward = match interpretation {
                KernelInterpretation::Linearized => f.frobenius(f.mul(eta, z), n - k % n),
                KernelInterpretation::Literal => {
                    let ez = f.mul(eta, z);
                    if ez.is_zero() {
                        FieldElement::ZERO
                    } else {
                        f.inv(f.frobenius(ez, k)).expect("nonzero")
                    }
                }
            };
            sum += forward + backward;
        }
        acc += f.mul(inv_lam2, sum);
        acc
    }

    /// Number of `z` in GF(2^n) with `L(z) = 0`, by enumeration.
    pub fn count(&self, interpretation: KernelInterpretation) -> u64 {
        self.field.elements().filter(|&z| z.is_zero() || self.eval(z, interpretation).is_zero()).count() as u64
    }

    /// For `rho = 1` and even `m`: whether the root count should be `2^e`,
    /// i.e. `tr(1/(1+d)) == (lambda^2+1)/lambda^2`. `None` at `d = 1`, where
    /// `1/(1+d)` does not exist. The criterion relies on `tr(1) = 0`, which
    /// fails for odd `m`.
    pub fn predicts_large_kernel(&self) -> Option<bool> {
        let f = self.field;
        let inv = f.inv(self.delta + FieldElement::ONE)?;
        let lam2 = f.mul(self.lambda, self.lambda);
        let rhs = f.div(lam2 + FieldElement::ONE, lam2).expect("lambda is nonzero");
        Some(f.trace(inv, self.e).expect("e divides n") == rhs)
    }
}

/// Brute-force root count of the kernel equation.
pub fn count_l_kernel(
    field: &GaloisField,
    e: usize,
    delta: FieldElement,
    lambda: FieldElement,
    etas: &[FieldElement],
    interpretation: KernelInterpretation,
) -> Result<u64> {
    Ok(KernelEquation::new(field, e, delta, lambda, etas.to_vec())?.count(interpretation))
}
