use crate::error::{Error, Result};
use crate::families::{HalfPeriodVariant, SpanClassification};

/// Predicted linear span of `u_i` / `v_i` in family `W`:
/// `n(n+e)/(2e)`, plus 2 for `v_i`.
pub fn span_formula_w(n: usize, e: usize, variant: HalfPeriodVariant) -> Result<u64> {
    if e == 0 || n % e != 0 || (n / e) % 2 != 0 {
        return Err(Error::Argument(format!("need e | n with n/e even, got n = {n}, e = {e}")));
    }
    let num = (n * (n + e)) as u64;
    let den = 2 * e as u64;
    if num % den != 0 {
        return Err(Error::Argument(format!("n(n+e)/(2e) is not an integer for n = {n}, e = {e}")));
    }
    Ok(num / den + if variant == HalfPeriodVariant::V { 2 } else { 0 })
}

/// Predicted linear span of an `L` member in class `(j, l)`:
/// `n((m-1)/2 + rho - 1 - floor((rho-1)/e) + 1 - j - l)`, evaluated exactly.
pub fn span_formula_l(n: usize, e: usize, m: usize, rho: usize, j: usize, l: usize) -> Result<u64> {
    if e == 0 || n != e * m || rho == 0 {
        return Err(Error::Argument(format!("inconsistent parameters n = {n}, e = {e}, m = {m}, rho = {rho}")));
    }
    let parts = SpanClassification::new(rho, e);
    if j > parts.a.len() || l > parts.b.len() {
        return Err(Error::Argument(format!(
            "class (j={j}, l={l}) outside 0..={} x 0..={}",
            parts.a.len(),
            parts.b.len()
        )));
    }
    if (n * (m - 1)) % 2 != 0 {
        return Err(Error::Argument(format!("n(m-1)/2 is not an integer for n = {n}, m = {m}")));
    }
    let terms = rho - (rho - 1) / e - j - l;
    Ok((n * (m - 1) / 2 + n * terms) as u64)
}
