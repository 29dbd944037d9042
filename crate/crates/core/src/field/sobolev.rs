use super::basis::gamma;
use crate::{Error, Result};

fn check(len: usize, m: f64) -> Result<usize> {
    if m.is_nan() || m <= 0.0 {
        return Err(Error::NonPositiveSobolevIndex(m));
    }
    if len.is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: len + 1, got: len });
    }
    Ok(len / 2)
}

/// `sum_{|k| <= K} f_k g_k gamma_k^{-m}` for coefficient vectors indexed `-K..=K`.
pub fn sobolev_inner(f: &[f64], g: &[f64], m: f64) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch { expected: f.len(), got: g.len() });
    }
    let cutoff = check(f.len(), m)? as i32;
    Ok((-cutoff..=cutoff)
        .zip(f.iter().zip(g))
        .map(|(k, (a, b))| a * b * gamma(k).powf(-m))
        .sum())
}

/// Truncated `H_{-m}` norm `(sum_{|k| <= K} c_k^2 gamma_k^{-m})^{1/2}`.
pub fn sobolev_minus_norm(coeffs: &[f64], m: f64) -> Result<f64> {
    sobolev_inner(coeffs, coeffs, m).map(f64::sqrt)
}
