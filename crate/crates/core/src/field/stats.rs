use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Sample mean, unbiased variance and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Result<Self> {
        let count = values.len();
        if count < 2 {
            return Err(Error::TooFewReplicas(count));
        }
        let m = count as f64;
        let mean = values.iter().sum::<f64>() / m;
        let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
        Ok(Self { count, mean, variance, std_error: (variance / m).sqrt() })
    }

    /// Mean of `x_i y_i`, the estimator of a cross moment `E[XY]`.
    pub fn of_products(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch { expected: xs.len(), got: ys.len() });
        }
        let products: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x * y).collect();
        Self::of(&products)
    }

    /// `(mean - target) / std_error`; infinite when the spread is zero and
    /// the mean misses the target.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = self.mean - target;
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Component-wise summary of complex samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub re: Summary,
    pub im: Summary,
}

impl ComplexSummary {
    pub fn of(values: &[Complex64]) -> Result<Self> {
        let re: Vec<f64> = values.iter().map(|z| z.re).collect();
        let im: Vec<f64> = values.iter().map(|z| z.im).collect();
        Ok(Self { re: Summary::of(&re)?, im: Summary::of(&im)? })
    }

    /// Summary of `z_i conj(w_i)`, estimating `E[Z conj(W)]`.
    pub fn of_products(zs: &[Complex64], ws: &[Complex64]) -> Result<Self> {
        if zs.len() != ws.len() {
            return Err(Error::DimensionMismatch { expected: zs.len(), got: ws.len() });
        }
        let products: Vec<Complex64> = zs.iter().zip(ws).map(|(z, w)| z * w.conj()).collect();
        Self::of(&products)
    }

    pub fn mean(&self) -> Complex64 {
        Complex64::new(self.re.mean, self.im.mean)
    }
}

/// Unbiased sample covariance.
pub fn covariance(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch { expected: xs.len(), got: ys.len() });
    }
    let m = xs.len();
    if m < 2 {
        return Err(Error::TooFewReplicas(m));
    }
    let mx = xs.iter().sum::<f64>() / m as f64;
    let my = ys.iter().sum::<f64>() / m as f64;
    Ok(xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / (m as f64 - 1.0))
}
