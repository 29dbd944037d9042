use super::generator::MAX_ORACLE_SIZE;
use crate::shuffle::MIN_SIZE;
use crate::{Error, Result};

/// Probability vector on `{0,1}^n` in bitmask order.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureVector {
    n: usize,
    probs: Vec<f64>,
}

fn check_size(n: usize) -> Result<()> {
    if n < MIN_SIZE {
        return Err(Error::DeckTooSmall(n));
    }
    if n > MAX_ORACLE_SIZE {
        return Err(Error::OracleTooLarge(n));
    }
    Ok(())
}

impl MeasureVector {
    pub fn from_vec(n: usize, probs: Vec<f64>) -> Result<Self> {
        check_size(n)?;
        if probs.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: probs.len() });
        }
        let total: f64 = probs.iter().sum();
        if probs.iter().any(|&p| !(p >= 0.0)) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter("not a probability vector".into()));
        }
        Ok(Self { n, probs })
    }

    /// Bernoulli product measure `prod_x (rho eta(x) + (1 - rho)(1 - eta(x)))`.
    pub fn bernoulli(n: usize, rho: f64) -> Result<Self> {
        check_size(n)?;
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::DensityOutOfRange(rho));
        }
        let probs = (0..1usize << n)
            .map(|s| {
                let k = s.count_ones() as i32;
                rho.powi(k) * (1.0 - rho).powi(n as i32 - k)
            })
            .collect();
        Ok(Self { n, probs })
    }

    /// Uniform measure on configurations with exactly `particles` particles.
    pub fn hyperplane_uniform(n: usize, particles: usize) -> Result<Self> {
        check_size(n)?;
        if particles > n {
            return Err(Error::ParticleCountOutOfRange { count: particles, n });
        }
        let members = (0..1usize << n).filter(|s| s.count_ones() as usize == particles).count();
        let w = 1.0 / members as f64;
        let probs = (0..1usize << n)
            .map(|s| if s.count_ones() as usize == particles { w } else { 0.0 })
            .collect();
        Ok(Self { n, probs })
    }

    pub fn point_mass(n: usize, state: usize) -> Result<Self> {
        check_size(n)?;
        if state >= 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: state });
        }
        let mut probs = vec![0.0; 1 << n];
        probs[state] = 1.0;
        Ok(Self { n, probs })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    /// `sum_eta mu(eta) f(eta)`.
    pub fn expectation(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.probs.len());
        self.probs.iter().zip(f).map(|(p, v)| p * v).sum()
    }
}
