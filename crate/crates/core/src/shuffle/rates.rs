use serde::{Deserialize, Serialize};

use super::MoveKind;
use crate::{Error, Result};

/// Realized jump rates `(a_n, b_n, c_n, d_n)` at a fixed deck size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Rates {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let rates = Self { a, b, c, d };
        rates.validate()?;
        Ok(rates)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::RateOutOfRange { name, value });
            }
        }
        if self.total() <= 0.0 {
            return Err(Error::DegenerateChain);
        }
        if self.a <= 0.0 && self.b <= 0.0 && self.c <= 0.0 {
            return Err(Error::NoInsertionMove);
        }
        Ok(())
    }

    pub fn total(&self) -> f64 {
        self.a + self.b + self.c + self.d
    }

    pub fn get(&self, mv: MoveKind) -> f64 {
        self.as_array()[mv.index()]
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Net drift `a_n + b_n - c_n` of the bulk shift.
    pub fn drift(&self) -> f64 {
        self.a + self.b - self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum RateMode {
    /// Rates independent of `n`.
    Fixed { a: f64, b: f64, c: f64, d: f64 },
    /// `a_n = 0`, `b_n = c + gamma / n`, `c_n = c`, `d_n = d`, so that
    /// `a_n + b_n - c_n = gamma / n`.
    WeaklyAsymmetric { c: f64, d: f64, gamma: f64 },
}

/// Rates as a function of `n` together with the time-scale exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateScheme {
    pub mode: RateMode,
    pub beta: u32,
}

impl RateScheme {
    pub fn new(mode: RateMode, beta: u32) -> Result<Self> {
        if beta != 1 && beta != 2 {
            return Err(Error::InvalidBeta(beta));
        }
        let scheme = Self { mode, beta };
        match mode {
            RateMode::Fixed { a, b, c, d } => {
                Rates::new(a, b, c, d)?;
            }
            RateMode::WeaklyAsymmetric { c, d, .. } => {
                for (name, value) in [("c", c), ("d", d)] {
                    if !(0.0..=1.0).contains(&value) {
                        return Err(Error::RateOutOfRange { name, value });
                    }
                }
                if c <= 0.0 {
                    return Err(Error::InvalidParameter(
                        "weakly asymmetric scheme needs c > 0".into(),
                    ));
                }
            }
        }
        Ok(scheme)
    }

    pub fn fixed(a: f64, b: f64, c: f64, d: f64, beta: u32) -> Result<Self> {
        Self::new(RateMode::Fixed { a, b, c, d }, beta)
    }

    /// Top card to one of the two bottom slots with equal probability.
    pub fn rudvalis(beta: u32) -> Result<Self> {
        Self::fixed(0.5, 0.5, 0.0, 0.0, beta)
    }

    /// Top-to-bottom, bottom-to-top and top swap, each at rate 1/4.
    pub fn symmetric(beta: u32) -> Result<Self> {
        Self::fixed(0.0, 0.25, 0.25, 0.25, beta)
    }

    /// Weak asymmetry at the diffusive scale.
    pub fn weakly_asymmetric(gamma: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(RateMode::WeaklyAsymmetric { c, d, gamma }, 2)
    }

    /// Rates at deck size `n`.
    pub fn realize(&self, n: usize) -> Result<Rates> {
        match self.mode {
            RateMode::Fixed { a, b, c, d } => Rates::new(a, b, c, d),
            RateMode::WeaklyAsymmetric { c, d, gamma } => Rates::new(0.0, c + gamma / n as f64, c, d),
        }
    }

    /// Limit drift `a + b - c` (the transport speed at the hyperbolic scale).
    pub fn kappa(&self) -> f64 {
        match self.mode {
            RateMode::Fixed { a, b, c, .. } => a + b - c,
            RateMode::WeaklyAsymmetric { .. } => 0.0,
        }
    }

    /// Limit rate `c` of the bottom-to-top move (the diffusivity at the
    /// diffusive scale).
    pub fn limit_c(&self) -> f64 {
        match self.mode {
            RateMode::Fixed { c, .. } | RateMode::WeaklyAsymmetric { c, .. } => c,
        }
    }

    /// Weak asymmetry `gamma = n (a_n + b_n - c_n)`; zero for fixed rates
    /// with `a + b = c`.
    pub fn gamma(&self) -> f64 {
        match self.mode {
            RateMode::Fixed { .. } => 0.0,
            RateMode::WeaklyAsymmetric { gamma, .. } => gamma,
        }
    }
}

/// Named rate choices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case")]
pub enum Preset {
    /// `a = b = 1/2`, `c = d = 0`.
    Rudvalis,
    /// `a = 0`, `b = c = d = 1/4`.
    Symmetric,
    /// `a_n = 0`, `b_n = c + gamma/n`, `c_n = c`, `d_n = d`; diffusive scale.
    WeakAsym {
        #[serde(default = "default_gamma")]
        gamma: f64,
        #[serde(default = "default_c")]
        c: f64,
        #[serde(default)]
        d: f64,
    },
}

fn default_gamma() -> f64 {
    1.0
}

fn default_c() -> f64 {
    0.25
}

impl Preset {
    pub fn weak_asym(gamma: f64) -> Self {
        Preset::WeakAsym { gamma, c: default_c(), d: 0.0 }
    }

    /// Scheme at time-scale exponent `beta`; the weakly asymmetric preset is
    /// defined at the diffusive scale only.
    pub fn scheme(&self, beta: u32) -> Result<RateScheme> {
        match *self {
            Preset::Rudvalis => RateScheme::rudvalis(beta),
            Preset::Symmetric => RateScheme::symmetric(beta),
            Preset::WeakAsym { gamma, c, d } => {
                if beta != 2 {
                    return Err(Error::InvalidParameter(
                        "the weakly asymmetric preset lives at beta = 2".into(),
                    ));
                }
                RateScheme::weakly_asymmetric(gamma, c, d)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Rudvalis => "rudvalis",
            Preset::Symmetric => "symmetric",
            Preset::WeakAsym { .. } => "weak-asym",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let r = RateScheme::rudvalis(1).unwrap();
        assert_eq!(r.kappa(), 1.0);
        let s = RateScheme::symmetric(2).unwrap();
        assert_eq!(s.kappa(), 0.0);
        assert_eq!(s.limit_c(), 0.25);
    }

    #[test]
    fn weak_asymmetry_realizes_gamma_over_n() {
        let w = RateScheme::weakly_asymmetric(1.0, 0.25, 0.0).unwrap();
        for n in [4usize, 16, 512] {
            let r = w.realize(n).unwrap();
            assert!((r.drift() - 1.0 / n as f64).abs() < 1e-15);
            assert_eq!(r.a, 0.0);
            assert!(r.b > 0.0);
        }
        // b_n = c + gamma/n leaves [0, 1] for strong negative asymmetry at small n
        let w = RateScheme::weakly_asymmetric(-2.0, 0.25, 0.0).unwrap();
        assert!(matches!(w.realize(4), Err(Error::RateOutOfRange { name: "b", .. })));
    }

    #[test]
    fn validation() {
        assert_eq!(
            RateScheme::fixed(-0.1, 0.5, 0.0, 0.0, 1),
            Err(Error::RateOutOfRange { name: "a", value: -0.1 })
        );
        assert_eq!(RateScheme::fixed(0.0, 0.0, 0.0, 0.0, 1), Err(Error::DegenerateChain));
        assert_eq!(RateScheme::fixed(0.0, 0.0, 0.0, 0.5, 1), Err(Error::NoInsertionMove));
        assert_eq!(RateScheme::fixed(0.5, 0.5, 0.0, 0.0, 3), Err(Error::InvalidBeta(3)));
    }
}
