use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::field::mode_index;
use crate::shuffle::RateScheme;
use crate::{Error, Result};

/// Coefficients of `dX = (nu Laplacian X - v grad X) dt + sigma grad X dB`
/// on the torus, truncated to modes `|k| <= cutoff`, with equilibrium
/// density `rho` for the initial law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpdeParams {
    pub nu: f64,
    pub drift: f64,
    pub sigma: f64,
    pub cutoff: usize,
    pub rho: f64,
}

impl SpdeParams {
    pub fn new(nu: f64, drift: f64, sigma: f64, cutoff: usize, rho: f64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::InvalidParameter(format!("viscosity must be positive, got {nu}")));
        }
        if !(sigma >= 0.0) || !sigma.is_finite() || !drift.is_finite() {
            return Err(Error::InvalidParameter(format!("bad noise/drift ({sigma}, {drift})")));
        }
        if cutoff == 0 {
            return Err(Error::InvalidParameter("mode cutoff must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::DensityOutOfRange(rho));
        }
        Ok(Self { nu, drift, sigma, cutoff, rho })
    }

    /// Noise strength tied to the viscosity by `sigma^2 = 2 nu`.
    pub fn matched(nu: f64, drift: f64, cutoff: usize, rho: f64) -> Result<Self> {
        Self::new(nu, drift, (2.0 * nu).sqrt(), cutoff, rho)
    }

    /// Diffusive limit of a rate scheme: `nu = c`, `v = gamma`,
    /// `sigma = sqrt(2c)`.
    pub fn from_scheme(scheme: &RateScheme, cutoff: usize, rho: f64) -> Result<Self> {
        if scheme.kappa() != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "diffusive limit needs a + b = c, got kappa = {}",
                scheme.kappa()
            )));
        }
        Self::matched(scheme.limit_c(), scheme.gamma(), cutoff, rho)
    }

    pub fn is_matched(&self) -> bool {
        (self.sigma * self.sigma - 2.0 * self.nu).abs() <= 1e-12 * self.nu.max(1.0)
    }

    /// `lambda_k = nu (2 pi k)^2 - 2 pi v k i`.
    pub fn lambda(&self, k: i32) -> Complex64 {
        let w = 2.0 * PI * k as f64;
        Complex64::new(self.nu * w * w, -self.drift * w)
    }

    /// `theta_k = 2 pi k sigma`.
    pub fn theta(&self, k: i32) -> f64 {
        2.0 * PI * k as f64 * self.sigma
    }
}

/// `E[X_t(k) conj(X_0(k))] = rho (1 - rho) e^{-lambda_k t}` at equilibrium.
pub fn spde_mode_autocovariance(params: &SpdeParams, k: i32, t: f64) -> Complex64 {
    (-params.lambda(k) * t).exp() * (params.rho * (1.0 - params.rho))
}

/// `E[X_t(k)] = X_0(k) e^{-lambda_k t}` for deterministic initial modes
/// (the noise term has mean zero).
pub fn spde_mean_flow(params: &SpdeParams, modes: &[Complex64], t: f64) -> Vec<Complex64> {
    let cutoff = modes.len() / 2;
    modes
        .iter()
        .enumerate()
        .map(|(i, z)| z * (-params.lambda(i as i32 - cutoff as i32) * t).exp())
        .collect()
}

/// Mode amplitudes `X(k)`, `|k| <= cutoff`, of a real field driven by one
/// scalar Brownian motion `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdeState {
    params: SpdeParams,
    t: f64,
    brownian: f64,
    modes: Vec<Complex64>,
}

impl SpdeState {
    /// Start from given amplitudes; the negative modes are overwritten with
    /// the conjugates of the positive ones and mode 0 is made real.
    pub fn from_modes(params: SpdeParams, modes: &[Complex64]) -> Result<Self> {
        let expected = 2 * params.cutoff + 1;
        if modes.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: modes.len() });
        }
        let mut state = Self { params, t: 0.0, brownian: 0.0, modes: modes.to_vec() };
        state.modes[params.cutoff].im = 0.0;
        state.mirror();
        Ok(state)
    }

    /// Centered equilibrium draw: `X(0) = 0` and, for `k > 0`, independent
    /// real and imaginary parts with variance `rho (1 - rho) / 2` each.
    pub fn init_equilibrium<R: Rng + ?Sized>(params: SpdeParams, rng: &mut R) -> Self {
        let sd = (params.rho * (1.0 - params.rho) / 2.0).sqrt();
        let mut modes = vec![Complex64::new(0.0, 0.0); 2 * params.cutoff + 1];
        for k in 1..=params.cutoff as i32 {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            modes[mode_index(k, params.cutoff)] = Complex64::new(sd * re, sd * im);
        }
        let mut state = Self { params, t: 0.0, brownian: 0.0, modes };
        state.mirror();
        state
    }

    fn mirror(&mut self) {
        let cutoff = self.params.cutoff;
        for k in 1..=cutoff as i32 {
            self.modes[mode_index(-k, cutoff)] = self.modes[mode_index(k, cutoff)].conj();
        }
    }

    pub fn params(&self) -> &SpdeParams {
        &self.params
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn brownian(&self) -> f64 {
        self.brownian
    }

    pub fn modes(&self) -> &[Complex64] {
        &self.modes
    }

    pub fn mode(&self, k: i32) -> Complex64 {
        self.modes[mode_index(k, self.params.cutoff)]
    }

    /// Advance by `dt` with a fresh shared increment `dB ~ N(0, dt)`.
    pub fn step<R: Rng + ?Sized>(&mut self, dt: f64, rng: &mut R) -> Result<()> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidParameter(format!("time step must be positive, got {dt}")));
        }
        let db = Normal::new(0.0, dt.sqrt()).expect("finite positive sd").sample(rng);
        self.step_with_increment(dt, db)
    }

    /// Exact update over `dt` given the Brownian increment `db`:
    /// `X(k) <- X(k) exp(-lambda_k dt + i theta_k db + theta_k^2 dt / 2)`.
    /// Positive modes are updated and mirrored, so conjugate symmetry is
    /// exact.
    pub fn step_with_increment(&mut self, dt: f64, db: f64) -> Result<()> {
        if !(dt >= 0.0) || !dt.is_finite() || !db.is_finite() {
            return Err(Error::InvalidParameter(format!("bad step (dt = {dt}, dB = {db})")));
        }
        let cutoff = self.params.cutoff;
        for k in 1..=cutoff as i32 {
            let theta = self.params.theta(k);
            // sigma^2 = 2 nu zeroes the real part; drop the rounding residue of sqrt
            let w = 2.0 * PI * k as f64;
            let re = (0.5 * theta * theta - self.params.nu * w * w) * dt;
            let re = if self.params.is_matched() { 0.0 } else { re };
            let im = self.params.drift * w * dt + theta * db;
            self.modes[mode_index(k, cutoff)] *= Complex64::new(re, im).exp();
        }
        self.mirror();
        self.t += dt;
        self.brownian += db;
        Ok(())
    }

    /// `sum_k X(k) e^{2 pi i k u}`; the imaginary part vanishes up to
    /// rounding.
    pub fn field_at(&self, u: f64) -> Complex64 {
        let cutoff = self.params.cutoff as i32;
        (-cutoff..=cutoff)
            .map(|k| self.mode(k) * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * u))
            .sum()
    }
}
