use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::shuffle::OccupancyState;
use crate::{Error, Result};

/// Real orthonormal basis of `L^2` on the torus:
/// `sqrt(2) sin(2 pi k u)` for `k < 0`, `1` for `k = 0`,
/// `sqrt(2) cos(2 pi k u)` for `k > 0`.
pub fn psi(k: i32, u: f64) -> f64 {
    let arg = 2.0 * PI * k as f64 * u;
    match k.signum() {
        -1 => SQRT_2 * arg.sin(),
        0 => 1.0,
        _ => SQRT_2 * arg.cos(),
    }
}

/// `gamma_k = 1 + 4 pi^2 k^2`.
pub fn gamma(k: i32) -> f64 {
    1.0 + 4.0 * PI * PI * (k as f64).powi(2)
}

/// Position of mode `k` in a vector holding modes `-cutoff..=cutoff`.
#[inline]
pub fn mode_index(k: i32, cutoff: usize) -> usize {
    (k + cutoff as i32) as usize
}

/// Real-basis coefficients from complex ones (both indexed `-K..=K`).
pub fn psi_from_complex(modes: &[Complex64]) -> Vec<f64> {
    let cutoff = modes.len() / 2;
    (-(cutoff as i32)..=cutoff as i32)
        .map(|k| {
            let z = modes[mode_index(k.abs(), cutoff)];
            match k.signum() {
                -1 => SQRT_2 * z.im,
                0 => z.re,
                _ => SQRT_2 * z.re,
            }
        })
        .collect()
}

/// Complex coefficients from real-basis ones (both indexed `-K..=K`).
pub fn complex_from_psi(coeffs: &[f64]) -> Vec<Complex64> {
    let cutoff = coeffs.len() / 2;
    (-(cutoff as i32)..=cutoff as i32)
        .map(|k| {
            let m = k.unsigned_abs() as i32;
            let z = Complex64::new(coeffs[mode_index(m, cutoff)], coeffs[mode_index(-m, cutoff)]) / SQRT_2;
            match k.signum() {
                -1 => z.conj(),
                0 => Complex64::new(coeffs[cutoff], 0.0),
                _ => z,
            }
        })
        .collect()
}

/// Basis functions and complex exponentials tabulated on the grid
/// `{x/n : x = 0..n}` for `|k| <= cutoff`.
#[derive(Debug, Clone)]
pub struct FourierBasis {
    n: usize,
    cutoff: usize,
    /// `psi` rows, mode-major, indexed by `mode_index`.
    real: Vec<Vec<f64>>,
    /// `e^{-2 pi i k x/n}` for `k = 0..=cutoff`.
    analysis: Vec<Vec<Complex64>>,
}

impl FourierBasis {
    /// Requires `4 * cutoff <= n`, which keeps every pair of tabulated
    /// modes exactly orthogonal on the grid.
    pub fn new(n: usize, cutoff: usize) -> Result<Self> {
        if cutoff == 0 || 4 * cutoff > n {
            return Err(Error::CutoffTooLarge { cutoff, n });
        }
        let nf = n as f64;
        let real = (-(cutoff as i32)..=cutoff as i32)
            .map(|k| (0..n).map(|x| psi(k, x as f64 / nf)).collect())
            .collect();
        let analysis = (0..=cutoff)
            .map(|k| {
                (0..n)
                    .map(|x| {
                        // reduce the phase exactly before converting to float
                        let phase = ((k * x) % n) as f64 / nf;
                        Complex64::from_polar(1.0, -2.0 * PI * phase)
                    })
                    .collect()
            })
            .collect();
        Ok(Self { n, cutoff, real, analysis })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn modes(&self) -> impl Iterator<Item = i32> {
        -(self.cutoff as i32)..=self.cutoff as i32
    }

    /// `psi_k(x/n)` for `x = 0..n`.
    pub fn values(&self, k: i32) -> &[f64] {
        &self.real[mode_index(k, self.cutoff)]
    }

    fn check(&self, state: &OccupancyState) {
        assert_eq!(state.len(), self.n, "configuration size does not match the basis");
    }

    /// `<pi^n, psi_k>` for every `|k| <= cutoff`.
    pub fn empirical(&self, state: &OccupancyState) -> Vec<f64> {
        self.check(state);
        self.real.iter().map(|row| super::pair_empirical(state, row)).collect()
    }

    /// `Y^n(psi_k)` for every `|k| <= cutoff`.
    pub fn fluctuation(&self, state: &OccupancyState, rho: f64) -> Vec<f64> {
        self.check(state);
        self.real.iter().map(|row| super::pair_fluctuation(state, rho, row)).collect()
    }

    /// `sum_x (eta(x) - rho) e^{-2 pi i k x/n}` for `k = 0..=cutoff`.
    fn raw_modes(&self, state: &OccupancyState, rho: f64) -> Vec<Complex64> {
        self.check(state);
        let mut acc = vec![Complex64::new(0.0, 0.0); self.cutoff + 1];
        for (i, b) in state.iter().enumerate() {
            let w = b as f64 - rho;
            if w == 0.0 {
                continue;
            }
            let x = (i + 1) % self.n;
            for (k, a) in acc.iter_mut().enumerate() {
                *a += self.analysis[k][x] * w;
            }
        }
        acc
    }

    fn mirror(&self, half: Vec<Complex64>) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(2 * self.cutoff + 1);
        out.extend(half[1..].iter().rev().map(|z| z.conj()));
        out.extend(half);
        out
    }

    /// `n^{-1} sum_x eta(x) e^{-2 pi i k x/n}` for `|k| <= cutoff`.
    pub fn empirical_modes(&self, state: &OccupancyState) -> Vec<Complex64> {
        let scale = 1.0 / self.n as f64;
        self.mirror(self.raw_modes(state, 0.0).into_iter().map(|z| z * scale).collect())
    }

    /// `n^{-1/2} sum_x (eta(x) - rho) e^{-2 pi i k x/n}` for `|k| <= cutoff`.
    pub fn fluctuation_modes(&self, state: &OccupancyState, rho: f64) -> Vec<Complex64> {
        let scale = 1.0 / (self.n as f64).sqrt();
        self.mirror(self.raw_modes(state, rho).into_iter().map(|z| z * scale).collect())
    }
}
