//! Measurements on configurations: Fourier pairings of the empirical
//! measure and of the density fluctuation field, negative Sobolev norms and
//! replica statistics.
//!
//! Site `x` of a deck of size `n` sits at `u = x/n` on the unit torus, so
//! position `n` and `u = 0` coincide.
//!
//! Complex modes use the analysis convention
//! `Y(k) = n^{-1/2} sum_x (eta(x) - rho) e^{-2 pi i k x / n}`, which makes
//! `Y(-k)` the conjugate of `Y(k)` and links the real basis through
//! `Y(psi_k) = sqrt(2) Re Y(k)` and `Y(psi_{-k}) = sqrt(2) Im Y(k)` for
//! `k > 0`.

mod basis;
mod sample;
mod sobolev;
mod stats;

pub use basis::{complex_from_psi, gamma, mode_index, psi, psi_from_complex, FourierBasis};
pub use sample::{FieldKind, FieldRecord, FieldSample, CSV_HEADER};
pub use sobolev::{sobolev_inner, sobolev_minus_norm};
pub use stats::{covariance, ComplexSummary, Summary};

use crate::shuffle::OccupancyState;

/// `n^{-1} sum_x eta(x) f(x/n)` with `f` tabulated on `x = 0..n`.
pub fn pair_empirical(state: &OccupancyState, f: &[f64]) -> f64 {
    let n = state.len();
    debug_assert_eq!(f.len(), n);
    let sum: f64 = state
        .iter()
        .enumerate()
        .filter(|&(_, b)| b == 1)
        .map(|(i, _)| f[(i + 1) % n])
        .sum();
    sum / n as f64
}

/// `n^{-1/2} sum_x (eta(x) - rho) f(x/n)` with `f` tabulated on `x = 0..n`.
pub fn pair_fluctuation(state: &OccupancyState, rho: f64, f: &[f64]) -> f64 {
    let n = state.len();
    debug_assert_eq!(f.len(), n);
    let sum: f64 = state
        .iter()
        .enumerate()
        .map(|(i, b)| (b as f64 - rho) * f[(i + 1) % n])
        .sum();
    sum / (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tabulate(n: usize, k: i32) -> Vec<f64> {
        (0..n).map(|x| psi(k, x as f64 / n as f64)).collect()
    }

    #[test]
    fn trivial_pairings() {
        let ones = OccupancyState::full(8).unwrap();
        let zeros = OccupancyState::empty(8).unwrap();
        assert!((pair_empirical(&ones, &tabulate(8, 0)) - 1.0).abs() < 1e-15);
        for k in -2..=2 {
            assert_eq!(pair_empirical(&zeros, &tabulate(8, k)), 0.0);
            assert_eq!(pair_fluctuation(&zeros, 0.0, &tabulate(8, k)), 0.0);
        }
    }

    #[test]
    fn alternating_state_has_no_first_cosine() {
        let s = OccupancyState::from_bits(&[1, 0, 1, 0]).unwrap();
        assert!(pair_empirical(&s, &tabulate(4, 1)).abs() < 1e-15);
    }

    #[test]
    fn position_n_is_the_origin() {
        let s = OccupancyState::from_bits(&[0, 0, 0, 0, 0, 1]).unwrap();
        let f: Vec<f64> = (0..6).map(|x| x as f64).collect();
        assert_eq!(pair_empirical(&s, &f), 0.0);
        let s = OccupancyState::from_bits(&[1, 0, 0, 0, 0, 0]).unwrap();
        assert!((pair_empirical(&s, &f) - 1.0 / 6.0).abs() < 1e-15);
    }
}
