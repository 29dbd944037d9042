use std::f64::consts::PI;

use num_complex::Complex64;

use crate::field::mode_index;

/// `rho_t(u) = rho_0(u + theta t)`, read on the unit torus.
pub fn transport_solution<F: Fn(f64) -> f64>(profile: F, theta: f64, t: f64, u: f64) -> f64 {
    profile((u + theta * t).rem_euclid(1.0))
}

/// Complex coefficients (indexed `-K..=K`) of `T_t f`: mode `k` picks up
/// the factor `e^{2 pi i k theta t}`.
pub fn transport_modes(modes: &[Complex64], theta: f64, t: f64) -> Vec<Complex64> {
    let cutoff = modes.len() / 2;
    modes
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let k = i as f64 - cutoff as f64;
            z * Complex64::from_polar(1.0, 2.0 * PI * k * theta * t)
        })
        .collect()
}

/// Real-basis coefficients (indexed `-K..=K`) of `T_t f`. Each pair
/// `(psi_k, psi_{-k})` rotates by the angle `2 pi k theta t`.
pub fn transport_fourier(coeffs: &[f64], theta: f64, t: f64) -> Vec<f64> {
    let cutoff = coeffs.len() / 2;
    let mut out = coeffs.to_vec();
    for k in 1..=cutoff as i32 {
        let angle = 2.0 * PI * k as f64 * theta * t;
        let (s, c) = angle.sin_cos();
        let cos_part = coeffs[mode_index(k, cutoff)];
        let sin_part = coeffs[mode_index(-k, cutoff)];
        out[mode_index(k, cutoff)] = cos_part * c - sin_part * s;
        out[mode_index(-k, cutoff)] = cos_part * s + sin_part * c;
    }
    out
}

/// Equilibrium space-time covariance `E[Y_t(f) Y_s(g)]` of the hyperbolic
/// fluctuation field, `rho (1 - rho) <f, T_{t-s} g>` with `T` the transport
/// semigroup at speed `kappa`. Coefficients are in the real basis.
///
/// A particle configuration transported at speed `kappa` satisfies
/// `Y_t(f) = Y_s(f(. - kappa (t - s)))`, which puts the semigroup on the
/// second argument; for `f = g` the order does not matter.
pub fn clt1_covariance(f: &[f64], g: &[f64], lag: f64, rho: f64, kappa: f64) -> f64 {
    assert_eq!(f.len(), g.len(), "coefficient vectors must share a cutoff");
    let moved = transport_fourier(g, kappa, lag);
    rho * (1.0 - rho) * f.iter().zip(&moved).map(|(a, b)| a * b).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{complex_from_psi, psi, psi_from_complex};

    fn unit(k: i32, cutoff: i32) -> Vec<f64> {
        (-cutoff..=cutoff).map(|j| if j == k { 1.0 } else { 0.0 }).collect()
    }

    /// Midpoint-rule coefficients of a smooth periodic function.
    fn quadrature(f: impl Fn(f64) -> f64, cutoff: i32) -> Vec<f64> {
        let m = 4096;
        (-cutoff..=cutoff)
            .map(|k| {
                (0..m)
                    .map(|j| {
                        let u = (j as f64 + 0.5) / m as f64;
                        f(u) * psi(k, u)
                    })
                    .sum::<f64>()
                    / m as f64
            })
            .collect()
    }

    #[test]
    fn solution_shifts_the_profile() {
        let rho0 = |u: f64| 0.5 + (2.0 * PI * u).sin() / 4.0;
        for u in [0.0, 0.1, 0.37, 0.9] {
            assert!((transport_solution(rho0, 0.0, 3.0, u) - rho0(u)).abs() < 1e-15);
            let half = transport_solution(rho0, 1.0, 0.5, u);
            assert!((half - (0.5 - (2.0 * PI * u).sin() / 4.0)).abs() < 1e-12);
            assert!((transport_solution(rho0, 2.5, 0.4, u) - rho0(u)).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_matches_quadrature_of_the_shifted_function() {
        let f = |u: f64| 0.3 + (2.0 * PI * u).cos() - 0.4 * (4.0 * PI * u).sin() + 0.2 * (6.0 * PI * u).cos();
        let (theta, t) = (0.7, 0.33);
        let expected = quadrature(|u| f((u + theta * t).rem_euclid(1.0)), 3);
        let got = transport_fourier(&quadrature(f, 3), theta, t);
        for (a, b) in expected.iter().zip(&got) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn diagonal_matrix_element_is_a_cosine() {
        for k in 1..=3 {
            let shifted = quadrature(|u| psi(k, (u + 0.8 * 0.21).rem_euclid(1.0)), 3);
            let from_rotation = transport_fourier(&unit(k, 3), 0.8, 0.21);
            let expected = (2.0 * PI * k as f64 * 0.8 * 0.21).cos();
            assert!((shifted[(k + 3) as usize] - expected).abs() < 1e-12);
            assert!((from_rotation[(k + 3) as usize] - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn real_and_complex_rotations_agree() {
        let c = vec![0.1, -0.3, 0.2, 0.5, 0.7, -0.2, 0.05];
        let via_complex = psi_from_complex(&transport_modes(&complex_from_psi(&c), 1.3, 0.27));
        let direct = transport_fourier(&c, 1.3, 0.27);
        for (a, b) in via_complex.iter().zip(&direct) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn forward_then_backward_is_identity() {
        let c = vec![0.1, -0.3, 0.2, 0.5, 0.7, -0.2, 0.05];
        let back = transport_fourier(&transport_fourier(&c, 1.0, 0.37), 1.0, -0.37);
        for (a, b) in c.iter().zip(&back) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(transport_fourier(&c, 1.0, 0.37)[3], c[3]);
    }

    #[test]
    fn covariance_examples() {
        for k in -2..=2 {
            assert!((clt1_covariance(&unit(k, 2), &unit(k, 2), 0.0, 0.3, 1.0) - 0.21).abs() < 1e-15);
        }
        assert!(clt1_covariance(&unit(1, 2), &unit(1, 2), 0.25, 0.5, 1.0).abs() < 1e-15);
    }

    #[test]
    fn covariance_is_bilinear() {
        let f = vec![0.1, 0.4, -0.2, 0.3, 0.0];
        let g = vec![-0.5, 0.2, 0.1, 0.7, 0.3];
        let h = vec![0.2, 0.1, 0.9, -0.4, 0.6];
        let gh: Vec<f64> = g.iter().zip(&h).map(|(a, b)| 2.0 * a - 3.0 * b).collect();
        let lhs = clt1_covariance(&f, &gh, 0.3, 0.4, 1.1);
        let rhs = 2.0 * clt1_covariance(&f, &g, 0.3, 0.4, 1.1) - 3.0 * clt1_covariance(&f, &h, 0.3, 0.4, 1.1);
        assert!((lhs - rhs).abs() < 1e-14);
    }
}
