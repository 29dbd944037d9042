//! The equilibrium autocovariance `rho (1 - rho) e^{-lambda_k t}` of the
//! spectral integrator, confirmed by simulation before the harness relies
//! on it.

use num_complex::Complex64;
use rlab_core::field::{ComplexSummary, Summary};
use rlab_core::reference::{spde_mode_autocovariance, SpdeParams, SpdeState};
use rlab_core::rng::replica_rng;

const PATHS: u64 = 100_000;

/// `(X_s(k), X_{s+t}(k))` per path.
fn pairs(params: SpdeParams, k: i32, s: f64, t: f64, steps: usize, seed: u64) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut first = Vec::with_capacity(PATHS as usize);
    let mut second = Vec::with_capacity(PATHS as usize);
    for r in 0..PATHS {
        let mut rng = replica_rng(seed, r);
        let mut state = SpdeState::init_equilibrium(params, &mut rng);
        if s > 0.0 {
            state.step(s, &mut rng).unwrap();
        }
        first.push(state.mode(k));
        for _ in 0..steps {
            state.step(t / steps as f64, &mut rng).unwrap();
        }
        second.push(state.mode(k));
    }
    (first, second)
}

fn assert_close(est: &ComplexSummary, target: Complex64) {
    assert!(est.re.z_score(target.re).abs() <= 4.0, "re {:?} vs {target}", est.re);
    assert!(est.im.z_score(target.im).abs() <= 4.0, "im {:?} vs {target}", est.im);
}

#[test]
fn initial_variance() {
    let p = SpdeParams::matched(0.25, 0.0, 3, 0.5).unwrap();
    let mut rng = replica_rng(1, 0);
    let sq: Vec<f64> = (0..PATHS)
        .map(|_| {
            // X(psi_1) = sqrt(2) Re X(1)
            let x = std::f64::consts::SQRT_2 * SpdeState::init_equilibrium(p, &mut rng).mode(1).re;
            x * x
        })
        .collect();
    assert!(Summary::of(&sq).unwrap().z_score(0.25).abs() <= 4.0);
}

#[test]
fn heat_autocovariance() {
    let p = SpdeParams::matched(0.25, 0.0, 1, 0.5).unwrap();
    let (x0, xt) = pairs(p, 1, 0.0, 0.1, 4, 2);
    let est = ComplexSummary::of_products(&xt, &x0).unwrap();
    assert_close(&est, spde_mode_autocovariance(&p, 1, 0.1));
    let modulus: Vec<f64> = xt.iter().map(|z| z.norm_sqr()).collect();
    assert!(Summary::of(&modulus).unwrap().z_score(0.25).abs() <= 4.0);
}

#[test]
fn drift_rotates_the_phase() {
    let p = SpdeParams::matched(0.25, 1.0, 1, 0.5).unwrap();
    for t in [0.05, 0.2] {
        let (x0, xt) = pairs(p, 1, 0.0, t, 3, 3);
        assert_close(&ComplexSummary::of_products(&xt, &x0).unwrap(), spde_mode_autocovariance(&p, 1, t));
    }
}

#[test]
fn autocovariance_does_not_depend_on_the_start() {
    let p = SpdeParams::matched(0.25, 1.0, 2, 0.3).unwrap();
    let (xs, xst) = pairs(p, 2, 0.05, 0.02, 2, 4);
    assert_close(&ComplexSummary::of_products(&xst, &xs).unwrap(), spde_mode_autocovariance(&p, 2, 0.02));
}
