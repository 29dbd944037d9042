//! Exact-identity sweep over a grid of sizes, presets and densities.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::closed_form::{coordinate_action, drift_closed_form, quadratic_variation_integrand, DiscreteTestFunction};
use super::forms::{carre_du_champ, dirichlet_form, quadratic_form, symmetrized_form};
use super::{check_invariance, GeneratorMatrix, MeasureVector};
use crate::field::psi;
use crate::rng::replica_rng;
use crate::shuffle::Preset;
use crate::Result;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleGrid {
    pub sizes: Vec<usize>,
    pub densities: Vec<f64>,
    pub presets: Vec<Preset>,
    /// Time-scale exponents used in the drift and quadratic-variation checks.
    pub betas: Vec<u32>,
    /// Test functions are `psi_k` for `|k| <= max_mode`.
    pub max_mode: i32,
    /// Random functions per (size, preset, density) in the symmetrization check.
    pub random_functions: usize,
    pub seed: u64,
    pub threshold: f64,
}

impl Default for OracleGrid {
    fn default() -> Self {
        Self {
            sizes: (4..=10).collect(),
            densities: vec![0.0, 0.25, 0.5, 0.9],
            presets: vec![Preset::Rudvalis, Preset::Symmetric, Preset::weak_asym(1.0)],
            betas: vec![1, 2],
            max_mode: 3,
            random_functions: 50,
            seed: 0,
            threshold: 1e-12,
        }
    }
}

/// Largest residual of each identity for one (preset, size) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub preset: String,
    pub n: usize,
    pub product_invariance: f64,
    pub hyperplane_invariance: f64,
    pub coordinate_formulas: f64,
    pub drift_identity: f64,
    pub carre_du_champ: f64,
    pub dirichlet_symmetrization: f64,
}

impl OracleRecord {
    pub fn max_residual(&self) -> f64 {
        [
            self.product_invariance,
            self.hyperplane_invariance,
            self.coordinate_formulas,
            self.drift_identity,
            self.carre_du_champ,
            self.dirichlet_symmetrization,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub schema_version: u32,
    pub grid: OracleGrid,
    pub records: Vec<OracleRecord>,
    pub max_residual: f64,
    pub pass: bool,
}

fn max_abs_diff(a: impl IntoIterator<Item = f64>, b: impl IntoIterator<Item = f64>) -> f64 {
    a.into_iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn record(grid: &OracleGrid, preset: &Preset, n: usize) -> Result<OracleRecord> {
    let beta = if matches!(preset, Preset::WeakAsym { .. }) { 2 } else { 1 };
    let q = GeneratorMatrix::build(n, &preset.scheme(beta)?)?;
    let rates = *q.rates();
    let dim = q.dim();
    let nf = n as f64;

    let mut product_invariance = 0.0f64;
    for &rho in &grid.densities {
        product_invariance = product_invariance.max(check_invariance(&q, &MeasureVector::bernoulli(n, rho)?)?);
    }
    let mut hyperplane_invariance = 0.0f64;
    for particles in 0..=n {
        let mu = MeasureVector::hyperplane_uniform(n, particles)?;
        hyperplane_invariance = hyperplane_invariance.max(check_invariance(&q, &mu)?);
    }

    let mut coordinate_formulas = 0.0f64;
    for x in 1..=n {
        let coord: Vec<f64> = (0..dim).map(|s| ((s >> (x - 1)) & 1) as f64).collect();
        let closed = (0..dim).map(|s| coordinate_action(&rates, n, s, x));
        coordinate_formulas = coordinate_formulas.max(max_abs_diff(q.apply(&coord), closed));
    }

    let mut drift_identity = 0.0f64;
    let mut carre = 0.0f64;
    for k in -grid.max_mode..=grid.max_mode {
        let f = DiscreteTestFunction::from_fn(n, |u| psi(k, u));
        let pairing: Vec<f64> = (0..dim).map(|s| f.pairing(s)).collect();
        let qf = q.apply(&pairing);
        let gamma = carre_du_champ(&q, &pairing);
        for &beta in &grid.betas {
            let speed = nf.powi(beta as i32);
            drift_identity = drift_identity.max(max_abs_diff(
                qf.iter().map(|v| speed * v),
                (0..dim).map(|s| drift_closed_form(&rates, beta, &f, s)),
            ));
            carre = carre.max(max_abs_diff(
                gamma.iter().map(|v| speed * v),
                (0..dim).map(|s| quadratic_variation_integrand(&rates, beta, &f, s)),
            ));
        }
    }

    let mut dirichlet_symmetrization = 0.0f64;
    for (i, &rho) in grid.densities.iter().enumerate() {
        let nu = MeasureVector::bernoulli(n, rho)?;
        let stream = ((n as u64) << 32) | ((i as u64) << 16) | preset_tag(preset);
        let mut rng = replica_rng(grid.seed, stream);
        for _ in 0..grid.random_functions {
            let h: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
            let lhs = quadratic_form(&q, &h, &nu)?;
            let rhs = symmetrized_form(&q, &h, &nu)?;
            // density form on g = h^2 against the quadratic form of |h|
            let g: Vec<f64> = h.iter().map(|v| v * v).collect();
            let root: Vec<f64> = h.iter().map(|v| v.abs()).collect();
            let density = dirichlet_form(&q, &g, &nu)?;
            let via_root = quadratic_form(&q, &root, &nu)?;
            dirichlet_symmetrization = dirichlet_symmetrization
                .max((lhs - rhs).abs())
                .max((density - via_root).abs());
        }
    }

    Ok(OracleRecord {
        preset: preset.name().to_string(),
        n,
        product_invariance,
        hyperplane_invariance,
        coordinate_formulas,
        drift_identity,
        carre_du_champ: carre,
        dirichlet_symmetrization,
    })
}

fn preset_tag(preset: &Preset) -> u64 {
    match preset {
        Preset::Rudvalis => 1,
        Preset::Symmetric => 2,
        Preset::WeakAsym { .. } => 3,
    }
}

/// Evaluate every exact identity over the grid.
pub fn validate_grid(grid: &OracleGrid) -> Result<ValidationReport> {
    let mut records = Vec::new();
    for preset in &grid.presets {
        for &n in &grid.sizes {
            records.push(record(grid, preset, n)?);
        }
    }
    let max_residual = records.iter().map(OracleRecord::max_residual).fold(0.0, f64::max);
    Ok(ValidationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        grid: grid.clone(),
        pass: max_residual <= grid.threshold,
        records,
        max_residual,
    })
}
