//! Exact generator of the occupancy chain on the full state space
//! `{0,1}^n`, `n <= 12`.
//!
//! States are bitmasks: bit `x - 1` holds `eta(x)`. The moves are
//! re-implemented here on bitmasks, independently of the circular-buffer
//! simulator, so agreement between the two is a genuine check.

mod closed_form;
mod forms;
mod generator;
mod measure;
mod semigroup;
mod validate;

pub use closed_form::{coordinate_action, drift_closed_form, quadratic_variation_integrand, DiscreteTestFunction};
pub use forms::{carre_du_champ, dirichlet_form, quadratic_form, symmetrized_form};
pub use generator::{apply_move_to_index, GeneratorMatrix, MAX_ORACLE_SIZE};
pub use measure::MeasureVector;
pub use semigroup::{evolve_measure, exact_expectation, UNIFORMIZATION_TOLERANCE};
pub use validate::{validate_grid, OracleGrid, OracleRecord, ValidationReport};

use crate::{Error, Result};

/// Invariance residual `max_zeta |(mu^T Q)(zeta)|`.
pub fn check_invariance(q: &GeneratorMatrix, mu: &MeasureVector) -> Result<f64> {
    if mu.len() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), got: mu.len() });
    }
    let flux = q.left_apply(mu.as_slice());
    Ok(flux.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}
