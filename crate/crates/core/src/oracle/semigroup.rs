//! Transition semigroup by uniformization:
//! `e^{tQ} = sum_j Poisson(Lambda t; j) P^j` with `P = I + Q / Lambda` and
//! `Lambda` the total jump rate, which bounds every exit rate.

use super::{GeneratorMatrix, MeasureVector};
use crate::{Error, Result};

/// Absolute error target of the truncated Poisson series.
pub const UNIFORMIZATION_TOLERANCE: f64 = 1e-10;

const MAX_TERMS: usize = 2_000_000;

/// Iterates the Poisson(`mean`) weights, stepping in log space so large
/// means do not underflow the leading terms.
struct PoissonWeights {
    mean: f64,
    log_mean: f64,
    log_weight: f64,
    j: usize,
}

impl PoissonWeights {
    fn new(mean: f64) -> Self {
        Self { mean, log_mean: mean.ln(), log_weight: -mean, j: 0 }
    }

    fn next_weight(&mut self) -> f64 {
        if self.j > 0 {
            self.log_weight += self.log_mean - (self.j as f64).ln();
        }
        self.j += 1;
        if self.mean == 0.0 {
            return if self.j == 1 { 1.0 } else { 0.0 };
        }
        self.log_weight.exp()
    }
}

fn uniformize<V, Step, Accumulate>(
    q: &GeneratorMatrix,
    t: f64,
    scale: f64,
    mut v: V,
    mut step: Step,
    mut accumulate: Accumulate,
) -> Result<()>
where
    Step: FnMut(&GeneratorMatrix, &V, f64) -> V,
    Accumulate: FnMut(f64, &V),
{
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("negative time {t}")));
    }
    let lambda = q.rates().total();
    let mean = lambda * t;
    let mut weights = PoissonWeights::new(mean);
    let mut covered = 0.0;
    for j in 0..MAX_TERMS {
        let w = weights.next_weight();
        accumulate(w, &v);
        covered += w;
        let tail = (1.0 - covered).max(0.0);
        if (j as f64) >= mean && tail * scale <= UNIFORMIZATION_TOLERANCE {
            return Ok(());
        }
        v = step(q, &v, lambda);
    }
    Err(Error::UniformizationStalled {
        terms: MAX_TERMS,
        bound: (1.0 - covered).max(0.0) * scale,
        tolerance: UNIFORMIZATION_TOLERANCE,
    })
}

/// `E_{mu0}[F(eta_t)]` for the chain with generator `q`, with `t` in the
/// generator's own time units.
pub fn exact_expectation(q: &GeneratorMatrix, mu0: &MeasureVector, f: &[f64], t: f64) -> Result<f64> {
    for len in [mu0.len(), f.len()] {
        if len != q.dim() {
            return Err(Error::DimensionMismatch { expected: q.dim(), got: len });
        }
    }
    let scale = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut total = 0.0;
    uniformize(
        q,
        t,
        scale,
        f.to_vec(),
        |q, v, lambda| q.apply(v).iter().zip(v).map(|(qv, x)| x + qv / lambda).collect(),
        |w, v| total += w * mu0.expectation(v),
    )?;
    Ok(total)
}

/// Law of `eta_t` started from `mu0`.
pub fn evolve_measure(q: &GeneratorMatrix, mu0: &MeasureVector, t: f64) -> Result<MeasureVector> {
    if mu0.len() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), got: mu0.len() });
    }
    let mut out = vec![0.0; q.dim()];
    uniformize(
        q,
        t,
        1.0,
        mu0.as_slice().to_vec(),
        |q, v, lambda| q.left_apply(v).iter().zip(v).map(|(qv, x)| x + qv / lambda).collect(),
        |w, v| out.iter_mut().zip(v).for_each(|(o, x)| *o += w * x),
    )?;
    MeasureVector::from_vec(mu0.size(), out)
}
