//! Replica simulation: each experiment turns a resolved configuration into
//! CSV rows. Replicas run on the ambient rayon pool and are collected in
//! replica order, so the rows do not depend on the thread count.

use num_complex::Complex64;
use rayon::prelude::*;
use rlab_core::field::{FieldKind, FieldRecord, FieldSample, FourierBasis};
use rlab_core::reference::{SpdeParams, SpdeState};
use rlab_core::rng::{replica_rng, SimRng};
use rlab_core::shuffle::{
    run_until, sample_bernoulli, sample_hyperplane, step, Dynamics, EventClock, OccupancyState,
};

use crate::config::{BoundarySite, ExperimentKind, InitialLaw, ResolvedConfig};
use crate::error::Result;

/// Streams at or above this offset feed the SPDE integrator, so its paths
/// never share randomness with particle replicas.
pub const SPDE_STREAM_OFFSET: u64 = 1 << 63;

/// Run `f` for every replica in parallel and collect in replica order.
pub fn par_replicas<T, F>(count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    (0..count as u64).into_par_iter().map(f).collect()
}

pub fn initial_state(cfg: &ResolvedConfig, n: usize, rng: &mut SimRng) -> Result<OccupancyState> {
    Ok(match cfg.initial {
        InitialLaw::Bernoulli => sample_bernoulli(n, |u| cfg.profile.eval(u), rng)?,
        InitialLaw::Hyperplane => sample_hyperplane(n, cfg.hyperplane_particles(n), rng)?,
    })
}

fn particles(n: usize, beta: u32, t: f64, replica: u64, state: &OccupancyState) -> FieldSample {
    // recount rather than trust the cached total
    let count = state.iter().filter(|&b| b == 1).count();
    FieldSample::real(FieldKind::Particles, n, beta, t, replica, &[count as f64])
}

/// One trajectory observed at `times`, bracketed by particle counts at the
/// start and at the last observation time.
fn trajectory<F>(cfg: &ResolvedConfig, dynamics: &Dynamics, replica: u64, times: &[f64], mut observe: F) -> Result<Vec<FieldSample>>
where
    F: FnMut(f64, &OccupancyState, &mut Vec<FieldSample>),
{
    let n = dynamics.size();
    let beta = dynamics.beta();
    let mut clock = EventClock::new(replica_rng(cfg.seed, replica));
    let mut state = initial_state(cfg, n, clock.rng_mut())?;
    let mut out = vec![particles(n, beta, 0.0, replica, &state)];
    let end = times.last().copied().unwrap_or(0.0);
    run_until(&mut state, dynamics, &mut clock, end, times, |t, s| observe(t, s, &mut out))?;
    out.push(particles(n, beta, end, replica, &state));
    Ok(out)
}

/// Observation times with `t = 0` prepended when missing.
pub fn with_origin(times: &[f64]) -> Vec<f64> {
    let mut out = times.to_vec();
    if out.first() != Some(&0.0) {
        out.insert(0, 0.0);
    }
    out
}

fn flatten(cfg: &ResolvedConfig, per_replica: Vec<Vec<FieldSample>>) -> Vec<FieldRecord> {
    let name = cfg.experiment.name();
    per_replica
        .into_iter()
        .flatten()
        .flat_map(|s| s.records(name, cfg.seed))
        .collect()
}

/// CSV rows of one experiment.
pub fn simulate(cfg: &ResolvedConfig) -> Result<Vec<FieldRecord>> {
    let n = cfg.n;
    let beta = cfg.scheme.beta;
    match cfg.experiment {
        ExperimentKind::OracleValidate => Ok(Vec::new()),
        ExperimentKind::SpdeReference => spde_records(cfg),
        ExperimentKind::BoundaryDecay => boundary_records(cfg),
        kind => {
            let dynamics = Dynamics::new(&cfg.scheme, n)?;
            let basis = FourierBasis::new(n, cfg.cutoff)?;
            let rho = cfg.centering(n);
            let times = match kind {
                ExperimentKind::FluctsHyperbolic | ExperimentKind::FluctsDiffusive => with_origin(&cfg.times),
                _ => cfg.times.clone(),
            };
            let per_replica = par_replicas(cfg.replicas, |r| {
                trajectory(cfg, &dynamics, r, &times, |t, s, out| match kind {
                    ExperimentKind::HydroHyperbolic | ExperimentKind::HydroDiffusive => {
                        out.push(FieldSample::real(FieldKind::Empirical, n, beta, t, r, &basis.empirical(s)));
                    }
                    ExperimentKind::FluctsHyperbolic => {
                        out.push(FieldSample::real(FieldKind::Fluctuation, n, beta, t, r, &basis.fluctuation(s, rho)));
                    }
                    ExperimentKind::FluctsDiffusive => out.push(FieldSample {
                        kind: FieldKind::FluctuationMode,
                        n,
                        beta,
                        t,
                        replica: r,
                        coeffs: basis.fluctuation_modes(s, rho),
                    }),
                    _ => {
                        out.push(FieldSample::real(FieldKind::Empirical, n, beta, t, r, &basis.empirical(s)));
                        out.push(FieldSample::real(FieldKind::Fluctuation, n, beta, t, r, &basis.fluctuation(s, rho)));
                    }
                })
            })?;
            Ok(flatten(cfg, per_replica))
        }
    }
}

/// `sup_{t <= horizon} |sqrt(n) int_0^t (eta_s(1) - eta_s(r)) ds|^2` along one
/// trajectory. The integrand is constant between events, so the running
/// integral is piecewise linear and its extremes sit at event times.
pub fn boundary_sup(state: &mut OccupancyState, dynamics: &Dynamics, clock: &mut EventClock, site: usize, horizon: f64) -> f64 {
    let n = state.len();
    let diff = |s: &OccupancyState| s.get(1) as f64 - s.get(site) as f64;
    let (mut integral, mut sup, mut last) = (0.0f64, 0.0f64, clock.time());
    let mut value = diff(state);
    loop {
        let next = clock.peek_next_event(dynamics);
        let until = next.min(horizon);
        integral += value * (until - last);
        sup = sup.max(integral.abs());
        if next > horizon {
            break;
        }
        step(state, dynamics, clock);
        last = next;
        value = diff(state);
    }
    n as f64 * sup * sup
}

pub fn boundary_site(site: BoundarySite, n: usize) -> usize {
    match site {
        BoundarySite::Second => 2,
        BoundarySite::Last => n,
    }
}

/// Stream of replica `replica` at rung `rung` of the deck-size ladder.
pub fn ladder_stream(rung: usize, replica: u64) -> u64 {
    ((rung as u64) << 32) | replica
}

fn boundary_records(cfg: &ResolvedConfig) -> Result<Vec<FieldRecord>> {
    let beta = cfg.scheme.beta;
    let mut all = Vec::new();
    for (rung, &n) in cfg.ladder.iter().enumerate() {
        let dynamics = Dynamics::new(&cfg.scheme, n)?;
        let site = boundary_site(cfg.site, n);
        let per_replica = par_replicas(cfg.replicas, |r| {
            let mut clock = EventClock::new(replica_rng(cfg.seed, ladder_stream(rung, r)));
            let mut state = initial_state(cfg, n, clock.rng_mut())?;
            let first = particles(n, beta, 0.0, r, &state);
            let value = boundary_sup(&mut state, &dynamics, &mut clock, site, cfg.horizon);
            Ok(vec![
                first,
                FieldSample::real(FieldKind::Boundary, n, beta, cfg.horizon, r, &[value]),
                particles(n, beta, cfg.horizon, r, &state),
            ])
        })?;
        all.extend(flatten(cfg, per_replica));
    }
    Ok(all)
}

/// Mode vectors of one SPDE path at each of `times`, starting from an
/// equilibrium draw.
pub fn spde_path(params: SpdeParams, times: &[f64], steps: usize, rng: &mut SimRng) -> Result<Vec<Vec<Complex64>>> {
    let mut state = SpdeState::init_equilibrium(params, rng);
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let gap = t - state.time();
        if gap > 0.0 {
            for _ in 0..steps {
                state.step(gap / steps as f64, rng)?;
            }
        }
        out.push(state.modes().to_vec());
    }
    Ok(out)
}

/// All SPDE paths used by comparisons: `paths[p][i]` holds the modes at
/// `times[i]`.
pub fn spde_paths(cfg: &ResolvedConfig, params: SpdeParams, times: &[f64], paths: usize) -> Result<Vec<Vec<Vec<Complex64>>>> {
    par_replicas(paths, |p| {
        let mut rng = replica_rng(cfg.seed, SPDE_STREAM_OFFSET | p);
        spde_path(params, times, cfg.spde.steps, &mut rng)
    })
}

fn spde_records(cfg: &ResolvedConfig) -> Result<Vec<FieldRecord>> {
    let params = cfg.spde_params()?;
    let times = with_origin(&cfg.times);
    let paths = spde_paths(cfg, params, &times, cfg.spde.recorded_paths.min(cfg.spde.paths))?;
    let samples = paths
        .into_iter()
        .enumerate()
        .map(|(p, path)| {
            times
                .iter()
                .zip(path)
                .map(|(&t, coeffs)| FieldSample { kind: FieldKind::Spde, n: cfg.n, beta: 2, t, replica: p as u64, coeffs })
                .collect()
        })
        .collect();
    Ok(flatten(cfg, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rlab_core::shuffle::RateScheme;

    #[test]
    fn boundary_integral_vanishes_on_full_configuration() {
        let d = Dynamics::new(&RateScheme::symmetric(2).unwrap(), 32).unwrap();
        let mut clock = EventClock::new(replica_rng(1, 0));
        let mut s = OccupancyState::full(32).unwrap();
        assert_eq!(boundary_sup(&mut s, &d, &mut clock, 32, 0.5), 0.0);
    }

    #[test]
    fn boundary_integral_without_events_is_linear() {
        // horizon far below the first event time: integral = (eta(1) - eta(r)) t
        let d = Dynamics::new(&RateScheme::symmetric(2).unwrap(), 16).unwrap();
        let mut clock = EventClock::new(replica_rng(1, 0));
        let first = clock.peek_next_event(&d);
        let mut s = OccupancyState::from_bits(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let h = first / 2.0;
        let v = boundary_sup(&mut s, &d, &mut clock, 16, h);
        assert!((v - 16.0 * h * h).abs() < 1e-15);
    }

    #[test]
    fn origin_is_prepended_once() {
        assert_eq!(with_origin(&[0.1, 0.2]), vec![0.0, 0.1, 0.2]);
        assert_eq!(with_origin(&[0.0, 0.2]), vec![0.0, 0.2]);
    }
}
