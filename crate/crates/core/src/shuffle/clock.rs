use rand::Rng;
use rand_distr::{Distribution, Exp1};

use super::{Configuration, MoveKind, RateScheme, Rates};
use crate::rng::SimRng;
use crate::{Error, Result};

/// Rates realized at a deck size, with the macroscopic event rate
/// `n^beta * R_n` and cumulative selection weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Dynamics {
    n: usize,
    beta: u32,
    rates: Rates,
    event_rate: f64,
    cumulative: [f64; 4],
}

impl Dynamics {
    pub fn new(scheme: &RateScheme, n: usize) -> Result<Self> {
        if n < super::MIN_SIZE {
            return Err(Error::DeckTooSmall(n));
        }
        let rates = scheme.realize(n)?;
        Self::from_rates(rates, scheme.beta, n)
    }

    pub fn from_rates(rates: Rates, beta: u32, n: usize) -> Result<Self> {
        if n < super::MIN_SIZE {
            return Err(Error::DeckTooSmall(n));
        }
        if beta != 1 && beta != 2 {
            return Err(Error::InvalidBeta(beta));
        }
        rates.validate()?;
        let mut cumulative = [0.0; 4];
        let mut acc = 0.0;
        for (slot, r) in cumulative.iter_mut().zip(rates.as_array()) {
            acc += r;
            *slot = acc;
        }
        Ok(Self {
            n,
            beta,
            rates,
            event_rate: (n as f64).powi(beta as i32) * rates.total(),
            cumulative,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn rates(&self) -> &Rates {
        &self.rates
    }

    /// Total event rate per unit of macroscopic time.
    pub fn event_rate(&self) -> f64 {
        self.event_rate
    }

    /// Move chosen by a uniform draw `u` in `[0, 1)`; zero-rate moves are
    /// never returned.
    #[inline]
    pub fn select(&self, u: f64) -> MoveKind {
        let x = u * self.cumulative[3];
        if x < self.cumulative[0] {
            MoveKind::TopToPenultimate
        } else if x < self.cumulative[1] {
            MoveKind::TopToBottom
        } else if x < self.cumulative[2] {
            MoveKind::BottomToTop
        } else {
            MoveKind::SwapTopTwo
        }
    }
}

/// Macroscopic time, event counter and random stream of one trajectory.
///
/// Each event consumes one standard exponential (the waiting time) and one
/// uniform (the move), in that order. The next event time is drawn lazily
/// and kept, so splitting a run into several `run_until` calls does not
/// alter the trajectory.
#[derive(Debug, Clone)]
pub struct EventClock {
    time: f64,
    events: u64,
    pending: Option<f64>,
    rng: SimRng,
}

impl EventClock {
    pub fn new(rng: SimRng) -> Self {
        Self {
            time: 0.0,
            events: 0,
            pending: None,
            rng,
        }
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn events(&self) -> u64 {
        self.events
    }

    pub fn rng_mut(&mut self) -> &mut SimRng {
        &mut self.rng
    }

    /// Time of the next event without firing it. The waiting time is drawn
    /// once and kept until [`step`] consumes it.
    pub fn peek_next_event(&mut self, dynamics: &Dynamics) -> f64 {
        self.next_event_time(dynamics.event_rate)
    }

    #[inline]
    fn next_event_time(&mut self, event_rate: f64) -> f64 {
        match self.pending {
            Some(t) => t,
            None => {
                let w: f64 = Exp1.sample(&mut self.rng);
                let t = self.time + w / event_rate;
                self.pending = Some(t);
                t
            }
        }
    }
}

/// Fire the next event: advance the clock by an exponential waiting time of
/// rate `n^beta R_n`, pick a move with probability proportional to its rate
/// and apply it.
#[inline]
pub fn step<S: Configuration>(state: &mut S, dynamics: &Dynamics, clock: &mut EventClock) -> MoveKind {
    debug_assert_eq!(state.size(), dynamics.n);
    let t = clock.next_event_time(dynamics.event_rate);
    clock.pending = None;
    clock.time = t;
    clock.events += 1;
    let mv = dynamics.select(clock.rng.random::<f64>());
    state.apply(mv);
    mv
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub events: u64,
    pub final_time: f64,
}

/// Run until macroscopic time `t_target`, calling `observe(tau, state)` at
/// every observation time `tau` with the state in force at `tau`.
pub fn run_until<S, F>(
    state: &mut S,
    dynamics: &Dynamics,
    clock: &mut EventClock,
    t_target: f64,
    observation_times: &[f64],
    mut observe: F,
) -> Result<RunSummary>
where
    S: Configuration,
    F: FnMut(f64, &S),
{
    let start = clock.time;
    let sorted = observation_times.windows(2).all(|w| w[0] <= w[1]);
    let in_range = observation_times.iter().all(|&t| t >= start && t <= t_target);
    if !(t_target >= start) || !sorted || !in_range {
        return Err(Error::InvalidObservationTimes { start, end: t_target });
    }
    let events_before = clock.events;
    let mut pending_obs = observation_times.iter().copied().peekable();
    loop {
        let next = clock.next_event_time(dynamics.event_rate);
        while let Some(tau) = pending_obs.next_if(|&tau| tau < next) {
            observe(tau, state);
        }
        if next > t_target {
            break;
        }
        step(state, dynamics, clock);
    }
    clock.time = t_target;
    Ok(RunSummary {
        events: clock.events - events_before,
        final_time: t_target,
    })
}
