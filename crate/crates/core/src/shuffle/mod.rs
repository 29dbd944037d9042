//! Continuous-time generalized Rudvalis shuffle.
//!
//! Positions are numbered `1..=n` from the top of the deck. Four moves act
//! on them:
//!
//! | move                | effect                                        |
//! |---------------------|-----------------------------------------------|
//! | `TopToPenultimate`  | top card is reinserted at position `n - 1`    |
//! | `TopToBottom`       | top card is reinserted at position `n`        |
//! | `BottomToTop`       | bottom card is reinserted at position `1`     |
//! | `SwapTopTwo`        | cards at positions 1 and 2 are exchanged      |
//!
//! Both [`DeckState`] and [`OccupancyState`] keep their entries in a
//! circular buffer with a movable logical origin, so the two cyclic shifts
//! are an index update and every move costs O(1).

mod clock;
mod deck;
mod moves;
mod occupancy;
mod rates;
mod sampling;

pub use clock::{run_until, step, Dynamics, EventClock, RunSummary};
pub use deck::DeckState;
pub use moves::MoveKind;
pub use occupancy::OccupancyState;
pub use rates::{Preset, RateMode, RateScheme, Rates};
pub use sampling::{sample_bernoulli, sample_hyperplane};

/// Minimum deck size: positions 1, 2, n-1 and n must be distinct.
pub const MIN_SIZE: usize = 4;

/// A configuration the four shuffle moves act on.
pub trait Configuration {
    fn size(&self) -> usize;
    fn apply(&mut self, mv: MoveKind);
}

#[inline]
pub(crate) fn physical(origin: usize, position: usize, n: usize) -> usize {
    debug_assert!((1..=n).contains(&position));
    let idx = origin + position - 1;
    if idx >= n {
        idx - n
    } else {
        idx
    }
}
