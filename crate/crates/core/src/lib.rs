//! Simulation and verification toolkit for the generalized Rudvalis card
//! shuffle and its black/red occupancy projection on the discrete torus.
//!
//! The crate is split by concern:
//!
//! * [`shuffle`] runs the continuous-time chain (permutation or occupancy)
//!   with constant work per event.
//! * [`oracle`] builds the full generator on `{0,1}^n` for small `n` and
//!   checks closed-form identities exactly.
//! * [`field`] turns configurations into Fourier coefficients of the
//!   empirical measure and of the density fluctuation field.
//! * [`reference`] holds the limiting objects: the transport semigroup and
//!   an exact mode-by-mode integrator for the transport-noise heat equation.

pub mod error;
pub mod field;
pub mod oracle;
pub mod reference;
pub mod rng;
pub mod shuffle;

pub use error::{Error, Result};
