//! Limit objects the simulations are compared against: the transport
//! semigroup `T_t f(u) = f(u + theta t)` and the transport-noise heat
//! equation solved exactly mode by mode.

mod spde;
mod transport;

pub use spde::{spde_mode_autocovariance, spde_mean_flow, SpdeParams, SpdeState};
pub use transport::{clt1_covariance, transport_fourier, transport_modes, transport_solution};
