//! Numerical reproduction of the vehicle-following demonstration and the
//! exact models it is checked against.

pub mod models;
mod signal;
mod simulate;
mod statespace;

pub use signal::{Piece, PiecewiseSignal, SignalShape};
pub use simulate::{
    check_exponential_decay, max_decay_deviation, simulate, spacing_error, vehicle_cascade,
    ScenarioConfig, Trajectory,
};
pub use statespace::{build_follower, build_leader, Dense, StateSpace};
