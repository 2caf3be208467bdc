//! Age-of-synchronization scheduling over a rate-limited link: model,
//! solvers, policies, and simulator.
//!
//! A source emits status updates at random; a transmitter relays them
//! over a link that needs `b` slots per update and can either finish
//! the update in flight or drop it for a fresh arrival. The destination's
//! age of synchronization (slots since it fell out of sync) is the cost.
//! This crate builds the truncated MDP for that system, solves it by
//! plain, structured, or relative value iteration, verifies the known
//! structure of the solution (monotone values, per-block switching
//! thresholds), and measures policies by reproducible slot-level
//! simulation of the untruncated dynamics.
//!
//! `no_std`-compatible (with `alloc`); disable the default `std` feature
//! and enable `libm` for embedded use.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("aos-core needs either the `std` feature or the `libm` feature");

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod aoi;
pub mod epochs;
pub mod params;
pub mod policy;
pub mod sim;
pub mod solver;
pub mod space;
pub mod state;
pub mod transition;
