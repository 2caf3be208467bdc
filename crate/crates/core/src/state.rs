//! States and actions of the synchronization MDP.

use serde::{Deserialize, Serialize};

use crate::params::ModelParams;

/// One slot of the decision process.
///
/// * `d` is the destination AoS: slots since the destination last held a
///   fresh copy of the source, truncated at `d_max`.
/// * `delta` is the transmitter AoS: slots since the update held by the
///   transmitter (the packet on the link, or the last delivered one when
///   idle) matched the source.
/// * `l` is the number of slots the current transmission still occupies
///   the link, zero when idle.
/// * `arrival` records whether a new update arrived this slot.
///
/// When the link is idle the transmitter and the destination share the
/// same last synchronization point, so `delta == d`. During a
/// transmission the packet must be strictly fresher than the destination
/// copy will be at delivery time: `delta < b - l <= d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AosState {
    pub d: u32,
    pub delta: u32,
    pub l: u32,
    pub arrival: bool,
}

/// The scheduler's choice when an update arrives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    /// Keep the link as is: continue the ongoing transmission, or stay
    /// idle. Also the only choice when no update arrived.
    Skip,
    /// Start transmitting the update that just arrived, preempting and
    /// discarding any packet currently on the link.
    Switch,
}

impl AosState {
    pub fn new(d: u32, delta: u32, l: u32, arrival: bool) -> Self {
        AosState { d, delta, l, arrival }
    }

    /// Whether the state can occur under the model dynamics:
    /// `(l == 0 and delta == d)` or `(l > 0 and delta < b - l <= d)`,
    /// with `d <= d_max` in either case.
    pub fn is_valid(&self, params: &ModelParams) -> bool {
        if self.d > params.d_max {
            return false;
        }
        if self.l == 0 {
            self.delta == self.d
        } else {
            self.l < params.b
                && self.delta < params.b - self.l
                && params.b - self.l <= self.d
        }
    }

    /// Actions available in this state. `Switch` needs a fresh arrival;
    /// otherwise the only option is to let the slot pass.
    pub fn allowed_actions(&self) -> &'static [Action] {
        if self.arrival {
            &[Action::Skip, Action::Switch]
        } else {
            &[Action::Skip]
        }
    }

    /// Per-slot cost: the destination AoS, regardless of action.
    pub fn cost(&self) -> u32 {
        self.d
    }

    /// Whether the link is idle.
    pub fn is_idle(&self) -> bool {
        self.l == 0
    }
}
