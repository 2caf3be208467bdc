//! Decision rules mapping slot observations to actions.

use serde::{Deserialize, Serialize};

use crate::aoi::AoiPolicyTable;
use crate::solver::ThresholdTable;
use crate::state::{Action, AosState};

/// A deterministic stationary policy over the full observation: the MDP
/// state plus the caller-tracked AoI (read only by the AoI baseline).
///
/// All four kinds share one convention on states without an arrival
/// (skip is the only move) and on idle states with one (the baselines
/// and the threshold policy all start transmitting; letting an arrival
/// pass while idle is dominated).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Policy {
    /// Never preempts an ongoing transmission.
    AlwaysSkip,
    /// Preempts for every fresh arrival.
    AlwaysSwitch,
    /// Switches iff the transmitter age reaches the block's threshold.
    Threshold(ThresholdTable),
    /// AoI-baseline actions; reads only `(l, a)` and the tracked AoI.
    AoiBaseline(AoiPolicyTable),
}

impl Policy {
    /// Stable identifier used in emitted rows.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Policy::AlwaysSkip => "always_skip",
            Policy::AlwaysSwitch => "always_switch",
            Policy::Threshold(_) => "threshold",
            Policy::AoiBaseline(_) => "aoi_baseline",
        }
    }

    /// Chooses the action for one slot.
    ///
    /// The returned action is always allowed in `state`. Destination ages
    /// beyond a table's `d_max` are decided by the `d = d_max` row,
    /// mirroring the solver's truncation, so callers may pass states from
    /// the untruncated dynamics. Panics if a threshold table does not
    /// cover the queried block, which indicates a malformed table.
    pub fn decide(&self, state: &AosState, aoi: u64) -> Action {
        if !state.arrival {
            return Action::Skip;
        }
        match self {
            Policy::AlwaysSkip => {
                if state.l == 0 {
                    Action::Switch
                } else {
                    Action::Skip
                }
            }
            Policy::AlwaysSwitch => Action::Switch,
            Policy::Threshold(table) => {
                if state.l == 0 {
                    return Action::Switch;
                }
                let d = state.d.min(table.params.d_max);
                let tau = table.tau(d, state.l).expect("table covers every busy block");
                if state.delta >= tau {
                    Action::Switch
                } else {
                    Action::Skip
                }
            }
            Policy::AoiBaseline(table) => table.decide(aoi, state.l),
        }
    }
}
