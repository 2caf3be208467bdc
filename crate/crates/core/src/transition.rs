//! Slot dynamics of the synchronization MDP.

use core::fmt;

use crate::params::ModelParams;
use crate::state::{Action, AosState};

/// Distribution over successor states: `a' = 0` with probability `1 - p`
/// and `a' = 1` with probability `p`, collapsed to one entry when `p = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionOutcome {
    entries: [(AosState, f64); 2],
    len: u8,
}

impl TransitionOutcome {
    pub fn entries(&self) -> &[(AosState, f64)] {
        &self.entries[..self.len as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionError {
    InvalidState,
    DisallowedAction,
}

impl fmt::Display for TransitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitionError::InvalidState => write!(f, "state violates model invariants"),
            TransitionError::DisallowedAction => {
                write!(f, "switching requires a fresh arrival")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TransitionError {}

/// Deterministic part of one slot, on untruncated ages.
///
/// Skip: the link drains one slot; the transmitter age advances once it
/// is desynchronized (`delta > 0`) or desynchronizes now (`arrival`),
/// and the destination age advances likewise. If the transmission
/// completes (`l == 1`), the destination resets to the transmitter age
/// and the link idles with both ages in lockstep.
///
/// Switch: the new update (age 0) preempts the link for `b - 1` further
/// slots and the destination ages one more slot. A unit block length
/// finishes within the decision slot itself, delivering immediately.
///
/// Returns `(d', delta', l', delivered)`.
pub(crate) fn raw_step(
    b: u32,
    d: u64,
    delta: u64,
    l: u32,
    arrival: bool,
    action: Action,
) -> (u64, u64, u32, bool) {
    match action {
        Action::Switch => {
            if b == 1 {
                (0, 0, 0, true)
            } else {
                (d + 1, 0, b - 1, false)
            }
        }
        Action::Skip => {
            let delta2 = if delta > 0 || arrival { delta + 1 } else { 0 };
            if l == 1 {
                (delta2, delta2, 0, true)
            } else {
                let d2 = if d > 0 || arrival { d + 1 } else { 0 };
                (d2, delta2, l.saturating_sub(1), false)
            }
        }
    }
}

/// Applies `action` in `state` and returns the successor distribution on
/// the truncated space: ages exceeding `d_max` are capped, keeping idle
/// successors in lockstep.
pub fn transition(
    state: &AosState,
    action: Action,
    params: &ModelParams,
) -> Result<TransitionOutcome, TransitionError> {
    if !state.is_valid(params) {
        return Err(TransitionError::InvalidState);
    }
    if action == Action::Switch && !state.arrival {
        return Err(TransitionError::DisallowedAction);
    }
    let (d2, delta2, l2, _) = raw_step(
        params.b,
        state.d as u64,
        state.delta as u64,
        state.l,
        state.arrival,
        action,
    );
    let (mut d2, mut delta2) = (d2 as u32, delta2 as u32);
    if d2 > params.d_max {
        d2 = params.d_max;
        if l2 == 0 {
            delta2 = params.d_max;
        }
    }
    let next = |a: bool| AosState::new(d2, delta2, l2, a);
    let p = params.p;
    let (entries, len) = if p >= 1.0 {
        ([(next(true), 1.0), (next(true), 0.0)], 1)
    } else {
        ([(next(false), 1.0 - p), (next(true), p)], 2)
    };
    Ok(TransitionOutcome { entries, len })
}
