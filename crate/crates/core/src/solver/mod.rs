//! Discounted and average-cost solvers for the synchronization MDP.
//!
//! Three routes to the optimal policy:
//!
//! * [`value_iteration`]: plain discounted value iteration from `V = 0`,
//!   stopping on a sup-norm residual.
//! * [`structured_value_iteration`]: same fixed point, but each arrival
//!   block `(d, l)` locates its switch threshold by a seeded scan and
//!   inherits the remaining actions instead of minimizing state by state.
//! * [`relative_value_iteration`]: average-cost solver anchored at the
//!   fully synchronized state, returning the gain directly.
//!
//! [`extract_policy`] condenses a converged Q-table into per-block switch
//! thresholds, and [`verify_structure`] checks every structural property
//! the optimal value function is known to satisfy.

mod plain;
mod relative;
mod structured;
mod tables;
mod verify;

pub use plain::value_iteration;
pub use relative::relative_value_iteration;
pub use structured::{
    structured_value_iteration, structured_value_iteration_counted, MinimizationCount,
};
pub use tables::{extract_policy, ExtractError, QTable, ThresholdTable, ValueTable};
pub(crate) use relative::KAPPA;
pub use verify::{verify_structure, PropertyCheck, StructureReport};

use alloc::vec::Vec;
use core::fmt;

use crate::params::{ModelParams, ParamError};
use crate::space::StateSpace;
use crate::state::{Action, AosState};
use crate::transition::raw_step;

/// Default sup-norm stopping tolerance at the reference scale.
pub const DEFAULT_EPSILON: f64 = 1e-4;
/// Stopping tolerance tight enough for exact-oracle comparisons on small
/// instances.
pub const SMALL_EPSILON: f64 = 1e-9;
/// Default iteration guard.
pub const DEFAULT_MAX_ITERS: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    Params(ParamError),
    /// `epsilon` must be positive and finite.
    Epsilon,
    /// `max_iters` must be at least 1.
    MaxIters,
    /// A converged Q-table failed the single-step threshold shape.
    Structure(ExtractError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Params(e) => write!(f, "invalid parameters: {e}"),
            SolveError::Epsilon => write!(f, "epsilon must be positive and finite"),
            SolveError::MaxIters => write!(f, "max_iters must be at least 1"),
            SolveError::Structure(e) => write!(f, "threshold structure violated: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SolveError {}

impl From<ParamError> for SolveError {
    fn from(e: ParamError) -> Self {
        SolveError::Params(e)
    }
}

impl From<ExtractError> for SolveError {
    fn from(e: ExtractError) -> Self {
        SolveError::Structure(e)
    }
}

pub(crate) fn check_solver_inputs(
    params: &ModelParams,
    epsilon: f64,
    max_iters: usize,
) -> Result<(), SolveError> {
    params.validate()?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(SolveError::Epsilon);
    }
    if max_iters < 1 {
        return Err(SolveError::MaxIters);
    }
    Ok(())
}

fn check_inputs(
    params: &ModelParams,
    epsilon: f64,
    max_iters: usize,
) -> Result<StateSpace, SolveError> {
    check_solver_inputs(params, epsilon, max_iters)?;
    Ok(StateSpace::new(*params))
}

/// Precomputed successor indices and costs in canonical layout.
///
/// With `a` innermost, states come in `(a = 0, a = 1)` pairs sharing
/// `(d, delta, l)`; a successor is stored as the index of its `a' = 0`
/// variant, with the `a' = 1` variant adjacent at `+1`. Costs are shared
/// per pair.
pub(crate) struct SuccessorTable {
    /// Per state: skip successor (`a' = 0` variant).
    skip: Vec<u32>,
    /// Per pair: switch successor of the arrival member.
    switch: Vec<u32>,
    /// Per pair: instantaneous cost `d`.
    cost: Vec<f64>,
}

impl SuccessorTable {
    pub(crate) fn new(space: &StateSpace) -> Self {
        let params = space.params();
        let n = space.len();
        let mut skip = Vec::with_capacity(n);
        let mut switch = Vec::with_capacity(n / 2);
        let mut cost = Vec::with_capacity(n / 2);
        let capped = |d: u64, delta: u64, l: u32| {
            let (mut d, mut delta) = (d as u32, delta as u32);
            if d > params.d_max {
                d = params.d_max;
                if l == 0 {
                    delta = params.d_max;
                }
            }
            AosState::new(d, delta, l, false)
        };
        for (i, s) in space.iter() {
            let (d2, delta2, l2, _) =
                raw_step(params.b, s.d as u64, s.delta as u64, s.l, s.arrival, Action::Skip);
            let succ = capped(d2, delta2, l2);
            skip.push(space.index_of(&succ).expect("skip successor is valid") as u32);
            if s.arrival {
                let (d2, delta2, l2, _) = raw_step(
                    params.b,
                    s.d as u64,
                    s.delta as u64,
                    s.l,
                    s.arrival,
                    Action::Switch,
                );
                let succ = capped(d2, delta2, l2);
                switch.push(space.index_of(&succ).expect("switch successor is valid") as u32);
            }
            if i % 2 == 0 {
                cost.push(s.d as f64);
            }
        }
        SuccessorTable { skip, switch, cost }
    }

    #[inline(always)]
    pub(crate) fn skip_of(&self, state_idx: usize) -> usize {
        self.skip[state_idx] as usize
    }

    #[inline(always)]
    pub(crate) fn switch_of(&self, pair_idx: usize) -> usize {
        self.switch[pair_idx] as usize
    }

    #[inline(always)]
    pub(crate) fn cost_of(&self, pair_idx: usize) -> f64 {
        self.cost[pair_idx]
    }
}

/// Expected next value over the arrival flag: the successor pair sits at
/// `(base, base + 1)` for `(a' = 0, a' = 1)`.
#[inline(always)]
pub(crate) fn expect(values: &[f64], base: usize, p: f64) -> f64 {
    (1.0 - p) * values[base] + p * values[base + 1]
}
