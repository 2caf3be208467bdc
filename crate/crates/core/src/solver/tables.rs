//! Converged-table containers and threshold extraction.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::params::ModelParams;
use crate::space::StateSpace;
use crate::state::AosState;

use super::{expect, SuccessorTable};

/// A value function over the canonical state order, with convergence
/// metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValueTable {
    pub params: ModelParams,
    /// One value per state, canonical order.
    pub values: Vec<f64>,
    /// Backups performed.
    pub iterations: usize,
    /// Sup-norm of the last update.
    pub residual: f64,
    /// Whether the residual dropped below the requested tolerance before
    /// the iteration guard fired.
    pub converged: bool,
    /// Residual after each iteration, for contraction diagnostics.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residual_history: Vec<f64>,
}

impl ValueTable {
    /// Rebuilds the state-action table of this value function under its
    /// own discount factor.
    ///
    /// Meaningful for discounted solves only: relative values from the
    /// average-cost route would get the wrong lookahead operator.
    pub fn discounted_q(&self) -> QTable {
        let space = StateSpace::new(self.params);
        let succ = SuccessorTable::new(&space);
        build_q(
            &space,
            &succ,
            &self.values,
            self.params.alpha,
            (self.iterations, self.residual),
        )
    }
}

/// State-action values built from a converged value table.
///
/// Skip is stored per state; switch per `(d, delta, l)` pair, meaningful
/// for the arrival member only.
#[derive(Debug, Clone)]
pub struct QTable {
    pub params: ModelParams,
    pub iterations: usize,
    pub residual: f64,
    q_skip: Vec<f64>,
    q_switch: Vec<f64>,
}

impl QTable {
    /// Q-value of skipping in the state at `idx`.
    pub fn skip(&self, idx: usize) -> f64 {
        self.q_skip[idx]
    }

    /// Q-value of switching, or `None` when no arrival is present.
    pub fn switch(&self, idx: usize) -> Option<f64> {
        (idx % 2 == 1).then(|| self.q_switch[idx / 2])
    }

    pub fn len(&self) -> usize {
        self.q_skip.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q_skip.is_empty()
    }
}

/// Builds the Q-table `Q(s; w) = cost(s) + alpha * E[v(s')]` for an
/// arbitrary value assignment. `alpha = 1` yields undiscounted lookahead
/// values, used by the average-cost route.
pub(crate) fn build_q(
    space: &StateSpace,
    succ: &SuccessorTable,
    values: &[f64],
    alpha: f64,
    meta: (usize, f64),
) -> QTable {
    let p = space.params().p;
    let n = space.len();
    let mut q_skip = Vec::with_capacity(n);
    let mut q_switch = Vec::with_capacity(n / 2);
    for i in 0..n {
        let pair = i / 2;
        let c = succ.cost_of(pair);
        q_skip.push(c + alpha * expect(values, succ.skip_of(i), p));
        if i % 2 == 1 {
            q_switch.push(c + alpha * expect(values, succ.switch_of(pair), p));
        }
    }
    QTable {
        params: *space.params(),
        iterations: meta.0,
        residual: meta.1,
        q_skip,
        q_switch,
    }
}

/// Per-block switch thresholds of a converged policy.
///
/// For every busy block `(d, l)` with `1 <= l <= b-1` and `b-l <= d`,
/// `tau(d, l)` is the smallest transmitter age at which an arrival is
/// taken over the ongoing transmission; `tau = b` encodes "always skip
/// in this block". Idle arrivals are always taken and carry no entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdTable {
    pub params: ModelParams,
    pub iterations: usize,
    pub residual: f64,
    /// `rows[l-1][d - (b-l)]` holds `tau(d, l)`.
    rows: Vec<Vec<u32>>,
}

impl ThresholdTable {
    pub(crate) fn from_rows(
        params: ModelParams,
        iterations: usize,
        residual: f64,
        rows: Vec<Vec<u32>>,
    ) -> Self {
        ThresholdTable { params, iterations, residual, rows }
    }

    /// Threshold for the busy block `(d, l)`, or `None` when the block
    /// admits no valid state.
    pub fn tau(&self, d: u32, l: u32) -> Option<u32> {
        if l < 1 || l >= self.params.b || d < self.params.b - l || d > self.params.d_max {
            return None;
        }
        let row = &self.rows[(l - 1) as usize];
        Some(row[(d - (self.params.b - l)) as usize])
    }

    /// Whether two tables encode the same decisions for the same model,
    /// ignoring solver metadata such as iteration counts.
    pub fn same_decisions(&self, other: &ThresholdTable) -> bool {
        self.params.b == other.params.b
            && self.params.d_max == other.params.d_max
            && self.rows == other.rows
    }

    /// All `(d, l, tau)` entries, `l`-major in ascending `d`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        let b = self.params.b;
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            let l = i as u32 + 1;
            row.iter()
                .enumerate()
                .map(move |(j, &tau)| (b - l + j as u32, l, tau))
        })
    }
}

/// A converged Q-table whose greedy actions do not form a single step in
/// the transmitter age within some block: skip up to the threshold,
/// switch from it onward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractError {
    pub d: u32,
    pub l: u32,
    /// Transmitter age at which the step shape breaks.
    pub delta: u32,
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "greedy actions in block (d={}, l={}) are not a step function: \
             violation at delta={}",
            self.d, self.l, self.delta
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExtractError {}

/// Relative tolerance used when double-checking strictness around a
/// threshold; scaled by the magnitude of the compared values.
pub(crate) fn step_tol(a: f64, b: f64) -> f64 {
    1e-9 * (1.0 + a.abs().max(b.abs()))
}

/// Reads the switch threshold of every busy block off a converged
/// Q-table. Ties go to switch. Errors if any block's greedy actions are
/// not a step function of the transmitter age (beyond tolerance).
pub fn extract_policy(q: &QTable) -> Result<ThresholdTable, ExtractError> {
    let params = q.params;
    let space = StateSpace::new(params);
    let b = params.b;
    let mut rows = Vec::with_capacity(b.saturating_sub(1) as usize);
    for l in 1..b {
        let mut row = Vec::with_capacity((params.d_max - (b - l) + 1) as usize);
        for d in (b - l)..=params.d_max {
            let mut tau = b;
            for delta in 0..b - l {
                let idx = space
                    .index_of(&AosState::new(d, delta, l, true))
                    .expect("busy arrival state is valid");
                let q0 = q.skip(idx);
                let q1 = q.switch(idx).expect("arrival state has a switch value");
                if q1 <= q0 {
                    if tau == b {
                        tau = delta;
                    }
                } else if tau < b && q0 + step_tol(q0, q1) < q1 {
                    // Skip re-appearing past the threshold is only
                    // tolerable as floating-point jitter on a tie.
                    return Err(ExtractError { d, l, delta });
                }
            }
            row.push(tau);
        }
        rows.push(row);
    }
    Ok(ThresholdTable::from_rows(params, q.iterations, q.residual, rows))
}
