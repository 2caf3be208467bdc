//! Value iteration that exploits the threshold structure.
//!
//! Within every arrival block `(d, l)` the greedy action is a step
//! function of the transmitter age at every iteration: skips up to some
//! boundary, switches from there on. Instead of minimizing at each age,
//! each block locates its boundary with a bidirectional scan seeded from
//! the previous iteration's thresholds of the neighboring blocks
//! (`tau(d, l+1)` and `tau(d-1, l)` bound `tau(d, l)` from below), then
//! fills the remaining states with the single Q-value their side of the
//! step calls for. Seeds are hints only: the scan always establishes the
//! boundary by explicit comparisons, and the final table is re-extracted
//! densely, so a stale seed costs time, never correctness.

use alloc::vec;
use alloc::vec::Vec;

use crate::params::ModelParams;
use crate::state::AosState;

use super::tables::{build_q, extract_policy, ThresholdTable, ValueTable};
use super::{check_inputs, expect, SolveError, SuccessorTable};

/// Count of two-way minimizations performed, exposed so the saving over
/// plain value iteration (one minimization per arrival state per
/// iteration) can be reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimizationCount {
    pub total: u64,
    pub iterations: usize,
}

impl MinimizationCount {
    /// What plain value iteration spends on the same run: one two-way
    /// minimum per arrival state per iteration.
    pub fn plain_equivalent(&self, space_len: usize) -> u64 {
        self.iterations as u64 * (space_len as u64 / 2)
    }
}

/// Step positions per busy block. Position `k` in `0..=b-l` means the
/// block skips below age `k` and switches from it; `k = b-l` means the
/// block never switches (threshold sentinel `b`).
#[derive(Clone)]
struct StepPositions {
    b: u32,
    d_max: u32,
    /// `pos[l-1][d - (b-l)]`.
    pos: Vec<Vec<u32>>,
}

impl StepPositions {
    fn new(params: &ModelParams) -> Self {
        let b = params.b;
        let pos = (1..b)
            .map(|l| vec![0u32; (params.d_max - (b - l) + 1) as usize])
            .collect();
        StepPositions { b, d_max: params.d_max, pos }
    }

    fn get(&self, d: u32, l: u32) -> Option<u32> {
        if l < 1 || l >= self.b || d < self.b - l || d > self.d_max {
            return None;
        }
        Some(self.pos[(l - 1) as usize][(d - (self.b - l)) as usize])
    }

    fn set(&mut self, d: u32, l: u32, value: u32) {
        self.pos[(l - 1) as usize][(d - (self.b - l)) as usize] = value;
    }

    /// Seed for block `(d, l)`: the larger of the two lower bounds
    /// `tau(d-1, l)` and `tau(d, l+1)`. A never-switching neighbor can
    /// only vouch for the ages it shares with this block, so its
    /// sentinel clips to this block's last age rather than carrying
    /// over.
    fn seed(&self, d: u32, l: u32) -> u32 {
        let width = self.b - l;
        let from_d = self
            .get(d.wrapping_sub(1), l)
            .map(|k| k.min(width - 1))
            .unwrap_or(0);
        let from_l = self
            .get(d, l + 1)
            .map(|k| k.min(width - 1))
            .unwrap_or(0);
        from_d.max(from_l)
    }
}

fn write(
    next: &mut [f64],
    prev: &[f64],
    idx: usize,
    value: f64,
    residual: &mut f64,
) {
    let r = (value - prev[idx]).abs();
    if r > *residual {
        *residual = r;
    }
    next[idx] = value;
}

/// Same fixed point as [`super::value_iteration`], reached with the
/// seeded per-block scans; returns the value table, the thresholds from
/// a dense final pass over the converged Q-values, and the minimization
/// count.
pub fn structured_value_iteration_counted(
    params: &ModelParams,
    epsilon: f64,
    max_iters: usize,
) -> Result<(ValueTable, ThresholdTable, MinimizationCount), SolveError> {
    let space = check_inputs(params, epsilon, max_iters)?;
    let succ = SuccessorTable::new(&space);
    let n = space.len();
    let b = params.b;
    let p = params.p;
    let alpha = params.alpha;

    let mut prev = vec![0.0f64; n];
    let mut next = vec![0.0f64; n];
    let mut steps_prev = StepPositions::new(params);
    let mut steps_cur = StepPositions::new(params);
    let mut history = Vec::new();
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    let mut minimizations = 0u64;
    // Q-values of the block being scanned, indexed by age; NaN marks
    // not-yet-computed entries.
    let mut scratch: Vec<(f64, f64)> = vec![(f64::NAN, f64::NAN); b as usize];

    while iterations < max_iters {
        residual = 0.0f64;
        for d in 0..=params.d_max {
            // Idle pair: plain backup for the no-arrival member, an
            // explicit two-way minimum for the arrival member.
            let idle = space
                .index_of(&AosState::new(d, d, 0, false))
                .expect("idle state is valid");
            let c = succ.cost_of(idle / 2);
            let v_even = c + alpha * expect(&prev, succ.skip_of(idle), p);
            write(&mut next, &prev, idle, v_even, &mut residual);
            let q0 = c + alpha * expect(&prev, succ.skip_of(idle + 1), p);
            let q1 = c + alpha * expect(&prev, succ.switch_of(idle / 2), p);
            minimizations += 1;
            let v_odd = if q1 <= q0 { q1 } else { q0 };
            write(&mut next, &prev, idle + 1, v_odd, &mut residual);

            let l_min = if d >= b { 1 } else { b - d };
            for l in (l_min..b).rev() {
                let width = b - l;
                let base = space
                    .index_of(&AosState::new(d, 0, l, false))
                    .expect("busy block start is valid");
                for (delta, slot) in scratch.iter_mut().enumerate().take(width as usize) {
                    let i = base + 2 * delta;
                    let c = succ.cost_of(i / 2);
                    let v = c + alpha * expect(&prev, succ.skip_of(i), p);
                    write(&mut next, &prev, i, v, &mut residual);
                    *slot = (f64::NAN, f64::NAN);
                }
                // One comparison decides a whole side of the step, so
                // scan outward from the seeded guess.
                let eval = |delta: u32,
                                scratch: &mut [(f64, f64)],
                                minimizations: &mut u64|
                 -> bool {
                    let i = base + 2 * delta as usize + 1;
                    let c = succ.cost_of(i / 2);
                    let q0 = c + alpha * expect(&prev, succ.skip_of(i), p);
                    let q1 = c + alpha * expect(&prev, succ.switch_of(i / 2), p);
                    scratch[delta as usize] = (q0, q1);
                    *minimizations += 1;
                    q1 <= q0
                };
                let seed = steps_prev.seed(d, l);
                let mut k = width;
                if eval(seed, &mut scratch, &mut minimizations) {
                    k = seed;
                    while k > 0 && eval(k - 1, &mut scratch, &mut minimizations) {
                        k -= 1;
                    }
                } else {
                    for probe in seed + 1..width {
                        if eval(probe, &mut scratch, &mut minimizations) {
                            k = probe;
                            break;
                        }
                    }
                }
                steps_cur.set(d, l, k);
                for delta in 0..width {
                    let i = base + 2 * delta as usize + 1;
                    let (q0, q1) = scratch[delta as usize];
                    let c = succ.cost_of(i / 2);
                    let v = if delta >= k {
                        if q1.is_nan() {
                            c + alpha * expect(&prev, succ.switch_of(i / 2), p)
                        } else {
                            q1
                        }
                    } else if q0.is_nan() {
                        c + alpha * expect(&prev, succ.skip_of(i), p)
                    } else {
                        q0
                    };
                    write(&mut next, &prev, i, v, &mut residual);
                }
            }
        }
        core::mem::swap(&mut prev, &mut next);
        core::mem::swap(&mut steps_prev, &mut steps_cur);
        iterations += 1;
        history.push(residual);
        if residual < epsilon {
            converged = true;
            break;
        }
    }

    // Dense re-extraction: every block's step shape is re-established
    // from explicit Q-values of the converged table; seeds played no
    // part in what follows.
    let q = build_q(&space, &succ, &prev, alpha, (iterations, residual));
    let thresholds = extract_policy(&q)?;
    let table = ValueTable {
        params: *params,
        values: prev,
        iterations,
        residual,
        converged,
        residual_history: history,
    };
    Ok((table, thresholds, MinimizationCount { total: minimizations, iterations }))
}

/// [`structured_value_iteration_counted`] without the instrumentation.
pub fn structured_value_iteration(
    params: &ModelParams,
    epsilon: f64,
    max_iters: usize,
) -> Result<(ValueTable, ThresholdTable), SolveError> {
    structured_value_iteration_counted(params, epsilon, max_iters)
        .map(|(v, t, _)| (v, t))
}
