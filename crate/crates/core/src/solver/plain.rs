//! Plain discounted value iteration.

use alloc::vec;
use alloc::vec::Vec;

use crate::params::ModelParams;

use super::tables::{build_q, QTable, ValueTable};
use super::{check_inputs, expect, SolveError, SuccessorTable};

/// Iterates the Bellman backup from `V = 0` until the sup-norm residual
/// drops below `epsilon` or `max_iters` backups have run; the returned
/// table records which condition fired. The Q-table is rebuilt from the
/// final values.
pub fn value_iteration(
    params: &ModelParams,
    epsilon: f64,
    max_iters: usize,
) -> Result<(ValueTable, QTable), SolveError> {
    let space = check_inputs(params, epsilon, max_iters)?;
    let succ = SuccessorTable::new(&space);
    let n = space.len();
    let p = params.p;
    let alpha = params.alpha;

    let mut prev = vec![0.0f64; n];
    let mut next = vec![0.0f64; n];
    let mut history = Vec::new();
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iters {
        residual = 0.0f64;
        for pair in 0..n / 2 {
            let i = 2 * pair;
            let c = succ.cost_of(pair);
            let v_even = c + alpha * expect(&prev, succ.skip_of(i), p);
            let q0 = c + alpha * expect(&prev, succ.skip_of(i + 1), p);
            let q1 = c + alpha * expect(&prev, succ.switch_of(pair), p);
            let v_odd = if q1 <= q0 { q1 } else { q0 };
            residual = residual.max((v_even - prev[i]).abs());
            residual = residual.max((v_odd - prev[i + 1]).abs());
            next[i] = v_even;
            next[i + 1] = v_odd;
        }
        core::mem::swap(&mut prev, &mut next);
        iterations += 1;
        history.push(residual);
        if residual < epsilon {
            converged = true;
            break;
        }
    }

    let q = build_q(&space, &succ, &prev, alpha, (iterations, residual));
    let table = ValueTable {
        params: *params,
        values: prev,
        iterations,
        residual,
        converged,
        residual_history: history,
    };
    Ok((table, q))
}
