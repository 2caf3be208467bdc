//! Relative value iteration for the long-run average cost.

use alloc::vec;
use alloc::vec::Vec;

use crate::params::ModelParams;

use super::tables::{build_q, extract_policy, ThresholdTable, ValueTable};
use super::{check_inputs, expect, SolveError, SuccessorTable};

/// Mixing weight of the aperiodicity transformation: each action keeps
/// the chain in place with probability `1 - KAPPA`. Deterministic
/// dynamics (p = 1) make the induced chain periodic, which plain
/// relative value iteration cannot damp on its own; the transformation
/// leaves the average cost and the optimal policy unchanged while
/// scaling the relative values by `1 / KAPPA`. The AoI baseline chain
/// shares the constant.
pub(crate) const KAPPA: f64 = 0.9;

/// Average-cost solver anchored at the fully synchronized idle state.
///
/// Iterates `h <- Th - (Th)(s0)` with the damped operator until the span
/// of `Th - h` falls below `epsilon`; the anchor value of the final
/// sweep estimates the gain. Returned values are rescaled to the
/// undamped chain, and the thresholds come from a dense extraction of
/// the greedy policy, which the rescaling does not affect.
pub fn relative_value_iteration(
    params: &ModelParams,
    epsilon: f64,
    max_iters: usize,
) -> Result<(ValueTable, ThresholdTable, f64), SolveError> {
    let space = check_inputs(params, epsilon, max_iters)?;
    let succ = SuccessorTable::new(&space);
    let n = space.len();
    let p = params.p;

    let mut h = vec![0.0f64; n];
    let mut th = vec![0.0f64; n];
    let mut history = Vec::new();
    let mut span = f64::INFINITY;
    let mut gain = f64::NAN;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iters {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for pair in 0..n / 2 {
            let i = 2 * pair;
            let c = succ.cost_of(pair);
            let stay_even = (1.0 - KAPPA) * h[i];
            let t_even = c + stay_even + KAPPA * expect(&h, succ.skip_of(i), p);
            let e_skip = expect(&h, succ.skip_of(i + 1), p);
            let e_switch = expect(&h, succ.switch_of(pair), p);
            let best = if e_switch <= e_skip { e_switch } else { e_skip };
            let t_odd = c + (1.0 - KAPPA) * h[i + 1] + KAPPA * best;
            th[i] = t_even;
            th[i + 1] = t_odd;
            for (t, old) in [(t_even, h[i]), (t_odd, h[i + 1])] {
                let delta = t - old;
                lo = lo.min(delta);
                hi = hi.max(delta);
            }
        }
        span = hi - lo;
        gain = th[0];
        for i in 0..n {
            h[i] = th[i] - gain;
        }
        iterations += 1;
        history.push(span);
        if span < epsilon {
            converged = true;
            break;
        }
    }

    // Rescale to the undamped chain, under which these are the relative
    // values; the anchor stays exactly zero.
    for v in &mut h {
        *v *= KAPPA;
    }
    let q = build_q(&space, &succ, &h, 1.0, (iterations, span));
    let thresholds = extract_policy(&q)?;
    let table = ValueTable {
        params: *params,
        values: h,
        iterations,
        residual: span,
        converged,
        residual_history: history,
    };
    Ok((table, thresholds, gain))
}
