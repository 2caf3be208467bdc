//! Shared oracles for the integration suites.
//!
//! Everything here reaches the dynamics only through the public
//! `transition` API and solves policies by direct linear algebra, so it
//! shares no iteration machinery with the solvers it is used to check.

// Each integration target compiles its own copy and uses a subset.
#![allow(dead_code)]

use aos_core::params::ModelParams;
use aos_core::space::StateSpace;
use aos_core::state::Action;
use aos_core::transition::transition;

/// Sparse row of the policy's transition matrix for state `i`.
pub fn successor_row(space: &StateSpace, i: usize, action: Action) -> Vec<(usize, f64)> {
    let state = &space.states()[i];
    transition(state, action, space.params())
        .expect("valid state and allowed action")
        .entries()
        .iter()
        .map(|(succ, pr)| {
            (space.index_of(succ).expect("successor stays in the space"), *pr)
        })
        .collect()
}

/// Row `i` of `A = I - alpha * P_pi`, dense.
fn system_row(space: &StateSpace, i: usize, action: Action, alpha: f64) -> Vec<f64> {
    let n = space.len();
    let mut row = vec![0.0; n];
    row[i] += 1.0;
    for (j, pr) in successor_row(space, i, action) {
        row[j] -= alpha * pr;
    }
    row
}

/// The action a mask prescribes in state `i`: bit `i / 2` set means the
/// arrival member of that pair switches.
fn mask_action(space: &StateSpace, mask: &[bool], i: usize) -> Action {
    if space.states()[i].arrival && mask[i / 2] {
        Action::Switch
    } else {
        Action::Skip
    }
}

/// Inverts a dense row-major matrix by Gauss-Jordan elimination with
/// partial pivoting. The policy systems are strictly diagonally
/// dominant, so the pivot never degenerates.
pub fn invert(a: &[f64], n: usize) -> Vec<f64> {
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| m[r * n + col].abs().total_cmp(&m[s * n + col].abs()))
            .unwrap();
        assert!(m[pivot_row * n + col].abs() > 1e-12, "singular system");
        if pivot_row != col {
            for j in 0..n {
                m.swap(col * n + j, pivot_row * n + j);
                inv.swap(col * n + j, pivot_row * n + j);
            }
        }
        let pivot = m[col * n + col];
        for j in 0..n {
            m[col * n + j] /= pivot;
            inv[col * n + j] /= pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r * n + col];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                m[r * n + j] -= f * m[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    inv
}

fn dense_system(space: &StateSpace, mask: &[bool], alpha: f64) -> Vec<f64> {
    let n = space.len();
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        let row = system_row(space, i, mask_action(space, mask, i), alpha);
        a[i * n..(i + 1) * n].copy_from_slice(&row);
    }
    a
}

fn costs(space: &StateSpace) -> Vec<f64> {
    space.states().iter().map(|s| s.d as f64).collect()
}

fn mat_vec(a: &[f64], x: &[f64], n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a[i * n..(i + 1) * n].iter().zip(x).map(|(c, v)| c * v).sum())
        .collect()
}

/// Exact discounted value of the deterministic policy given by `mask`
/// (one bit per state pair), solved as a linear system.
pub fn exact_policy_value(params: &ModelParams, mask: &[bool], alpha: f64) -> Vec<f64> {
    let space = StateSpace::new(*params);
    let n = space.len();
    assert_eq!(mask.len(), n / 2);
    let inv = invert(&dense_system(&space, mask, alpha), n);
    mat_vec(&inv, &costs(&space), n)
}

/// Pointwise minimum of the exact values of every deterministic
/// stationary policy, together with the policy count.
///
/// Enumerates masks in Gray-code order so consecutive policies differ in
/// a single arrival state; the inverse of the shifted system then
/// follows from a rank-one update, refreshed from scratch periodically
/// to keep rounding drift out of the minimum.
pub fn brute_force_values(params: &ModelParams, alpha: f64) -> (Vec<f64>, u64) {
    let space = StateSpace::new(*params);
    let n = space.len();
    let pairs = n / 2;
    assert!(pairs <= 24, "policy enumeration is limited to tiny spaces");
    let c = costs(&space);

    let mut mask = vec![false; pairs];
    let mut inv = invert(&dense_system(&space, &mask, alpha), n);
    let mut v = mat_vec(&inv, &c, n);
    let mut v_star = v.clone();

    let total = 1u64 << pairs;
    for t in 1..total {
        let bit = t.trailing_zeros() as usize;
        mask[bit] = !mask[bit];
        let r = 2 * bit + 1;
        if t % 1024 == 0 {
            inv = invert(&dense_system(&space, &mask, alpha), n);
            v = mat_vec(&inv, &c, n);
        } else {
            let old_action = if mask[bit] { Action::Skip } else { Action::Switch };
            let new_action = if mask[bit] { Action::Switch } else { Action::Skip };
            let mut change: Vec<(usize, f64)> = Vec::with_capacity(4);
            for (j, pr) in successor_row(&space, r, new_action) {
                change.push((j, -alpha * pr));
            }
            for (j, pr) in successor_row(&space, r, old_action) {
                change.push((j, alpha * pr));
            }

            // Sherman-Morrison for A' = A + e_r * change^T.
            let w: Vec<f64> = (0..n).map(|i| inv[i * n + r]).collect();
            let denom = 1.0 + change.iter().map(|&(j, x)| x * w[j]).sum::<f64>();
            assert!(denom.abs() > 1e-9, "degenerate policy update");
            let mut u = vec![0.0; n];
            for &(j, x) in &change {
                for k in 0..n {
                    u[k] += x * inv[j * n + k];
                }
            }
            let dot_v = change.iter().map(|&(j, x)| x * v[j]).sum::<f64>();
            for i in 0..n {
                let f = w[i] / denom;
                for k in 0..n {
                    inv[i * n + k] -= f * u[k];
                }
                v[i] -= f * dot_v;
            }
        }
        for (best, val) in v_star.iter_mut().zip(&v) {
            if *val < *best {
                *best = *val;
            }
        }
    }
    (v_star, total)
}

/// Greedy lookahead gaps over a value vector: for every arrival state,
/// `(state index, q_skip, q_switch)` under discount `alpha`.
pub fn greedy_gaps(
    params: &ModelParams,
    values: &[f64],
    alpha: f64,
) -> Vec<(usize, f64, f64)> {
    let space = StateSpace::new(*params);
    let mut out = Vec::new();
    for (i, s) in space.iter() {
        if !s.arrival {
            continue;
        }
        let back = |action| {
            s.d as f64
                + alpha
                    * successor_row(&space, i, action)
                        .iter()
                        .map(|&(j, pr)| pr * values[j])
                        .sum::<f64>()
        };
        out.push((i, back(Action::Skip), back(Action::Switch)));
    }
    out
}
