//! Structural verification of converged tables.
//!
//! The optimal value function and policy of this model carry a stack of
//! provable monotonicity and persistence properties. This module checks
//! all of them exhaustively over the enumerated space and reports each
//! one separately with its first counterexample, so a regression in the
//! solver surfaces as a named property rather than a diverged number.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::params::ModelParams;
use crate::space::StateSpace;
use crate::state::AosState;

use super::tables::{extract_policy, QTable, ValueTable};

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    /// First violation found, if any.
    pub counterexample: Option<String>,
}

/// Results of [`verify_structure`], one entry per property.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub checks: Vec<PropertyCheck>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `a <= b` within the verification tolerance, scaled by magnitude.
fn le_tol(a: f64, b: f64) -> bool {
    a <= b + 1e-9 * (1.0 + a.abs().max(b.abs()))
}

struct Checker<'a> {
    space: StateSpace,
    v: &'a ValueTable,
    q: &'a QTable,
    p: f64,
}

impl Checker<'_> {
    fn value(&self, d: u32, delta: u32, l: u32, a: bool) -> Option<f64> {
        self.space
            .index_of(&AosState::new(d, delta, l, a))
            .map(|i| self.v.values[i])
    }

    /// Requires `V(s1) <= V(s2)` at both arrival flags, and confirms the
    /// ordering survives the expectation over the arrival distribution
    /// (the bridge every inductive proof of these properties rests on).
    fn check_pair(
        &self,
        s1: (u32, u32, u32),
        s2: (u32, u32, u32),
    ) -> Result<(), String> {
        let mut gap = [0.0f64; 2];
        for a in [false, true] {
            let v1 = self
                .value(s1.0, s1.1, s1.2, a)
                .ok_or_else(|| format!("missing state {s1:?}"))?;
            let v2 = self
                .value(s2.0, s2.1, s2.2, a)
                .ok_or_else(|| format!("missing state {s2:?}"))?;
            if !le_tol(v1, v2) {
                return Err(format!(
                    "V(d={}, delta={}, l={}, a={}) = {v1} exceeds \
                     V(d={}, delta={}, l={}, a={}) = {v2}",
                    s1.0, s1.1, s1.2, a as u32, s2.0, s2.1, s2.2, a as u32
                ));
            }
            gap[a as usize] = v2 - v1;
        }
        let expected_gap = (1.0 - self.p) * gap[0] + self.p * gap[1];
        if !le_tol(0.0, expected_gap) {
            return Err(format!(
                "expectation ordering violated between {s1:?} and {s2:?}"
            ));
        }
        Ok(())
    }

    fn greedy_switches(&self, d: u32, delta: u32, l: u32) -> (f64, f64, bool) {
        let i = self
            .space
            .index_of(&AosState::new(d, delta, l, true))
            .expect("valid arrival state");
        let q0 = self.q.skip(i);
        let q1 = self.q.switch(i).expect("arrival state has a switch value");
        (q0, q1, q1 <= q0)
    }

    fn run(
        &self,
        name: &'static str,
        body: impl Fn(&Self) -> Result<(), String>,
    ) -> PropertyCheck {
        match body(self) {
            Ok(()) => PropertyCheck { name, passed: true, counterexample: None },
            Err(ce) => PropertyCheck { name, passed: false, counterexample: Some(ce) },
        }
    }
}

/// Checks every structural property of a converged table and reports
/// them individually. Failures are findings, not panics.
///
/// Properties, exhaustive over valid states:
/// * `value_monotone_in_d_busy` / `value_monotone_in_d_idle`: V grows
///   with the destination age (expectation ordering checked alongside).
/// * `value_monotone_in_delta`: V grows with the transmitter age.
/// * `busy_no_worse_than_idle`: transmitting is no worse than idling at
///   the same destination age.
/// * `completion_dominance`: the just-synchronized idle state is no
///   worse than being one slot short of delivering the same age.
/// * `value_monotone_in_l`: V grows with the remaining transmission
///   time.
/// * `switch_persistence_in_l`: once switching is greedy, it stays
///   greedy for longer remaining times (where the state exists).
/// * `skip_persistence_in_d`: once skipping is greedy, it stays greedy
///   for larger destination ages.
/// * `greedy_actions_step_in_delta`: each block's greedy actions form a
///   single skip-then-switch step.
/// * `threshold_monotone_in_l`: thresholds fall as the remaining time
///   grows, whenever the threshold age exists in the narrower block.
/// * `threshold_monotone_in_d`: thresholds rise with the destination
///   age.
/// * `idle_arrival_switches`: every idle arrival is taken.
pub fn verify_structure(
    v: &ValueTable,
    q: &QTable,
    params: &ModelParams,
) -> StructureReport {
    let ck = Checker { space: StateSpace::new(*params), v, q, p: params.p };
    let b = params.b;
    let d_max = params.d_max;
    let mut checks = Vec::new();

    checks.push(ck.run("value_monotone_in_d_busy", |ck| {
        for l in 1..b {
            for delta in 0..b - l {
                for d in (b - l)..d_max {
                    ck.check_pair((d, delta, l), (d + 1, delta, l))?;
                }
            }
        }
        Ok(())
    }));

    checks.push(ck.run("value_monotone_in_d_idle", |ck| {
        for d in 0..d_max {
            ck.check_pair((d, d, 0), (d + 1, d + 1, 0))?;
        }
        Ok(())
    }));

    checks.push(ck.run("value_monotone_in_delta", |ck| {
        for l in 1..b {
            for d in (b - l)..=d_max {
                for delta in 0..(b - l - 1) {
                    ck.check_pair((d, delta, l), (d, delta + 1, l))?;
                }
            }
        }
        Ok(())
    }));

    checks.push(ck.run("busy_no_worse_than_idle", |ck| {
        for l in 1..b {
            for d in (b - l)..=d_max {
                for delta in 0..b - l {
                    ck.check_pair((d, delta, l), (d, d, 0))?;
                }
            }
        }
        Ok(())
    }));

    checks.push(ck.run("completion_dominance", |ck| {
        if b < 2 {
            return Ok(());
        }
        for d in (b - 1)..=d_max {
            for delta in 0..b - 1 {
                ck.check_pair((delta, delta, 0), (d, delta, 1))?;
            }
        }
        Ok(())
    }));

    checks.push(ck.run("value_monotone_in_l", |ck| {
        for l in 1..b.saturating_sub(1) {
            for d in (b - l)..=d_max {
                for delta in 0..b - l - 1 {
                    // The (d, delta, l+1) partner needs delta < b-l-1
                    // and b-l-1 <= d, both implied here.
                    ck.check_pair((d, delta, l), (d, delta, l + 1))?;
                }
            }
        }
        Ok(())
    }));

    checks.push(ck.run("switch_persistence_in_l", |ck| {
        for l in 1..b {
            for d in (b - l)..=d_max {
                for delta in 0..b - l {
                    let (_, _, switches) = ck.greedy_switches(d, delta, l);
                    if !switches {
                        continue;
                    }
                    for l2 in l + 1..b {
                        if delta >= b - l2 {
                            break;
                        }
                        let (q0, q1, _) = ck.greedy_switches(d, delta, l2);
                        if !le_tol(q1, q0) {
                            return Err(format!(
                                "switch greedy at (d={d}, delta={delta}, l={l}) \
                                 but not at l={l2}: Q1={q1} > Q0={q0}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(ck.run("skip_persistence_in_d", |ck| {
        for l in 1..b {
            for delta in 0..b - l {
                for d in (b - l)..d_max {
                    let (q0, q1, switches) = ck.greedy_switches(d, delta, l);
                    if switches && q1 < q0 {
                        continue;
                    }
                    // Skip is greedy (or tied) here; it must stay no
                    // worse one destination age up.
                    let (q0, q1, _) = ck.greedy_switches(d + 1, delta, l);
                    if !le_tol(q0, q1) {
                        return Err(format!(
                            "skip greedy at (d={d}, delta={delta}, l={l}) \
                             but not at d={}: Q0={q0} > Q1={q1}",
                            d + 1
                        ));
                    }
                }
            }
        }
        Ok(())
    }));

    let thresholds = extract_policy(q);
    checks.push(match &thresholds {
        Ok(_) => PropertyCheck {
            name: "greedy_actions_step_in_delta",
            passed: true,
            counterexample: None,
        },
        Err(e) => PropertyCheck {
            name: "greedy_actions_step_in_delta",
            passed: false,
            counterexample: Some(format!("{e}")),
        },
    });

    checks.push(ck.run("threshold_monotone_in_l", |_| {
        let tau = thresholds
            .as_ref()
            .map_err(|e| format!("no threshold table: {e}"))?;
        for l in 1..b.saturating_sub(1) {
            for d in (b - l)..=d_max {
                let (Some(t1), Some(t2)) = (tau.tau(d, l), tau.tau(d, l + 1)) else {
                    continue;
                };
                // The chain constrains the narrower block only when the
                // switching age exists there too.
                if t1 <= b - l - 2 && t2 > t1 {
                    return Err(format!(
                        "tau(d={d}, l={}) = {t2} exceeds tau(d={d}, l={l}) = {t1}",
                        l + 1
                    ));
                }
            }
        }
        Ok(())
    }));

    checks.push(ck.run("threshold_monotone_in_d", |_| {
        let tau = thresholds
            .as_ref()
            .map_err(|e| format!("no threshold table: {e}"))?;
        for l in 1..b {
            for d in (b - l)..d_max {
                let (Some(t1), Some(t2)) = (tau.tau(d, l), tau.tau(d + 1, l)) else {
                    continue;
                };
                if t2 < t1 {
                    return Err(format!(
                        "tau(d={}, l={l}) = {t2} below tau(d={d}, l={l}) = {t1}",
                        d + 1
                    ));
                }
            }
        }
        Ok(())
    }));

    checks.push(ck.run("idle_arrival_switches", |ck| {
        for d in 0..=d_max {
            let (q0, q1, switches) = ck.greedy_switches(d, d, 0);
            if !switches {
                return Err(format!(
                    "idle arrival at d={d} prefers skip: Q1={q1} > Q0={q0}"
                ));
            }
        }
        Ok(())
    }));

    StructureReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::value_iteration;

    fn params(b: u32, p: f64, d_max: u32, alpha: f64) -> ModelParams {
        ModelParams { b, p, d_max, alpha }
    }

    #[test]
    fn converged_small_tables_pass_all_checks() {
        for (b, d_max) in [(1, 4), (2, 5), (3, 9), (5, 14)] {
            for p in [0.15, 0.6, 1.0] {
                let pr = params(b, p, d_max, 0.95);
                let (v, q) = value_iteration(&pr, 1e-10, 100_000).unwrap();
                let report = verify_structure(&v, &q, &pr);
                assert!(
                    report.all_passed(),
                    "b={b} d_max={d_max} p={p}: {:?}",
                    report.failures().collect::<Vec<_>>()
                );
                assert_eq!(report.checks.len(), 12);
            }
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let pr = params(3, 0.5, 9, 0.95);
        let (mut v, q) = value_iteration(&pr, 1e-10, 100_000).unwrap();
        let mid = v.values.len() / 2;
        v.values[mid] += 50.0;
        let report = verify_structure(&v, &q, &pr);
        assert!(!report.all_passed());
        assert!(report.failures().all(|c| c.counterexample.is_some()));
    }
}
