//! Dense enumeration of the truncated state space.

use alloc::vec::Vec;

use crate::params::ModelParams;
use crate::state::AosState;

/// The enumerated valid states for one parameter set, in canonical order
/// (ascending `d`, then `l`, then `delta`, then `a`), with constant-time
/// lookup of a state's dense index.
///
/// `a` is the innermost dimension, so the two arrival variants of each
/// `(d, delta, l)` occupy adjacent slots; solvers exploit this when
/// reading successor values.
#[derive(Debug, Clone)]
pub struct StateSpace {
    params: ModelParams,
    states: Vec<AosState>,
    // offsets[d] = index of the first state with destination age d;
    // one extra entry holds the total count.
    offsets: Vec<usize>,
}

fn tri(n: u32) -> usize {
    (n as usize * (n as usize + 1)) / 2
}

impl StateSpace {
    /// Enumerates every valid state for `params`.
    pub fn new(params: ModelParams) -> Self {
        let b = params.b;
        let mut states = Vec::new();
        let mut offsets = Vec::with_capacity(params.d_max as usize + 2);
        for d in 0..=params.d_max {
            offsets.push(states.len());
            for a in [false, true] {
                states.push(AosState::new(d, d, 0, a));
            }
            let l_min = if d >= b { 1 } else { b - d };
            for l in l_min..b {
                for delta in 0..b - l {
                    for a in [false, true] {
                        states.push(AosState::new(d, delta, l, a));
                    }
                }
            }
        }
        offsets.push(states.len());
        StateSpace { params, states, offsets }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// All states in canonical order.
    pub fn states(&self) -> &[AosState] {
        &self.states
    }

    /// Dense index of `state`, or `None` if it is not a valid state.
    pub fn index_of(&self, state: &AosState) -> Option<usize> {
        if !state.is_valid(&self.params) {
            return None;
        }
        let b = self.params.b;
        let base = self.offsets[state.d as usize];
        let a = state.arrival as usize;
        if state.l == 0 {
            return Some(base + a);
        }
        // Skip the idle pair, then the busy blocks with smaller l. The
        // block for link time l holds b-l transmitter ages, so blocks
        // l_min..l together hold tri(m) - tri(b-l) ages, where
        // m = min(b-1, d) is the largest age count present for this d.
        let m = (b - 1).min(state.d);
        let before = 1 + tri(m) - tri(b - state.l);
        Some(base + 2 * before + 2 * state.delta as usize + a)
    }

    /// Iterates `(index, state)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, AosState)> + '_ {
        self.states.iter().copied().enumerate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(b: u32, d_max: u32) -> ModelParams {
        ModelParams { b, p: 0.5, d_max, alpha: 0.9 }
    }

    /// Brute-force reference: filter every tuple in the bounding box.
    fn exhaustive(params: &ModelParams) -> Vec<AosState> {
        let mut out = Vec::new();
        for d in 0..=params.d_max {
            for l in 0..params.b {
                for delta in 0..=params.d_max {
                    for a in [false, true] {
                        let s = AosState::new(d, delta, l, a);
                        if s.is_valid(params) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn matches_exhaustive_filter() {
        for (b, d_max) in [(1, 4), (2, 2), (2, 5), (3, 5), (4, 9), (10, 25)] {
            let pr = params(b, d_max);
            let space = StateSpace::new(pr);
            let mut reference = exhaustive(&pr);
            reference.sort_by_key(|s| (s.d, s.l, s.delta, s.arrival));
            assert_eq!(space.states(), &reference[..], "b={b} d_max={d_max}");
        }
    }

    #[test]
    fn ten_states_for_smallest_nontrivial_model() {
        let space = StateSpace::new(params(2, 2));
        let expected: Vec<AosState> = [
            (0, 0, 0, false),
            (0, 0, 0, true),
            (1, 1, 0, false),
            (1, 1, 0, true),
            (1, 0, 1, false),
            (1, 0, 1, true),
            (2, 2, 0, false),
            (2, 2, 0, true),
            (2, 0, 1, false),
            (2, 0, 1, true),
        ]
        .into_iter()
        .map(|(d, delta, l, a)| AosState::new(d, delta, l, a))
        .collect();
        assert_eq!(space.states(), &expected[..]);
    }

    #[test]
    fn unit_block_length_enumerates_idle_only() {
        let space = StateSpace::new(params(1, 6));
        assert_eq!(space.len(), 14);
        assert!(space.states().iter().all(|s| s.l == 0 && s.delta == s.d));
    }

    #[test]
    fn index_round_trips() {
        for (b, d_max) in [(1, 3), (2, 2), (3, 7), (10, 30)] {
            let space = StateSpace::new(params(b, d_max));
            for (i, s) in space.iter() {
                assert_eq!(space.index_of(&s), Some(i), "{s:?}");
            }
        }
    }

    #[test]
    fn rejects_invalid_states() {
        let space = StateSpace::new(params(10, 400));
        assert_eq!(space.index_of(&AosState::new(5, 2, 4, false)), None);
        assert_eq!(space.index_of(&AosState::new(401, 401, 0, false)), None);
    }

    #[test]
    fn reference_scale_count() {
        let space = StateSpace::new(ModelParams::paper_scale(0.3));
        assert_eq!(space.len(), 36_322);
    }
}
