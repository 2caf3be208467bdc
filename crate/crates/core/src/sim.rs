//! Slot-level Monte Carlo simulation of the true (untruncated) dynamics.
//!
//! The solver works on a chain truncated at `d_max`; the simulator does
//! not. It runs the real dynamics with unbounded destination age and
//! maps observations beyond the cap onto the policy's `d = d_max` row,
//! so measured averages estimate the actual long-run objective rather
//! than the truncated surrogate. A capped mode that reproduces the
//! truncated chain exactly is available for cross-checking solver gains.
//!
//! The monitor's AoI rides along: it starts at `b` (as if a fresh update
//! had just been delivered), grows by one slot, and resets to `b` at
//! every completion, since an update is always exactly `b` slots old
//! when it arrives.

use alloc::vec::Vec;
use core::fmt;

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::params::{ModelParams, ParamError};
use crate::policy::Policy;
use crate::state::AosState;
use crate::transition::raw_step;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimError {
    Params(ParamError),
    /// `horizon` must be at least 1.
    EmptyHorizon,
    /// `replications` must be at least 1.
    NoReplications,
    /// `warmup` must leave a nonempty measurement window.
    WarmupTooLong,
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::Params(e) => write!(f, "invalid parameters: {e}"),
            SimError::EmptyHorizon => write!(f, "horizon must be at least 1"),
            SimError::NoReplications => write!(f, "replications must be at least 1"),
            SimError::WarmupTooLong => {
                write!(f, "warmup must be smaller than the horizon")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SimError {}

impl From<ParamError> for SimError {
    fn from(e: ParamError) -> Self {
        SimError::Params(e)
    }
}

/// Monte Carlo run description. `alpha` is ignored; the simulator
/// measures undiscounted time averages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: ModelParams,
    pub horizon: u64,
    pub seed: u64,
    pub replications: u32,
    /// Slots discarded from the averages at the start of each replication.
    pub warmup: u64,
    /// Clamp the destination age at `d_max`, reproducing the truncated
    /// chain the solver works on. Off by default.
    pub cap_at_dmax: bool,
}

impl SimConfig {
    /// Sweep defaults: twenty replications of half a million slots.
    pub fn desk(params: ModelParams, seed: u64) -> Self {
        SimConfig {
            params,
            horizon: 500_000,
            seed,
            replications: 20,
            warmup: 0,
            cap_at_dmax: false,
        }
    }

    /// Single full-length run of ten million slots.
    pub fn paper(params: ModelParams, seed: u64) -> Self {
        SimConfig {
            params,
            horizon: 10_000_000,
            seed,
            replications: 1,
            warmup: 0,
            cap_at_dmax: false,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        self.params.validate()?;
        if self.horizon < 1 {
            return Err(SimError::EmptyHorizon);
        }
        if self.replications < 1 {
            return Err(SimError::NoReplications);
        }
        if self.warmup >= self.horizon {
            return Err(SimError::WarmupTooLong);
        }
        Ok(())
    }
}

/// Aggregated averages with replication-level standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub avg_aos: f64,
    pub avg_aoi: f64,
    /// Standard error of the replication means; zero for a single
    /// replication.
    pub std_err_aos: f64,
    pub std_err_aoi: f64,
    /// Deliveries completed inside the measured window, all replications.
    pub epoch_count: u64,
    pub replications: u32,
    pub horizon: u64,
    pub warmup: u64,
    /// AoI at slot zero: one fresh delivery ago.
    pub aoi_initial: u32,
    pub capped: bool,
}

/// One replication's full slot-by-slot record, parallel-indexed by slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub params: ModelParams,
    pub capped: bool,
    /// Destination age at the start of each slot.
    pub aos: Vec<u64>,
    /// Transmitter age at the start of each slot.
    pub delta: Vec<u64>,
    /// Remaining transmission slots at the start of each slot.
    pub l: Vec<u32>,
    /// Monitor AoI at the start of each slot.
    pub aoi: Vec<u64>,
    /// Whether the source changed during each slot.
    pub arrivals: Vec<bool>,
    /// Slot boundaries right after a completed delivery, ascending, in
    /// `1..=horizon`.
    pub deliveries: Vec<u64>,
}

/// Walking state of one replication, mirroring the MDP state plus AoI.
struct Slot {
    d: u64,
    delta: u64,
    l: u32,
    aoi: u64,
}

impl Slot {
    /// Synchronized idle start: `(0, 0, 0)`, AoI one delivery old.
    fn start(b: u32) -> Self {
        Slot { d: 0, delta: 0, l: 0, aoi: b as u64 }
    }

    /// Queries the policy and advances one slot; returns whether a
    /// delivery completed.
    fn advance(&mut self, policy: &Policy, params: &ModelParams, arrival: bool, cap: bool) -> bool {
        let d_cap = params.d_max as u64;
        // The policy sees the capped observation; idle states keep the
        // transmitter age in lockstep so the query stays well-formed.
        let d_seen = self.d.min(d_cap) as u32;
        let delta_seen = if self.l == 0 { d_seen } else { self.delta as u32 };
        let query = AosState::new(d_seen, delta_seen, self.l, arrival);
        let action = policy.decide(&query, self.aoi);
        let (mut d, mut delta, l, delivered) =
            raw_step(params.b, self.d, self.delta, self.l, arrival, action);
        if cap && d > d_cap {
            d = d_cap;
            if l == 0 {
                delta = d_cap;
            }
        }
        self.d = d;
        self.delta = delta;
        self.l = l;
        self.aoi = if delivered { params.b as u64 } else { self.aoi + 1 };
        delivered
    }
}

fn substream(seed: u64, replication: u32) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(replication as u64);
    rng
}

#[cfg(feature = "std")]
fn sqrt64(x: f64) -> f64 {
    x.sqrt()
}

#[cfg(not(feature = "std"))]
fn sqrt64(x: f64) -> f64 {
    libm::sqrt(x)
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, sqrt64(var / n))
}

/// Runs `config.replications` independent replications of `policy` and
/// aggregates time averages over `[warmup, horizon)`.
///
/// Each replication starts from the synchronized idle state and draws
/// its arrivals from an independent, reproducible substream of `seed`;
/// identical inputs give bit-identical results.
pub fn simulate(policy: &Policy, config: &SimConfig) -> Result<SimResult, SimError> {
    config.validate()?;
    let params = config.params;
    let arrivals = Bernoulli::new(params.p).expect("validated probability");
    let measured = (config.horizon - config.warmup) as f64;

    let reps = config.replications as usize;
    let mut aos_means = Vec::with_capacity(reps);
    let mut aoi_means = Vec::with_capacity(reps);
    let mut epoch_count = 0u64;
    for rep in 0..config.replications {
        let mut rng = substream(config.seed, rep);
        let mut slot = Slot::start(params.b);
        let mut aos_sum = 0u64;
        let mut aoi_sum = 0u64;
        for t in 0..config.horizon {
            if t >= config.warmup {
                aos_sum += slot.d;
                aoi_sum += slot.aoi;
            }
            let arrival = arrivals.sample(&mut rng);
            let delivered = slot.advance(policy, &params, arrival, config.cap_at_dmax);
            if delivered && t >= config.warmup {
                epoch_count += 1;
            }
        }
        aos_means.push(aos_sum as f64 / measured);
        aoi_means.push(aoi_sum as f64 / measured);
    }

    let (avg_aos, std_err_aos) = mean_and_se(&aos_means);
    let (avg_aoi, std_err_aoi) = mean_and_se(&aoi_means);
    Ok(SimResult {
        avg_aos,
        avg_aoi,
        std_err_aos,
        std_err_aoi,
        epoch_count,
        replications: config.replications,
        horizon: config.horizon,
        warmup: config.warmup,
        aoi_initial: params.b,
        capped: config.cap_at_dmax,
    })
}

/// Runs a single replication and records everything, for diagnostics and
/// the epoch-decomposition identities. `stream` selects the same
/// substream that [`simulate`] uses for the replication of that index.
pub fn simulate_trace(
    policy: &Policy,
    params: &ModelParams,
    horizon: u64,
    seed: u64,
    stream: u32,
    cap_at_dmax: bool,
) -> Result<Trace, SimError> {
    params.validate()?;
    if horizon < 1 {
        return Err(SimError::EmptyHorizon);
    }
    let arrivals_dist = Bernoulli::new(params.p).expect("validated probability");
    let mut rng = substream(seed, stream);
    let mut slot = Slot::start(params.b);
    let n = horizon as usize;
    let mut trace = Trace {
        params: *params,
        capped: cap_at_dmax,
        aos: Vec::with_capacity(n),
        delta: Vec::with_capacity(n),
        l: Vec::with_capacity(n),
        aoi: Vec::with_capacity(n),
        arrivals: Vec::with_capacity(n),
        deliveries: Vec::new(),
    };
    for t in 0..horizon {
        trace.aos.push(slot.d);
        trace.delta.push(slot.delta);
        trace.l.push(slot.l);
        trace.aoi.push(slot.aoi);
        let arrival = arrivals_dist.sample(&mut rng);
        trace.arrivals.push(arrival);
        if slot.advance(policy, params, arrival, cap_at_dmax) {
            trace.deliveries.push(t + 1);
        }
    }
    Ok(trace)
}
