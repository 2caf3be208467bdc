//! Epoch decomposition of simulated traces.
//!
//! Deliveries partition a trace into epochs. Within one epoch the
//! destination age follows a fixed shape: flat at zero until the first
//! source change (if the epoch starts synchronized), then climbing by
//! one each slot until the closing delivery. That shape gives each
//! epoch's age area a closed form, and summing areas plus the partial
//! tail must reproduce the per-slot accumulated age exactly. The
//! identity is the simulator's bookkeeping cross-check.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::sim::Trace;

/// One complete epoch `[start, end)`, closed by a delivery at `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpochRecord {
    /// First slot of the epoch.
    pub start: u64,
    /// One past the last slot; a delivery completes at this boundary.
    pub end: u64,
    pub length: u64,
    /// Destination age at `start`; zero iff the previous delivery was
    /// fresh.
    pub start_aos: u64,
    /// Offset of the first source change inside the epoch, `length` if
    /// there is none.
    pub first_generation_offset: u64,
    /// Per-slot destination age summed over the epoch.
    pub area: u64,
}

/// A trace split into complete epochs plus the unfinished tail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpochDecomposition {
    pub epochs: Vec<EpochRecord>,
    /// Age area of the partial epoch after the last delivery; the whole
    /// trace if nothing was delivered.
    pub residual_area: u64,
}

impl EpochDecomposition {
    /// Complete-epoch areas plus the residual: must equal the trace's
    /// per-slot age sum.
    pub fn total_area(&self) -> u64 {
        self.epochs.iter().map(|e| e.area).sum::<u64>() + self.residual_area
    }
}

fn scan(trace: &Trace, from: u64, to: u64) -> (u64, u64) {
    let length = to - from;
    let mut area = 0u64;
    let mut first = length;
    for t in from..to {
        area += trace.aos[t as usize];
        if trace.arrivals[t as usize] && first == length {
            first = t - from;
        }
    }
    (area, first)
}

/// Splits a trace at its delivery boundaries.
pub fn decompose_epochs(trace: &Trace) -> EpochDecomposition {
    let mut epochs = Vec::with_capacity(trace.deliveries.len());
    let mut prev = 0u64;
    for &boundary in &trace.deliveries {
        let (area, first) = scan(trace, prev, boundary);
        epochs.push(EpochRecord {
            start: prev,
            end: boundary,
            length: boundary - prev,
            start_aos: trace.aos[prev as usize],
            first_generation_offset: first,
            area,
        });
        prev = boundary;
    }
    let (residual_area, _) = scan(trace, prev, trace.aos.len() as u64);
    EpochDecomposition { epochs, residual_area }
}

/// Closed form for an epoch's age area when the age saturates at `cap`,
/// as it does in traces of the truncated chain.
///
/// Synchronized start: the age stays zero through the slot of the first
/// source change and then climbs one per slot; desynchronized start:
/// it climbs from `start_aos` immediately. Either way the climb is an
/// arithmetic series that flattens once it reaches `cap`.
pub fn epoch_area_capped(record: &EpochRecord, cap: u64) -> u64 {
    // Sum of min(from + k, cap) over k in 0..n.
    let ramp = |from: u64, n: u64| -> u64 {
        if n == 0 {
            return 0;
        }
        if from >= cap {
            return cap * n;
        }
        let rising = n.min((cap - from).saturating_add(1));
        from * rising + rising * (rising - 1) / 2 + (n - rising) * cap
    };
    if record.start_aos == 0 {
        let n = record.length - record.first_generation_offset.min(record.length);
        ramp(0, n)
    } else {
        ramp(record.start_aos, record.length)
    }
}

/// [`epoch_area_capped`] for traces of the untruncated dynamics, where
/// the climb never flattens.
pub fn epoch_area_discrete(record: &EpochRecord) -> u64 {
    epoch_area_capped(record, u64::MAX)
}
