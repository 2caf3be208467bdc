//! Model parameters shared by the MDP, the solvers, and the simulator.

use core::fmt;

use serde::{Deserialize, Serialize};

/// Parameters of the synchronization model.
///
/// A status update arrives at the transmitter in each slot independently
/// with probability `p`. Transmitting an update occupies the link for `b`
/// whole slots. The destination age of synchronization (AoS) is truncated
/// at `d_max` to keep the state space finite, and `alpha` discounts future
/// cost in the discounted formulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Slots needed to transmit one update, `b >= 1`.
    pub b: u32,
    /// Arrival probability per slot, in `(0, 1]`.
    pub p: f64,
    /// Destination-AoS truncation level, `d_max >= b`.
    pub d_max: u32,
    /// Discount factor, in `(0, 1)`.
    pub alpha: f64,
}

/// Why a parameter set was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamError {
    /// `b` must be at least 1.
    BlockLength,
    /// `p` must lie in `(0, 1]`.
    ArrivalProb,
    /// `d_max` must be at least `b`.
    Truncation,
    /// `alpha` must lie in `(0, 1)`.
    Discount,
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::BlockLength => write!(f, "b must be at least 1"),
            ParamError::ArrivalProb => write!(f, "p must lie in (0, 1]"),
            ParamError::Truncation => write!(f, "d_max must be at least b"),
            ParamError::Discount => write!(f, "alpha must lie in (0, 1)"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParamError {}

impl ModelParams {
    /// Validates every field; `Ok(self)` on success so calls can chain.
    pub fn validate(self) -> Result<Self, ParamError> {
        if self.b < 1 {
            return Err(ParamError::BlockLength);
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(ParamError::ArrivalProb);
        }
        if self.d_max < self.b {
            return Err(ParamError::Truncation);
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ParamError::Discount);
        }
        Ok(self)
    }

    /// The configuration studied throughout: `b = 10`, `d_max = 400`,
    /// `alpha = 0.9999`, with the arrival rate left to the caller.
    pub fn paper_scale(p: f64) -> Self {
        ModelParams { b: 10, p, d_max: 400, alpha: 0.9999 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_reference_configuration() {
        assert!(ModelParams::paper_scale(0.3).validate().is_ok());
    }

    #[test]
    fn rejects_out_of_range_fields() {
        let ok = ModelParams { b: 2, p: 0.5, d_max: 5, alpha: 0.9 };
        assert!(ok.validate().is_ok());
        assert_eq!(
            ModelParams { b: 0, ..ok }.validate(),
            Err(ParamError::BlockLength)
        );
        assert_eq!(
            ModelParams { p: 0.0, ..ok }.validate(),
            Err(ParamError::ArrivalProb)
        );
        assert_eq!(
            ModelParams { p: 1.5, ..ok }.validate(),
            Err(ParamError::ArrivalProb)
        );
        assert_eq!(
            ModelParams { d_max: 1, ..ok }.validate(),
            Err(ParamError::Truncation)
        );
        assert_eq!(
            ModelParams { alpha: 1.0, ..ok }.validate(),
            Err(ParamError::Discount)
        );
        assert!(ModelParams { p: 1.0, ..ok }.validate().is_ok());
    }
}
