use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("period word must not be empty")]
    EmptyPeriod,
    #[error("invalid bit {0:?}: expected '0' or '1'")]
    InvalidBit(char),
    #[error("sq(n) requires n >= 1")]
    ZeroPeriod,
    #[error("signature needs at least one generator")]
    EmptySignature,
    #[error("partial meet reaches the bottom class at index {0}; no witness exists")]
    ChainHitsBottom(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("non-finite value encountered at step {step}")]
    NonFinite { step: usize },
    #[error("orbit escaped radius {radius} at step {step}")]
    Escaped { step: usize, radius: f64 },
    #[error("point lies on the curve (distance {distance:e})")]
    OnCurve { distance: f64 },
    #[error("ambiguous branch near critical value {critical_value}: refinement cap reached")]
    AmbiguousBranch { critical_value: Complex64 },
    #[error("lifted curve failed to close within {circuits} circuits")]
    OpenCurve { circuits: u32 },
    #[error("no lifted component encloses the target")]
    TargetNotEnclosed,
    #[error("no P(c) membership: {0}")]
    NoPcMembership(String),
    #[error("greedy search exhausted after {nodes} nodes")]
    SearchExhausted { nodes: usize },
    #[error("every radius was inconclusive")]
    AllInconclusive,
}
