//! Signature estimation from truncated index data, regularity verdicts and
//! checks of the cycle theorem and its supporting structural checks.
//!
//! Every result here is "at depth N over radii R": tails beyond the
//! truncation are never extrapolated.

pub mod checks;
mod cycles;
mod index;
mod probe;
mod verdict;

use serde::Serialize;

use crate::dynamics::Tolerances;
use crate::pullback::TraceConfig;

pub use cycles::{
    branching_count, predict_signature, verify_cycle_theorem, BranchingCount, Prediction, VerifyReport, VerifyRow,
};
pub use index::{
    estimate_from_entries, estimate_signature, halving_schedule, index_class, infer_tail, radius_scan, RadiusEntry,
    SignatureEstimate, TailFit, Verdict,
};
pub use probe::{inverse_critical_probe, ProbeEntry, ProbeReport, ProbeStatus};
pub use verdict::{regularity_verdict, verdict_from_entries, Regularity, RegularityReport};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct EngineConfig {
    pub tolerances: Tolerances,
    pub trace: TraceConfig,
}
