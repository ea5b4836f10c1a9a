//! Probing the inverse-critical property on a finite sample of `P(c)`.

use num_complex::Complex64;
use serde::Serialize;

use super::EngineConfig;
use crate::dynamics::Polynomial;
use crate::pullback::{engulfing_search, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeStatus {
    Satisfied,
    /// Every admissible chain up to the depth was tried.
    Unsatisfied,
    /// The node budget ran out first.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeEntry {
    #[serde(serialize_with = "crate::report::complex")]
    pub point: Complex64,
    pub radius: f64,
    pub status: ProbeStatus,
    /// Level (the seed disk is level 1) whose component contains `c`.
    pub engulfing_level: Option<usize>,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub entries: Vec<ProbeEntry>,
    pub satisfied_fraction: f64,
    pub epsilon: f64,
    pub budget: usize,
    pub depth: usize,
}

/// For every sample point and radius, searches preimage chains that stay
/// `epsilon`-close to the sample for one whose pullback of the disk
/// contains `c` within `depth` levels.
#[allow(clippy::too_many_arguments)]
pub fn inverse_critical_probe(
    f: &Polynomial,
    c: Complex64,
    sample: &[Complex64],
    radii: &[f64],
    depth: usize,
    epsilon: f64,
    budget: usize,
    critical: &[Complex64],
    cfg: &EngineConfig,
) -> ProbeReport {
    let mut entries = Vec::with_capacity(sample.len() * radii.len());
    for &x in sample {
        for &r in radii {
            let outcome = engulfing_search(f, c, x, r, sample, epsilon, depth, budget, critical, &cfg.trace);
            let (status, engulfing_level, nodes) = match outcome {
                SearchOutcome::Found { path, nodes } => (ProbeStatus::Satisfied, Some(path.len() + 1), nodes),
                SearchOutcome::NotFound { nodes } => (ProbeStatus::Unsatisfied, None, nodes),
                SearchOutcome::Exhausted { nodes } => (ProbeStatus::Exhausted, None, nodes),
            };
            entries.push(ProbeEntry {
                point: x,
                radius: r,
                status,
                engulfing_level,
                nodes,
            });
        }
    }
    let satisfied = entries.iter().filter(|e| e.status == ProbeStatus::Satisfied).count();
    let satisfied_fraction = if entries.is_empty() {
        0.0
    } else {
        satisfied as f64 / entries.len() as f64
    };
    ProbeReport {
        entries,
        satisfied_fraction,
        epsilon,
        budget,
        depth,
    }
}
