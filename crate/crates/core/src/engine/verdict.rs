//! Regular / irregular verdicts at a fixed truncation.

use num_complex::Complex64;
use serde::Serialize;

use super::index::{radius_scan, RadiusEntry};
use super::EngineConfig;
use crate::dynamics::Polynomial;
use crate::error::Result;
use crate::pullback::BackwardOrbit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Regular,
    Irregular,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub verdict: Regularity,
    /// Radius at which every critical point resolved to the zero class.
    pub witness_radius: Option<f64>,
    /// Radii where at least one critical point resolved.
    pub tested_radii: Vec<f64>,
    pub depth: usize,
    /// `entries[r][c]`.
    pub entries: Vec<Vec<RadiusEntry>>,
    pub caveat: String,
}

/// Regular if at some radius every critical point has an all-zero tail;
/// Irregular if every tested radius (one where some class resolved) shows a
/// nonzero resolved class; Inconclusive otherwise.
pub fn regularity_verdict(
    f: &Polynomial,
    orbit: &BackwardOrbit,
    critical: &[Complex64],
    radii: &[f64],
    depth: usize,
    cfg: &EngineConfig,
) -> Result<RegularityReport> {
    let entries = radius_scan(f, orbit, critical, radii, depth, cfg)?;
    Ok(verdict_from_entries(entries, depth))
}

pub fn verdict_from_entries(entries: Vec<Vec<RadiusEntry>>, depth: usize) -> RegularityReport {
    let radius_of = |row: &[RadiusEntry]| row.first().map(|e| e.radius).unwrap_or(0.0);
    let witness_radius = entries
        .iter()
        .find(|row| row.iter().all(|e| e.class().is_some_and(|c| c.is_zero())))
        .map(|row| radius_of(row));
    let tested: Vec<&Vec<RadiusEntry>> = entries
        .iter()
        .filter(|row| row.iter().any(|e| e.fit.is_some()))
        .collect();
    let all_nonzero = !tested.is_empty()
        && tested
            .iter()
            .all(|row| row.iter().any(|e| e.class().is_some_and(|c| !c.is_zero())));
    let verdict = if witness_radius.is_some() {
        Regularity::Regular
    } else if all_nonzero {
        Regularity::Irregular
    } else {
        Regularity::Inconclusive
    };
    let tested_radii: Vec<f64> = tested.iter().map(|row| radius_of(row)).collect();
    let caveat = format!(
        "at depth {depth} over radii {:?}; tails beyond the truncation are not observed",
        entries.iter().map(|row| radius_of(row)).collect::<Vec<_>>()
    );
    RegularityReport {
        verdict,
        witness_radius,
        tested_radii,
        depth,
        entries,
        caveat,
    }
}
