//! Predicted versus estimated signatures along invariant lifts of cycles.

use num_complex::Complex64;
use serde::Serialize;

use super::index::{estimate_from_entries, halving_schedule, radius_scan, SignatureEstimate};
use super::verdict::{verdict_from_entries, Regularity};
use super::EngineConfig;
use crate::dynamics::{periodic_cycles, Cycle, CycleLabel, Polynomial};
use crate::error::Result;
use crate::pullback::{BackwardOrbit, PullbackChain};
use crate::seqlattice::{Signature, TailClass};

/// Steps and distance used to decide whether a critical point's forward
/// orbit is captured by an attracting or parabolic cycle.
const CAPTURE_STEPS: usize = 10_000;
const CAPTURE_DISTANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prediction {
    /// Candidate `k` is the signature predicted for shift offset `k`.
    #[serde(serialize_with = "signature_list")]
    pub candidates: Vec<Signature>,
    /// Whether the critical point's orbit is captured by the cycle.
    pub participates: bool,
    pub note: Option<String>,
}

fn signature_list<S: serde::Serializer>(v: &[Signature], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Prediction {
    /// Offset `k` whose candidate equals `value`.
    pub fn offset_of(&self, value: &Signature) -> Option<usize> {
        self.candidates.iter().position(|c| c == value)
    }
}

fn captured(f: &Polynomial, cycle: &Cycle, c: Complex64) -> bool {
    let mut z = c;
    for _ in 0..=CAPTURE_STEPS {
        if cycle.points.iter().any(|p| (p - z).norm() <= CAPTURE_DISTANCE) {
            return true;
        }
        z = f.eval(z);
        if !z.norm().is_finite() || z.norm() > f.escape_radius() {
            return false;
        }
    }
    false
}

/// Repelling and irrationally neutral cycles predict the bottom signature
/// (the latter assuming linearizability); attracting, super-attracting and
/// parabolic cycles predict `shift_k(α[sq(n)])` for some `0 <= k < n` at
/// every critical point their basin captures, and bottom elsewhere.
pub fn predict_signature(f: &Polynomial, cycle: &Cycle, c: Complex64) -> Prediction {
    match cycle.label {
        CycleLabel::Repelling => Prediction {
            candidates: vec![Signature::bottom()],
            participates: false,
            note: None,
        },
        CycleLabel::NeutralIrrational => Prediction {
            candidates: vec![Signature::bottom()],
            participates: false,
            note: Some("Siegel-case prediction".into()),
        },
        CycleLabel::AttractingNonSuper | CycleLabel::SuperAttracting | CycleLabel::Parabolic { .. } => {
            if captured(f, cycle, c) {
                let n = cycle.period;
                let base = Signature::principal(TailClass::sq(n).expect("period >= 1"));
                Prediction {
                    candidates: (0..n).map(|k| base.shift(k as i64)).collect(),
                    participates: true,
                    note: None,
                }
            } else {
                Prediction {
                    candidates: vec![Signature::bottom()],
                    participates: false,
                    note: Some("critical orbit not captured by the cycle".into()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub period: usize,
    #[serde(serialize_with = "crate::report::complex_vec")]
    pub points: Vec<Complex64>,
    #[serde(serialize_with = "crate::report::complex")]
    pub multiplier: Complex64,
    pub label: CycleLabel,
    /// 1-based cycle point the invariant lift starts from.
    pub base: usize,
    pub critical_index: usize,
    #[serde(serialize_with = "crate::report::complex")]
    pub critical_point: Complex64,
    pub prediction: Prediction,
    pub estimate: Option<SignatureEstimate>,
    pub error: Option<String>,
    pub observed_k: Option<usize>,
    /// `None` when the estimate is not Stable.
    pub matched: Option<bool>,
    pub regularity: Regularity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub stable_rows: usize,
    pub pass: bool,
    pub radii: Vec<f64>,
    pub depth: usize,
}

/// Runs prediction and estimation for every cycle of period `1..=n_max`
/// (invariant lift based at the cycle's first point) and every critical
/// point, over the schedule `r0 · 2^{-j}`, `j < steps`.
pub fn verify_cycle_theorem(
    f: &Polynomial,
    critical: &[Complex64],
    n_max: usize,
    r0: f64,
    steps: usize,
    depth: usize,
    cfg: &EngineConfig,
) -> Result<VerifyReport> {
    let radii = halving_schedule(r0, steps);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for cycle in periodic_cycles(f, n, &cfg.tolerances, &cfg.trace.roots)? {
            let base = 1;
            let orbit = BackwardOrbit::from_cycle(&cycle, base)?;
            let scan = radius_scan(f, &orbit, critical, &radii, depth, cfg)?;
            let regularity = verdict_from_entries(scan.clone(), depth).verdict;
            for (ci, &c) in critical.iter().enumerate() {
                let prediction = predict_signature(f, &cycle, c);
                let entries = scan.iter().map(|row| row[ci].clone()).collect();
                let (estimate, error) = match estimate_from_entries(entries, depth) {
                    Ok(e) => (Some(e), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                let stable = estimate.as_ref().filter(|e| e.is_stable());
                let observed_k = stable.and_then(|e| prediction.offset_of(&e.value));
                let matched = stable.map(|_| observed_k.is_some());
                rows.push(VerifyRow {
                    period: n,
                    points: cycle.points.clone(),
                    multiplier: cycle.multiplier,
                    label: cycle.label,
                    base,
                    critical_index: ci,
                    critical_point: c,
                    prediction,
                    estimate,
                    error,
                    observed_k,
                    matched,
                    regularity,
                });
            }
        }
    }
    let stable_rows = rows.iter().filter(|r| r.matched.is_some()).count();
    let pass = rows.iter().all(|r| r.matched != Some(false));
    Ok(VerifyReport {
        rows,
        stable_rows,
        pass,
        radii,
        depth,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingCount {
    /// Levels containing a critical point.
    pub count: usize,
    /// 1-based levels counted.
    pub levels: Vec<usize>,
    /// `2^count` distinct lift classes; `None` if it overflows.
    pub bound: Option<u128>,
    pub complete: bool,
}

/// Each level whose pulled-back component contains a critical point admits
/// two different lifts, so `B` such levels witness `2^B` lift classes.
pub fn branching_count(chain: &PullbackChain) -> BranchingCount {
    let levels: Vec<usize> = chain
        .levels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.flags.iter().any(|&b| b))
        .map(|(i, _)| i + 1)
        .collect();
    let count = levels.len();
    BranchingCount {
        count,
        levels,
        bound: 1u128.checked_shl(count as u32),
        complete: chain.is_complete(),
    }
}
