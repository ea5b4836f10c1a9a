//! Structural checks on signature estimates. Each check is vacuous (`holds`
//! is `None`) unless the estimates it needs are Stable.

use serde::Serialize;

use super::index::SignatureEstimate;
use super::verdict::Regularity;
use crate::seqlattice::Signature;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub holds: Option<bool>,
    pub detail: String,
}

impl Check {
    fn vacuous(name: &'static str, why: &str) -> Self {
        Self {
            name,
            holds: None,
            detail: why.to_owned(),
        }
    }
}

fn stable(e: &SignatureEstimate) -> Option<&Signature> {
    e.is_stable().then_some(&e.value)
}

/// Two radius schedules on the same orbit give the same signature.
pub fn schedule_independence(a: &SignatureEstimate, b: &SignatureEstimate) -> Check {
    let name = "schedule_independence";
    match (stable(a), stable(b)) {
        (Some(x), Some(y)) => Check {
            name,
            holds: Some(x == y),
            detail: format!("{x} vs {y}"),
        },
        _ => Check::vacuous(name, "an estimate is not Stable"),
    }
}

/// A Stable bottom estimate goes with a Regular verdict and vice versa.
pub fn regularity_bridge(estimates: &[SignatureEstimate], verdict: Regularity) -> Check {
    let name = "regularity_bridge";
    if verdict == Regularity::Inconclusive || estimates.iter().any(|e| !e.is_stable()) {
        return Check::vacuous(name, "verdict or an estimate is inconclusive");
    }
    let all_bottom = estimates.iter().all(|e| e.value.is_bottom());
    Check {
        name,
        holds: Some(all_bottom == (verdict == Regularity::Regular)),
        detail: format!("all bottom: {all_bottom}, verdict: {verdict:?}"),
    }
}

/// Distinct invariant lifts have disjoint signatures away from `{0}`.
pub fn disjointness(a: &SignatureEstimate, b: &SignatureEstimate) -> Check {
    let name = "disjointness";
    match (stable(a), stable(b)) {
        (Some(x), Some(y)) => {
            let meet = x.intersect(y);
            Check {
                name,
                holds: Some(meet.is_bottom()),
                detail: format!("{x} ∩ {y} = {meet}"),
            }
        }
        _ => Check::vacuous(name, "an estimate is not Stable"),
    }
}

/// Deleting the first `m` orbit coordinates shifts the signature by `-m`.
pub fn shift_equivariance(original: &SignatureEstimate, reindexed: &SignatureEstimate, m: usize) -> Check {
    let name = "shift_equivariance";
    match (stable(original), stable(reindexed)) {
        (Some(x), Some(y)) => {
            let want = x.shift(-(m as i64));
            Check {
                name,
                holds: Some(&want == y),
                detail: format!("shift({x}, -{m}) = {want}, reindexed estimate {y}"),
            }
        }
        _ => Check::vacuous(name, "an estimate is not Stable"),
    }
}

/// For orbits that are not invariant lifts: `S ∩ shift(S, k) = {0}` for
/// `1 <= k <= max_shift`.
pub fn nonperiodic_shifts(estimate: &SignatureEstimate, max_shift: usize) -> Check {
    let name = "nonperiodic_shifts";
    let Some(s) = stable(estimate) else {
        return Check::vacuous(name, "estimate is not Stable");
    };
    let bad: Vec<usize> = (1..=max_shift)
        .filter(|&k| !s.intersect(&s.shift(k as i64)).is_bottom())
        .collect();
    Check {
        name,
        holds: Some(bad.is_empty()),
        detail: if bad.is_empty() {
            format!("{s} meets every shift 1..={max_shift} in bottom")
        } else {
            format!("{s} overlaps its shifts {bad:?}")
        },
    }
}
