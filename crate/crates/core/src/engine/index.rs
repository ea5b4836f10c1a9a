//! From index bits to tail classes, and from tail classes over a radius
//! schedule to a signature estimate.

use num_complex::Complex64;
use serde::Serialize;

use super::EngineConfig;
use crate::dynamics::Polynomial;
use crate::error::{Error, Result};
use crate::pullback::{pullback_chain, BackwardOrbit, ChainFailure};
use crate::seqlattice::{meet_chain_reduce, partial_meets, ChainReduction, Signature, TailClass};

/// Eventually periodic reading of a finite bit word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailFit {
    #[serde(serialize_with = "crate::report::display")]
    pub class: TailClass,
    pub preperiod: usize,
    pub period: usize,
}

/// Smallest period `p <= N/4`, then smallest preperiod `s <= N/2`, such
/// that `bits[n] = bits[n+p]` for every `n > s` in range and the periodic
/// part spans at least two full periods.
pub fn infer_tail(bits: &[bool]) -> Option<TailFit> {
    let n = bits.len();
    for p in 1..=n / 4 {
        for s in 0..=n / 2 {
            if n - s < 2 * p {
                break;
            }
            if (s..n - p).all(|i| bits[i] == bits[i + p]) {
                // positions s+1..=s+p (1-based) cover every residue once
                let mut word = vec![false; p];
                for i in s..s + p {
                    word[i % p] = bits[i];
                }
                let class = TailClass::from_residue_word(word).expect("p >= 1");
                return Some(TailFit {
                    class,
                    preperiod: s,
                    period: p,
                });
            }
        }
    }
    None
}

/// Index data of one critical point at one radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusEntry {
    pub radius: f64,
    pub bits: String,
    /// `None` when the word is not confirmably eventually periodic or the
    /// chain did not reach full depth.
    pub fit: Option<TailFit>,
    pub failure: Option<ChainFailure>,
    pub residual: f64,
}

impl RadiusEntry {
    pub fn class(&self) -> Option<&TailClass> {
        self.fit.as_ref().map(|f| &f.class)
    }
}

/// One chain per radius, read for every critical point:
/// `result[r][c]` is the entry for radius `r` and critical point `c`.
pub fn radius_scan(
    f: &Polynomial,
    orbit: &BackwardOrbit,
    critical: &[Complex64],
    radii: &[f64],
    depth: usize,
    cfg: &EngineConfig,
) -> Result<Vec<Vec<RadiusEntry>>> {
    radii
        .iter()
        .map(|&r| {
            let chain = pullback_chain(f, orbit, r, depth, critical, &cfg.trace)?;
            let complete = chain.is_complete();
            (0..critical.len())
                .map(|c| {
                    let bits = chain.index_bits(c)?;
                    let fit = if complete { infer_tail(&bits.as_bools()) } else { None };
                    Ok(RadiusEntry {
                        radius: r,
                        bits: bits.bits,
                        fit,
                        failure: chain.failure.clone(),
                        residual: chain.max_residual(),
                    })
                })
                .collect()
        })
        .collect()
}

/// `indexClass`: the tail class of the index word of `critical[which]` at a
/// single radius. Tracing failures are returned as errors.
pub fn index_class(
    f: &Polynomial,
    orbit: &BackwardOrbit,
    critical: &[Complex64],
    which: usize,
    radius: f64,
    depth: usize,
    cfg: &EngineConfig,
) -> Result<RadiusEntry> {
    if which >= critical.len() {
        return Err(Error::InvalidArgument(format!("critical point {which} out of range")));
    }
    let mut scan = radius_scan(f, orbit, critical, &[radius], depth, cfg)?;
    let entry = scan.remove(0).swap_remove(which);
    match &entry.failure {
        Some(failure) => Err(failure.error.clone()),
        None => Ok(entry),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Stable,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignatureEstimate {
    /// `α(meet)` of the resolved classes; final only when `Stable`.
    #[serde(serialize_with = "crate::report::display")]
    pub value: Signature,
    pub per_radius: Vec<RadiusEntry>,
    /// 1-based schedule index from which the partial meets are constant.
    pub stabilization_index: Option<usize>,
    pub reduction: Option<ChainReduction>,
    pub verdict: Verdict,
    /// Resolved classes never increase as the radius shrinks.
    pub monotone: bool,
    pub depth: usize,
}

impl SignatureEstimate {
    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::Stable
    }
}

fn check_schedule(radii: &[f64]) -> Result<()> {
    if radii.len() < 3 {
        return Err(Error::InvalidArgument(
            "radius schedule needs at least 3 entries".into(),
        ));
    }
    if radii.iter().any(|r| r.is_nan() || *r <= 0.0) || radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "radius schedule must be positive and strictly decreasing".into(),
        ));
    }
    Ok(())
}

/// Combines one critical point's entries over a schedule into an estimate.
pub fn estimate_from_entries(entries: Vec<RadiusEntry>, depth: usize) -> Result<SignatureEstimate> {
    let resolved: Vec<TailClass> = entries.iter().filter_map(|e| e.class().cloned()).collect();
    if resolved.is_empty() {
        return Err(Error::AllInconclusive);
    }
    let monotone = resolved.windows(2).all(|w| w[1].leq(&w[0]));
    let meets = partial_meets(&resolved);
    let value = Signature::principal(meets.last().unwrap().clone());
    let all_resolved = resolved.len() == entries.len();
    let reduction = if all_resolved {
        Some(meet_chain_reduce(&resolved, resolved.len())?)
    } else {
        None
    };
    let stabilization_index = match &reduction {
        Some(ChainReduction::Stabilized { index, .. }) => Some(*index),
        _ => None,
    };
    let verdict = if stabilization_index.is_some() {
        Verdict::Stable
    } else {
        Verdict::Inconclusive
    };
    Ok(SignatureEstimate {
        value,
        per_radius: entries,
        stabilization_index,
        reduction,
        verdict,
        monotone,
        depth,
    })
}

/// `estimateSignature` over a strictly decreasing schedule of at least three
/// radii. Stable requires every radius resolved and the partial meets
/// constant over at least the last two radii.
pub fn estimate_signature(
    f: &Polynomial,
    orbit: &BackwardOrbit,
    critical: &[Complex64],
    which: usize,
    radii: &[f64],
    depth: usize,
    cfg: &EngineConfig,
) -> Result<SignatureEstimate> {
    check_schedule(radii)?;
    if which >= critical.len() {
        return Err(Error::InvalidArgument(format!("critical point {which} out of range")));
    }
    let scan = radius_scan(f, orbit, critical, radii, depth, cfg)?;
    let entries = scan.into_iter().map(|mut row| row.swap_remove(which)).collect();
    estimate_from_entries(entries, depth)
}

/// `r_0 · 2^{-j}` for `j = 0..steps`.
pub fn halving_schedule(r0: f64, steps: usize) -> Vec<f64> {
    (0..steps).map(|j| r0 * 0.5f64.powi(j as i32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Vec<bool> {
        s.bytes().map(|b| b == b'1').collect()
    }

    fn fit(s: &str) -> Option<(String, usize, usize)> {
        infer_tail(&word(s)).map(|f| (f.class.to_string(), f.preperiod, f.period))
    }

    #[test]
    fn constant_words() {
        assert_eq!(fit(&"1".repeat(32)), Some(("p=1;w=1".into(), 0, 1)));
        assert_eq!(fit(&"0".repeat(32)), Some(("p=1;w=0".into(), 0, 1)));
    }

    #[test]
    fn alternating_words_keep_their_phase() {
        assert_eq!(fit(&"10".repeat(16)), Some(("p=2;w=10".into(), 0, 2)));
        assert_eq!(fit(&"01".repeat(16)), Some(("p=2;w=01".into(), 0, 2)));
    }

    #[test]
    fn preperiod_is_skipped() {
        let w = format!("{}{}", "0".repeat(9), "1".repeat(23));
        assert_eq!(fit(&w), Some(("p=1;w=1".into(), 9, 1)));
        let w = format!("110{}", "001".repeat(10));
        assert_eq!(fit(&w).unwrap().0, "p=3;w=001");
    }

    #[test]
    fn long_preperiod_or_period_is_inconclusive() {
        let w = format!("{}{}", "0".repeat(17), "1".repeat(15));
        assert_eq!(fit(&w), None);
        // period 9 > 32/4
        let w: String = "000000001".repeat(4).chars().take(32).collect();
        assert_eq!(fit(&w), None);
        assert_eq!(fit("0101"), None);
    }

    #[test]
    fn schedule_checks() {
        assert!(check_schedule(&[0.4, 0.2, 0.1]).is_ok());
        assert!(check_schedule(&[0.4, 0.2]).is_err());
        assert!(check_schedule(&[0.4, 0.4, 0.1]).is_err());
        assert_eq!(halving_schedule(0.4, 3), vec![0.4, 0.2, 0.1]);
    }
}
