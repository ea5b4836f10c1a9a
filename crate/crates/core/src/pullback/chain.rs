//! Chains of pulled-back neighbourhoods `U_1, U_2, ...` along a backward
//! orbit, and the index bits they induce.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;

use super::curve::{winding_contains, SampledLoop};
use super::orbit::BackwardOrbit;
use super::trace::{forward_residual, pullback_loop, TraceConfig};
use crate::dynamics::Polynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainLevel {
    pub curve: SampledLoop,
    /// Winding number of the curve around each critical point.
    pub windings: Vec<i64>,
    pub flags: Vec<bool>,
    /// `max |f(sample) - parent(param)|`; zero on the seed circle.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainFailure {
    /// 1-based level that could not be built.
    pub level: usize,
    #[serde(serialize_with = "crate::report::display")]
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PullbackChain {
    pub levels: Vec<ChainLevel>,
    pub orbit: BackwardOrbit,
    #[serde(serialize_with = "crate::report::complex")]
    pub center: Complex64,
    pub radius: f64,
    pub depth: usize,
    #[serde(serialize_with = "crate::report::complex_vec")]
    pub critical: Vec<Complex64>,
    pub failure: Option<ChainFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexBits {
    /// `bits[i-1]` is set iff the critical point lies in `U_i`.
    pub bits: String,
    pub depth: usize,
}

impl IndexBits {
    pub fn as_bools(&self) -> Vec<bool> {
        self.bits.bytes().map(|b| b == b'1').collect()
    }
}

impl PullbackChain {
    pub fn is_complete(&self) -> bool {
        self.failure.is_none() && self.levels.len() == self.depth
    }

    /// Containment word for the `critical`-th critical point over the levels
    /// that were built.
    pub fn index_bits(&self, critical: usize) -> Result<IndexBits> {
        if critical >= self.critical.len() {
            return Err(Error::InvalidArgument(format!(
                "critical point {critical} out of range (map has {})",
                self.critical.len()
            )));
        }
        let bits = self
            .levels
            .iter()
            .map(|l| if l.flags[critical] { '1' } else { '0' })
            .collect();
        Ok(IndexBits {
            bits,
            depth: self.levels.len(),
        })
    }

    pub fn max_residual(&self) -> f64 {
        self.levels.iter().map(|l| l.residual).fold(0.0, f64::max)
    }

    /// Levels whose curve contains at least one critical point.
    pub fn critical_levels(&self) -> usize {
        self.levels.iter().filter(|l| l.flags.iter().any(|&b| b)).count()
    }

    /// Curve samples as `level,sample,re,im,traversals` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "level,sample,re,im,traversals")?;
        for (i, level) in self.levels.iter().enumerate() {
            for (k, z) in level.curve.samples().iter().enumerate() {
                writeln!(out, "{},{},{},{},{}", i + 1, k, z.re, z.im, level.curve.traversals)?;
            }
        }
        Ok(())
    }
}

fn flags_for(curve: &SampledLoop, critical: &[Complex64]) -> Result<(Vec<i64>, Vec<bool>)> {
    let mut windings = Vec::with_capacity(critical.len());
    let mut flags = Vec::with_capacity(critical.len());
    for &c in critical {
        let (w, inside) = winding_contains(curve, c)?;
        windings.push(w);
        flags.push(inside);
    }
    Ok((windings, flags))
}

/// `U_1` is the circle of radius `radius` about `x_1`; `U_{i+1}` is the
/// component of `f^{-1}(U_i)` around `x_{i+1}`. A tracing failure ends the
/// chain early and is recorded with its level.
pub fn pullback_chain(
    f: &Polynomial,
    orbit: &BackwardOrbit,
    radius: f64,
    depth: usize,
    critical: &[Complex64],
    cfg: &TraceConfig,
) -> Result<PullbackChain> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let points = orbit.truncate(depth)?;
    let center = points.first().copied().unwrap_or_default();
    let mut chain = PullbackChain {
        levels: Vec::with_capacity(depth),
        orbit: orbit.clone(),
        center,
        radius,
        depth,
        critical: critical.to_vec(),
        failure: None,
    };
    for (i, &x) in points.iter().enumerate() {
        let built = match chain.levels.last() {
            None => Ok((SampledLoop::circle(x, radius, cfg.seed_samples), 0.0)),
            Some(parent) => pullback_loop(f, &parent.curve, x, critical, cfg).map(|curve| {
                let residual = forward_residual(f, &curve, &parent.curve);
                (curve, residual)
            }),
        };
        let level = built.and_then(|(curve, residual)| {
            let (windings, flags) = flags_for(&curve, critical)?;
            Ok(ChainLevel {
                curve,
                windings,
                flags,
                residual,
            })
        });
        match level {
            Ok(l) => chain.levels.push(l),
            Err(error) => {
                log::debug!("chain stopped at level {}: {error}", i + 1);
                chain.failure = Some(ChainFailure { level: i + 1, error });
                break;
            }
        }
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::roots::RootConfig;
    use crate::dynamics::{critical_points, periodic_cycles, Tolerances};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lift(f: &Polynomial, period: usize, at: Complex64) -> BackwardOrbit {
        let cycle = periodic_cycles(f, period, &Tolerances::default(), &RootConfig::default())
            .unwrap()
            .into_iter()
            .find(|cy| cy.points.iter().any(|z| (z - at).norm() < 1e-9))
            .unwrap();
        BackwardOrbit::from_cycle(&cycle, cycle.nearest_index(at) + 1).unwrap()
    }

    fn bits(f: &Polynomial, orbit: &BackwardOrbit, r: f64, n: usize) -> String {
        let crit = critical_points(f, &Tolerances::default(), &RootConfig::default()).unwrap();
        let chain = pullback_chain(f, orbit, r, n, &crit, &TraceConfig::default()).unwrap();
        assert!(chain.is_complete(), "{:?}", chain.failure);
        assert!(chain.max_residual() <= 1e-9);
        chain.index_bits(0).unwrap().bits
    }

    #[test]
    fn super_attracting_lift_always_contains_critical_point() {
        let f = Polynomial::quadratic(c(0.0, 0.0));
        assert_eq!(bits(&f, &lift(&f, 1, c(0.0, 0.0)), 0.25, 8), "11111111");
    }

    #[test]
    fn repelling_lift_never_contains_critical_point() {
        let f = Polynomial::quadratic(c(0.0, 0.0));
        assert_eq!(bits(&f, &lift(&f, 1, c(1.0, 0.0)), 0.1, 8), "00000000");
    }

    #[test]
    fn two_cycle_alternates() {
        let f = Polynomial::quadratic(c(-1.0, 0.0));
        assert_eq!(bits(&f, &lift(&f, 2, c(0.0, 0.0)), 0.05, 8), "10101010");
        assert_eq!(bits(&f, &lift(&f, 2, c(-1.0, 0.0)), 0.05, 8), "01010101");
    }

    #[test]
    fn super_attracting_levels_are_root_circles() {
        let f = Polynomial::quadratic(c(0.0, 0.0));
        let chain = pullback_chain(
            &f,
            &lift(&f, 1, c(0.0, 0.0)),
            0.25,
            6,
            &[c(0.0, 0.0)],
            &TraceConfig::default(),
        )
        .unwrap();
        for (i, level) in chain.levels.iter().enumerate() {
            let r = 0.25f64.powf(0.5f64.powi(i as i32));
            for z in &level.curve.samples() {
                assert!((z.norm() - r).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn csv_has_one_row_per_sample() {
        let f = Polynomial::quadratic(c(0.0, 0.0));
        let chain = pullback_chain(
            &f,
            &lift(&f, 1, c(1.0, 0.0)),
            0.1,
            3,
            &[c(0.0, 0.0)],
            &TraceConfig::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        chain.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: usize = chain.levels.iter().map(|l| l.curve.len()).sum();
        assert_eq!(text.lines().count(), rows + 1);
        assert!(text.starts_with("level,sample,re,im,traversals\n1,0,"));
    }

    #[test]
    fn short_orbit_is_rejected() {
        let f = Polynomial::quadratic(c(0.0, 0.0));
        let orbit = BackwardOrbit::greedy(vec![c(1.0, 0.0)], "test");
        assert!(pullback_chain(&f, &orbit, 0.1, 2, &[c(0.0, 0.0)], &TraceConfig::default()).is_err());
        assert!(pullback_chain(&f, &orbit, 0.0, 1, &[c(0.0, 0.0)], &TraceConfig::default()).is_err());
    }
}
