//! Critical points, periodic cycles and their multiplier classification.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::poly::Polynomial;
use super::roots::{lex_cmp, polish, roots_with_multiplicity, RootConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Width of the neutral band `1-ε <= |λ| <= 1+ε`.
    pub band: f64,
    /// Distance at which a cycle point counts as a critical point.
    pub critical: f64,
    /// `|λ^p - 1|` threshold for root-of-unity detection.
    pub root_of_unity: f64,
    /// Largest denominator tried for rational rotation numbers.
    pub p_max: u64,
    /// Roots closer than this are merged, and a point within this distance
    /// of its `m`-th image is treated as having period `m`.
    pub separation: f64,
    /// Merge radius for forward-orbit samples.
    pub dedup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            band: 1e-9,
            critical: 1e-9,
            root_of_unity: 1e-9,
            p_max: 64,
            separation: 1e-6,
            dedup: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleLabel {
    Repelling,
    AttractingNonSuper,
    SuperAttracting,
    /// `λ = e^{2πi q/p}`.
    Parabolic {
        q: u64,
        p: u64,
    },
    /// Siegel and Cremer cycles are not told apart.
    NeutralIrrational,
}

impl CycleLabel {
    pub fn is_attracting(&self) -> bool {
        matches!(self, Self::AttractingNonSuper | Self::SuperAttracting)
    }
}

impl fmt::Display for CycleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Repelling => f.write_str("Repelling"),
            Self::AttractingNonSuper => f.write_str("AttractingNonSuper"),
            Self::SuperAttracting => f.write_str("SuperAttracting"),
            Self::Parabolic { q, p } => write!(f, "Parabolic({q},{p})"),
            Self::NeutralIrrational => f.write_str("NeutralIrrational"),
        }
    }
}

impl Serialize for CycleLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A periodic orbit `(x_1, ..., x_n)` with `f(x_{i+1}) = x_i` and
/// `f(x_1) = x_n`; `x_1` is the lexicographically smallest point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cycle {
    #[serde(serialize_with = "crate::report::complex_vec")]
    pub points: Vec<Complex64>,
    pub period: usize,
    #[serde(serialize_with = "crate::report::complex")]
    pub multiplier: Complex64,
    pub label: CycleLabel,
    /// Root multiplicity in `f^n(z) - z`; above one the cycle is flagged.
    pub multiplicity: usize,
}

impl Cycle {
    pub fn flagged(&self) -> bool {
        self.multiplicity > 1
    }

    /// Index (0-based) of the cycle point nearest `z`.
    pub fn nearest_index(&self, z: Complex64) -> usize {
        (0..self.points.len())
            .min_by(|&a, &b| (self.points[a] - z).norm().total_cmp(&(self.points[b] - z).norm()))
            .unwrap()
    }
}

/// Distinct zeros of `f'`, ordered lexicographically.
pub fn critical_points(f: &Polynomial, tol: &Tolerances, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let dcoeffs = f.derivative_coeffs();
    let pts: Vec<Complex64> = roots_with_multiplicity(&dcoeffs, tol.separation, cfg)?
        .into_iter()
        .map(|(z, _)| z)
        .collect();
    debug_assert!(!pts.is_empty() && pts.len() < f.degree());
    Ok(pts)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|m| n.is_multiple_of(*m)).collect()
}

/// All cycles of exact period `n`, labelled with the given tolerances.
pub fn periodic_cycles(f: &Polynomial, n: usize, tol: &Tolerances, cfg: &RootConfig) -> Result<Vec<Cycle>> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be at least 1".into()));
    }
    let mut coeffs = f.iterate_coeffs(n);
    coeffs[1] -= Complex64::new(1.0, 0.0);
    let g = |z: Complex64| {
        let (w, dw) = f.iterate_with_derivative(z, n);
        (w - z, dw - 1.0)
    };
    // Expansion seeds the roots; polishing runs on the composition form.
    let exact: Vec<(Complex64, usize)> = roots_with_multiplicity(&coeffs, tol.separation, cfg)?
        .into_iter()
        .map(|(z, mult)| if mult == 1 { (polish(g, z, 6), 1) } else { (z, mult) })
        .filter(|&(z, _)| {
            divisors(n)
                .into_iter()
                .filter(|&m| m < n)
                .all(|m| (f.iterate(z, m) - z).norm() > tol.separation)
        })
        .collect();

    let crit = critical_points(f, tol, cfg)?;
    let mut assigned = vec![false; exact.len()];
    let mut cycles = Vec::new();
    for start in 0..exact.len() {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let (z0, multiplicity) = exact[start];
        let mut forward = vec![z0];
        for _ in 1..n {
            let image = f.eval(*forward.last().unwrap());
            let nearest = (0..exact.len())
                .filter(|&j| !assigned[j])
                .min_by(|&a, &b| (exact[a].0 - image).norm().total_cmp(&(exact[b].0 - image).norm()));
            match nearest {
                Some(j) if (exact[j].0 - image).norm() <= tol.separation.max(1e-9 * image.norm()) * 100.0 => {
                    assigned[j] = true;
                    forward.push(exact[j].0);
                }
                _ => forward.push(image),
            }
        }
        // forward = (z0, f z0, ..., f^{n-1} z0); store x_1 = z0, x_i = f^{n-i+1}(z0).
        let mut points = vec![forward[0]];
        points.extend(forward[1..].iter().rev());
        let multiplier = points.iter().map(|&x| f.derivative_at(x)).product();
        let label = classify_multiplier(multiplier, &points, &crit, tol);
        cycles.push(Cycle {
            points,
            period: n,
            multiplier,
            label,
            multiplicity,
        });
    }
    cycles.sort_by(|a, b| lex_cmp(a.points[0], b.points[0]));
    Ok(cycles)
}

/// Classification of an existing cycle against the map's critical points.
pub fn classify_cycle(cycle: &Cycle, critical: &[Complex64], tol: &Tolerances) -> CycleLabel {
    classify_multiplier(cycle.multiplier, &cycle.points, critical, tol)
}

fn classify_multiplier(
    lambda: Complex64,
    points: &[Complex64],
    critical: &[Complex64],
    tol: &Tolerances,
) -> CycleLabel {
    let modulus = lambda.norm();
    if modulus < 1.0 - tol.band {
        let hits_critical = points
            .iter()
            .any(|x| critical.iter().any(|c| (x - c).norm() <= tol.critical));
        return if hits_critical {
            CycleLabel::SuperAttracting
        } else {
            CycleLabel::AttractingNonSuper
        };
    }
    if modulus > 1.0 + tol.band {
        return CycleLabel::Repelling;
    }
    match rational_rotation(lambda, tol) {
        Some((q, p)) => CycleLabel::Parabolic { q, p },
        None => CycleLabel::NeutralIrrational,
    }
}

/// Continued-fraction convergents `q/p` of `arg λ / 2π` with `p <= p_max`,
/// returning the first one with `|λ^p - 1| <= root_of_unity`.
pub fn rational_rotation(lambda: Complex64, tol: &Tolerances) -> Option<(u64, u64)> {
    let theta = (lambda.arg() / (2.0 * PI)).rem_euclid(1.0);
    let unit = lambda / lambda.norm();
    let test = |p: u64| (unit.powu(p as u32) - 1.0).norm() <= tol.root_of_unity;
    let (mut h_prev2, mut h_prev) = (0u64, 1u64);
    let (mut k_prev2, mut k_prev) = (1u64, 0u64);
    let mut x = theta;
    loop {
        let a = x.floor();
        if a > tol.p_max as f64 {
            return None;
        }
        let a = a as u64;
        let h = a * h_prev + h_prev2;
        let k = a * k_prev + k_prev2;
        if k > tol.p_max {
            return None;
        }
        if test(k) {
            return Some((h % k, k));
        }
        (h_prev2, h_prev) = (h_prev, h);
        (k_prev2, k_prev) = (k_prev, k);
        let frac = x - x.floor();
        if frac < 1e-15 {
            return None;
        }
        x = 1.0 / frac;
    }
}
