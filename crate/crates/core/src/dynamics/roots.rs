//! Simultaneous polynomial root finding (Aberth–Ehrlich) with Newton polishing.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootConfig {
    pub max_iter: usize,
    /// Rotates the initial guess circle; identical seeds give identical roots.
    pub seed: u64,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            max_iter: 1000,
            seed: 0,
        }
    }
}

/// `(p(z), p'(z), Σ|a_k||z|^k)`; the last term bounds rounding in `p(z)`.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let r = z.norm();
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        bound = bound * r + a.norm();
    }
    (p, dp, bound)
}

fn initial_guesses(coeffs: &[Complex64], seed: u64) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let radius = (1..=n)
        .map(|k| (coeffs[n - k].norm() / lead).powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset = 0.4 + rng.gen::<f64>() * 2.0 * PI / n as f64;
    (0..n)
        .map(|j| Complex64::from_polar(radius, offset + 2.0 * PI * j as f64 / n as f64))
        .collect()
}

/// All roots of the polynomial with ascending `coeffs`, with multiplicity.
///
/// `warm` supplies starting approximations (one per root) when available.
pub fn aberth(coeffs: &[Complex64], warm: Option<&[Complex64]>, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
        coeffs.pop();
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    // Roots at the origin are exact; factor them out first.
    let zeros_at_origin = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros_at_origin..];
    let m = reduced.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    if m == 0 {
        return Ok(roots);
    }
    let mut z = match warm {
        Some(w) if w.len() == m && w.iter().all(|v| v.re.is_finite() && v.im.is_finite()) => w.to_vec(),
        _ => initial_guesses(reduced, cfg.seed),
    };
    if m == 1 {
        return {
            roots.push(-reduced[0] / reduced[1]);
            Ok(roots)
        };
    }
    let eps = f64::EPSILON;
    let mut converged = vec![false; m];
    for _ in 0..cfg.max_iter {
        for i in 0..m {
            if converged[i] {
                continue;
            }
            let (p, dp, bound) = horner(reduced, z[i]);
            if p.norm() <= 8.0 * eps * bound {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Coincident approximations; nudge apart deterministically.
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += nudge;
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * eps * z[i].norm() {
                converged[i] = true;
            }
        }
        if converged.iter().all(|&c| c) {
            roots.extend(z);
            return Ok(roots);
        }
    }
    Err(Error::NonConvergence {
        iterations: cfg.max_iter,
    })
}

/// Newton iterations on `g`, kept only while they reduce `|g|`.
pub fn polish(g: impl Fn(Complex64) -> (Complex64, Complex64), z0: Complex64, iters: usize) -> Complex64 {
    let mut z = z0;
    let mut best = g(z).0.norm();
    for _ in 0..iters {
        let (v, dv) = g(z);
        if v.norm() == 0.0 || dv.norm() == 0.0 {
            break;
        }
        let cand = z - v / dv;
        let r = g(cand).0.norm();
        if r.is_nan() || r >= best {
            break;
        }
        best = r;
        z = cand;
    }
    z
}

/// Groups approximations lying within `radius` of each other and replaces
/// each group by its centroid, returning `(centroid, multiplicity)` pairs
/// ordered lexicographically by `(re, im)`.
pub fn cluster(points: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| lex_cmp(*a, *b));
    let mut used = vec![false; sorted.len()];
    let mut out = Vec::new();
    for i in 0..sorted.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![sorted[i]];
        // Grow the group transitively so chains of near-coincident roots merge.
        let mut k = 0;
        while k < members.len() {
            for j in 0..sorted.len() {
                if !used[j] && (sorted[j] - members[k]).norm() <= radius {
                    used[j] = true;
                    members.push(sorted[j]);
                }
            }
            k += 1;
        }
        let centroid = members.iter().sum::<Complex64>() / members.len() as f64;
        out.push((centroid, members.len()));
    }
    out.sort_by(|a, b| lex_cmp(a.0, b.0));
    out
}

/// Coefficients of the `k`-th derivative.
pub fn derivative_coeffs(coeffs: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut out = coeffs.to_vec();
    for _ in 0..k {
        out = out.iter().enumerate().skip(1).map(|(j, &a)| a * j as f64).collect();
    }
    out
}

/// Aberth roots grouped into clusters of radius `radius`; a cluster of
/// multiplicity `m` is re-polished as a simple root of the `(m-1)`-th
/// derivative, which removes the `eps^{1/m}` spread of the raw estimates.
pub fn roots_with_multiplicity(coeffs: &[Complex64], radius: f64, cfg: &RootConfig) -> Result<Vec<(Complex64, usize)>> {
    let raw = aberth(coeffs, None, cfg)?;
    Ok(cluster(&raw, radius)
        .into_iter()
        .map(|(z, m)| {
            let d = derivative_coeffs(coeffs, m - 1);
            let g = |w: Complex64| {
                let (p, dp, _) = horner(&d, w);
                (p, dp)
            };
            (polish(g, z, 8), m)
        })
        .collect())
}

pub fn lex_cmp(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        roots.iter().fold(vec![c(1.0, 0.0)], |acc, &r| {
            let mut out = vec![c(0.0, 0.0); acc.len() + 1];
            for (i, &a) in acc.iter().enumerate() {
                out[i + 1] += a;
                out[i] -= a * r;
            }
            out
        })
    }

    #[test]
    fn finds_simple_roots() {
        let expected = [c(1.0, 0.0), c(-2.0, 0.5), c(0.3, -0.7), c(3.0, 3.0)];
        let mut roots = aberth(&from_roots(&expected), None, &RootConfig::default()).unwrap();
        roots.sort_by(|a, b| lex_cmp(*a, *b));
        let mut exp = expected.to_vec();
        exp.sort_by(|a, b| lex_cmp(*a, *b));
        for (r, e) in roots.iter().zip(&exp) {
            assert!((r - e).norm() < 1e-12, "{r} vs {e}");
        }
    }

    #[test]
    fn handles_double_root_and_origin() {
        // z^2 (z - 1/2)^2
        let coeffs = from_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0)]);
        let groups = roots_with_multiplicity(&coeffs, 1e-6, &RootConfig::default()).unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0], (c(0.0, 0.0), 2));
        assert!((groups[1].0 - c(0.5, 0.0)).norm() < 1e-12, "{groups:?}");
        assert_eq!(groups[1].1, 2);
    }

    #[test]
    fn seed_is_deterministic() {
        let coeffs = from_roots(&[c(1.0, 1.0), c(-1.0, 0.2), c(0.0, -2.0)]);
        let cfg = RootConfig {
            seed: 7,
            ..Default::default()
        };
        assert_eq!(
            aberth(&coeffs, None, &cfg).unwrap(),
            aberth(&coeffs, None, &cfg).unwrap()
        );
    }

    #[test]
    fn polish_never_worsens() {
        let g = |z: Complex64| (z * z - 2.0, 2.0 * z);
        let z = polish(g, c(1.4, 0.0), 10);
        assert!((z - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
    }
}
