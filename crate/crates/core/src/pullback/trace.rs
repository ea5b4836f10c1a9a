//! Pullback of sampled Jordan curves through the inverse branches of a
//! polynomial, by continuation along the parent curve.
//!
//! Tracing happens in local coordinates: a lift centred at `y` is traced as
//! offsets `e` solving `f(y + e) - f(y) = δ`, with `δ` the parent's offsets.
//! The centre of a lift is a preimage of the parent's centre, and the tiny
//! mismatch `f(y) - parent.center` is carried only into the reported
//! residual, which keeps curves far below double spacing usable.
//!
//! Branch choice at each step is guarded by a ratio test: the chosen
//! preimage must be at most `eta` times as far from the prediction as the
//! runner-up, otherwise the parameter step is halved.

use num_complex::Complex64;
use serde::Serialize;

use super::curve::{winding_contains, SampledLoop};
use crate::dynamics::roots::{aberth, lex_cmp, polish, roots_with_multiplicity, RootConfig};
use crate::dynamics::Polynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceConfig {
    /// Nearest / second-nearest preimage distance ratio bound.
    pub eta: f64,
    /// Hard cap on samples per lifted loop; also fixes the smallest
    /// parameter step at `circuit length / max_samples`.
    pub max_samples: usize,
    /// Largest parameter step, in parent segments.
    pub max_step: f64,
    /// Relative deviation from the linear predictor tolerated on steps
    /// coarser than one parent segment.
    pub turn: f64,
    /// Absolute deviation (relative to the lifted curve's extent so far)
    /// below which coarse steps are accepted regardless of `turn`.
    pub smoothing: f64,
    /// Samples on seed circles.
    pub seed_samples: usize,
    pub roots: RootConfig,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self {
            eta: 0.5,
            max_samples: 1 << 16,
            max_step: 8.0,
            turn: 0.1,
            smoothing: 1e-3,
            seed_samples: 256,
            roots: RootConfig::default(),
        }
    }
}

/// All `d` solutions of `f(z) = w`, polished by Newton.
pub fn preimages(f: &Polynomial, w: Complex64, warm: Option<&[Complex64]>, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let mut coeffs = f.coeffs().to_vec();
    coeffs[0] -= w;
    solve_polished(&coeffs, warm, cfg)
}

fn solve_polished(coeffs: &[Complex64], warm: Option<&[Complex64]>, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let roots = aberth(coeffs, warm, cfg)?;
    Ok(roots
        .into_iter()
        .map(|z| {
            polish(
                |u| {
                    let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
                    for &a in coeffs.iter().rev() {
                        dp = dp * u + p;
                        p = p * u + a;
                    }
                    (p, dp)
                },
                z,
                3,
            )
        })
        .collect())
}

/// `preimages` with coincident roots (critical fibres) collapsed onto their
/// exact location, each repeated by its multiplicity, in lexicographic order.
pub fn preimage_set(f: &Polynomial, w: Complex64, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let mut coeffs = f.coeffs().to_vec();
    coeffs[0] -= w;
    let mut out: Vec<Complex64> = roots_with_multiplicity(&coeffs, 1e-6 * (1.0 + w.norm()), cfg)?
        .into_iter()
        .flat_map(|(z, m)| std::iter::repeat_n(z, m))
        .collect();
    out.sort_by(|a, b| lex_cmp(*a, *b));
    Ok(out)
}

/// `e ↦ f(y + e) - f(y)`.
struct LocalMap {
    coeffs: Vec<Complex64>,
}

impl LocalMap {
    fn new(f: &Polynomial, y: Complex64) -> Self {
        let mut coeffs = f.taylor_coeffs(y);
        coeffs[0] = Complex64::new(0.0, 0.0);
        Self { coeffs }
    }

    fn eval(&self, e: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * e + a)
    }

    fn solve(&self, delta: Complex64, warm: Option<&[Complex64]>, cfg: &RootConfig) -> Result<Vec<Complex64>> {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = -delta;
        solve_polished(&coeffs, warm, cfg)
    }
}

fn nearest(points: &[Complex64], z: Complex64) -> Complex64 {
    points
        .iter()
        .copied()
        .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()))
        .unwrap_or(z)
}

/// Parent sample index whose offset is farthest from every critical value.
fn start_index(parent: &SampledLoop, cv_offsets: &[Complex64]) -> usize {
    let m = parent.len();
    let stride = (m / 64).max(1);
    let clearance = |k: usize| {
        cv_offsets
            .iter()
            .map(|v| (parent.offsets[k] - v).norm())
            .fold(f64::INFINITY, f64::min)
    };
    (0..m)
        .step_by(stride)
        .max_by(|&a, &b| clearance(a).total_cmp(&clearance(b)).then(b.cmp(&a)))
        .unwrap_or(0)
}

struct Lift {
    offsets: Vec<Complex64>,
    params: Vec<f64>,
    traversals: u32,
    /// Lifts of the start sample met at each circuit end.
    fiber_hits: Vec<Complex64>,
}

struct Tracer<'a> {
    map: LocalMap,
    parent: &'a SampledLoop,
    critical_values: Vec<Complex64>,
    degree: u32,
    cfg: &'a TraceConfig,
}

impl Tracer<'_> {
    fn ambiguous(&self, t: f64) -> Error {
        Error::AmbiguousBranch {
            critical_value: nearest(&self.critical_values, self.parent.point_at(t)),
        }
    }

    fn cv_offsets(&self) -> Vec<Complex64> {
        self.critical_values.iter().map(|v| v - self.parent.center).collect()
    }

    fn lift(&self, start: usize, z0: Complex64, roots0: &[Complex64]) -> Result<Lift> {
        let cfg = self.cfg;
        let m = self.parent.len() as f64;
        let h_min = m / cfg.max_samples as f64;

        let mut t = start as f64;
        let mut z = z0;
        let mut roots = roots0.to_vec();
        let mut prev: Option<(Complex64, f64)> = None;
        let mut h = 1.0f64;
        let mut circuits = 0u32;
        let (mut lo, mut hi) = (z0, z0);
        let mut offsets = vec![z0];
        let mut params = vec![start as f64];
        let mut fiber_hits = vec![z0];

        loop {
            let end = start as f64 + (circuits + 1) as f64 * m;
            let t_new = (t + h).min(end);
            let step = t_new - t;
            let cand = self.map.solve(self.parent.offset_at(t_new), Some(&roots), &cfg.roots)?;
            let pred = match prev {
                Some((zp, hp)) => z + (z - zp) * (step / hp),
                None => z,
            };
            let mut order: Vec<(f64, usize)> = cand.iter().enumerate().map(|(i, r)| ((r - pred).norm(), i)).collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0));
            let (d1, i1) = order[0];
            let d2 = order[1].0;
            let znew = cand[i1];

            let ratio_ok = d1 <= cfg.eta * d2;
            let smooth_ok = prev.is_none() || h <= 1.0 || {
                let dev = (znew - pred).norm();
                dev <= cfg.turn * (znew - z).norm() || dev <= cfg.smoothing * (hi - lo).norm()
            };
            if !(ratio_ok && smooth_ok) {
                h *= 0.5;
                if h < h_min {
                    return Err(self.ambiguous(t_new));
                }
                continue;
            }

            prev = Some((z, step));
            z = znew;
            t = t_new;
            roots = cand;
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
            if t_new >= end {
                circuits += 1;
                let scale = z0.norm().max((hi - lo).norm());
                if (z - z0).norm() <= 1e-9 * scale {
                    break;
                }
                fiber_hits.push(z);
                if circuits >= self.degree {
                    return Err(Error::OpenCurve { circuits });
                }
            }
            offsets.push(z);
            params.push(t.rem_euclid(m));
            if offsets.len() > cfg.max_samples {
                return Err(self.ambiguous(t));
            }
            h = (h * 2.0).min(cfg.max_step);
        }
        Ok(Lift {
            offsets,
            params,
            traversals: circuits,
            fiber_hits,
        })
    }
}

fn tracer<'a>(
    f: &Polynomial,
    y: Complex64,
    parent: &'a SampledLoop,
    critical: &[Complex64],
    cfg: &'a TraceConfig,
) -> Result<Tracer<'a>> {
    if parent.is_empty() {
        return Err(Error::InvalidArgument("cannot pull back an empty curve".into()));
    }
    Ok(Tracer {
        map: LocalMap::new(f, y),
        parent,
        critical_values: critical.iter().map(|&c| f.eval(c)).collect(),
        degree: f.degree() as u32,
        cfg,
    })
}

fn winds_around(offsets: &[Complex64], z: Complex64) -> bool {
    let probe = SampledLoop {
        center: Complex64::new(0.0, 0.0),
        offsets: offsets.to_vec(),
        traversals: 1,
        parent_params: Vec::new(),
    };
    probe.winding_around_offset(z).map(|w| w != 0).unwrap_or(false)
}

/// Lift around `y`, a preimage of the parent's centre: traces the
/// components through the fibre of one parent sample, nearest `y` first,
/// until one winds around `y`.
fn lift_around(
    f: &Polynomial,
    parent: &SampledLoop,
    y: Complex64,
    critical: &[Complex64],
    cfg: &TraceConfig,
) -> Result<SampledLoop> {
    let tr = tracer(f, y, parent, critical, cfg)?;
    let s = start_index(parent, &tr.cv_offsets());
    let mut starts = tr.map.solve(parent.offsets[s], None, &cfg.roots)?;
    starts.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(lex_cmp(*a, *b)));
    let mut covered = vec![false; starts.len()];
    let origin = Complex64::new(0.0, 0.0);
    for i in 0..starts.len() {
        if covered[i] {
            continue;
        }
        let lift = tr.lift(s, starts[i], &starts)?;
        if winds_around(&lift.offsets, origin) {
            return Ok(SampledLoop {
                center: y,
                offsets: lift.offsets,
                traversals: lift.traversals,
                parent_params: lift.params,
            });
        }
        for hit in &lift.fiber_hits {
            let j = (0..starts.len())
                .min_by(|&a, &b| (starts[a] - hit).norm().total_cmp(&(starts[b] - hit).norm()))
                .unwrap();
            covered[j] = true;
        }
    }
    Err(Error::TargetNotEnclosed)
}

/// Every component of `f^{-1}(parent)`, each centred on a preimage of the
/// parent's centre that it winds around, in lexicographic order of centres.
pub fn pullback_components(
    f: &Polynomial,
    parent: &SampledLoop,
    critical: &[Complex64],
    cfg: &TraceConfig,
) -> Result<Vec<SampledLoop>> {
    let mut centers = preimage_set(f, parent.center, &cfg.roots)?;
    centers.dedup();
    let mut out: Vec<SampledLoop> = Vec::new();
    for y in centers {
        let enclosed = out
            .iter()
            .any(|comp| winding_contains(comp, y).map(|(_, inside)| inside).unwrap_or(true));
        if !enclosed {
            out.push(lift_around(f, parent, y, critical, cfg)?);
        }
    }
    Ok(out)
}

/// The component of `f^{-1}(parent)` containing `target`.
///
/// `target` is either a preimage of the parent's centre, or a preimage of one
/// of its samples; in the latter case the lift is traced from `target` itself
/// and centred on the enclosed preimage of the parent's centre.
pub fn pullback_loop(
    f: &Polynomial,
    parent: &SampledLoop,
    target: Complex64,
    critical: &[Complex64],
    cfg: &TraceConfig,
) -> Result<SampledLoop> {
    let image = f.eval(target);
    let scale = 1.0 + parent.center.norm();
    if (image - parent.center).norm() <= 1e-8 * scale {
        return lift_around(f, parent, target, critical, cfg);
    }
    let s = (0..parent.len())
        .find(|&k| (parent.point_at(k as f64) - image).norm() <= 1e-8 * (1.0 + image.norm()))
        .ok_or_else(|| Error::InvalidArgument("target maps neither to the centre nor onto a sample".into()))?;
    let mut centers = preimage_set(f, parent.center, &cfg.roots)?;
    centers.sort_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()));
    let y = centers[0];
    let tr = tracer(f, y, parent, critical, cfg)?;
    let roots = tr.map.solve(parent.offsets[s], None, &cfg.roots)?;
    let z0 = nearest(&roots, target - y);
    let lift = tr.lift(s, z0, &roots)?;
    let center = centers
        .into_iter()
        .find(|&c| winds_around(&lift.offsets, c - y))
        .ok_or(Error::TargetNotEnclosed)?;
    let shift = y - center;
    Ok(SampledLoop {
        center,
        offsets: lift.offsets.into_iter().map(|e| e + shift).collect(),
        traversals: lift.traversals,
        parent_params: lift.params,
    })
}

/// Bound on the distance from each mapped sample to the parent polyline:
/// `max_k |f(y + e_k) - f(y) - δ(param_k)| + |f(y) - parent.center|`.
pub fn forward_residual(f: &Polynomial, child: &SampledLoop, parent: &SampledLoop) -> f64 {
    let map = LocalMap::new(f, child.center);
    let local = child
        .offsets
        .iter()
        .zip(&child.parent_params)
        .map(|(&e, &t)| (map.eval(e) - parent.offset_at(t)).norm())
        .fold(0.0, f64::max);
    local + (f.eval(child.center) - parent.center).norm()
}
