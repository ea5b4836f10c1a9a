//! Constructive searches over backward orbits: chains that avoid every
//! critical point, and chains whose pulled-back neighbourhoods keep
//! engulfing a recurrent critical point.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::chain::{pullback_chain, PullbackChain};
use super::curve::{winding_contains, SampledLoop};
use super::orbit::BackwardOrbit;
use super::trace::{preimage_set, pullback_components, pullback_loop, TraceConfig};
use crate::dynamics::{orbit_closure_sample, recurrence_probe, Polynomial};
use crate::error::{Error, Result};

/// Radius of the seed disks used for regular plaques.
pub const REGULAR_SEED_RADIUS: f64 = 0.1;

fn avoids(curve: &SampledLoop, points: &[Complex64]) -> bool {
    points.iter().all(|&p| matches!(winding_contains(curve, p), Ok((0, _))))
}

struct Node {
    curve: SampledLoop,
    parent: Option<usize>,
}

/// A depth-`depth` chain whose every level avoids all critical points.
///
/// Seeds are `d` disks of radius 0.1 centred at `R·e^{2πij/d}` with
/// `R = 2·max(1, max|critical value|)`. Each level keeps up to `d` candidate
/// components, ordered by parent, then by whether they also avoid the
/// critical values, then by largest real part of their centre.
pub fn construct_regular_plaque(
    f: &Polynomial,
    depth: usize,
    critical: &[Complex64],
    cfg: &TraceConfig,
) -> Result<(BackwardOrbit, PullbackChain)> {
    let strategy = "regular-plaque";
    if depth == 0 {
        let orbit = BackwardOrbit::greedy(Vec::new(), strategy);
        let chain = pullback_chain(f, &orbit, REGULAR_SEED_RADIUS, 0, critical, cfg)?;
        return Ok((orbit, chain));
    }
    let d = f.degree();
    let values: Vec<Complex64> = critical.iter().map(|&c| f.eval(c)).collect();
    let big = 2.0 * values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut levels: Vec<Vec<Node>> = vec![(0..d)
        .map(|j| Node {
            curve: SampledLoop::circle(
                Complex64::from_polar(big, 2.0 * PI * j as f64 / d as f64),
                REGULAR_SEED_RADIUS,
                cfg.seed_samples,
            ),
            parent: None,
        })
        .collect()];
    let mut traced = 0;
    while levels.len() < depth {
        let mut next = Vec::new();
        for (pi, node) in levels.last().unwrap().iter().enumerate() {
            traced += 1;
            let comps = match pullback_components(f, &node.curve, critical, cfg) {
                Ok(comps) => comps,
                Err(e) => {
                    log::debug!("regular plaque: dropping candidate at level {}: {e}", levels.len());
                    continue;
                }
            };
            let mut keep: Vec<(bool, SampledLoop)> = comps
                .into_iter()
                .filter(|comp| avoids(comp, critical))
                .map(|comp| (avoids(&comp, &values), comp))
                .collect();
            keep.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.center.re.total_cmp(&a.1.center.re)));
            next.extend(keep.into_iter().map(|(_, curve)| Node {
                curve,
                parent: Some(pi),
            }));
        }
        next.truncate(d);
        if next.is_empty() {
            return Err(Error::SearchExhausted { nodes: traced });
        }
        levels.push(next);
    }
    let mut points = Vec::with_capacity(depth);
    let mut idx = 0;
    for level in levels.iter().rev() {
        let node = &level[idx];
        points.push(node.curve.center);
        idx = node.parent.unwrap_or(0);
    }
    points.reverse();
    let orbit = BackwardOrbit::greedy(points, strategy);
    let chain = pullback_chain(f, &orbit, REGULAR_SEED_RADIUS, depth, critical, cfg)?;
    Ok((orbit, chain))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Admissible preimages lie within this distance of the `P(c)` sample.
    pub epsilon: f64,
    /// Forward steps used to sample the critical orbit.
    pub sample_steps: usize,
    /// Whether the sample includes `c` itself.
    pub include_c: bool,
    /// Radius of the first seed disk; later stages halve it.
    pub seed_radius: f64,
    /// Pullback attempts allowed per search.
    pub budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.02,
            sample_steps: 4096,
            include_c: false,
            seed_radius: 0.5,
            budget: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// `path` starts after the seed point; its last neighbourhood contains `c`.
    Found {
        #[serde(serialize_with = "crate::report::complex_vec")]
        path: Vec<Complex64>,
        nodes: usize,
    },
    /// Every admissible chain up to the level cap was tried.
    NotFound {
        nodes: usize,
    },
    Exhausted {
        nodes: usize,
    },
}

struct Search<'a> {
    f: &'a Polynomial,
    target: Complex64,
    sample: &'a [Complex64],
    epsilon: f64,
    max_levels: usize,
    budget: usize,
    critical: &'a [Complex64],
    cfg: &'a TraceConfig,
    nodes: usize,
}

fn distance_to(sample: &[Complex64], z: Complex64) -> f64 {
    sample.iter().map(|s| (s - z).norm()).fold(f64::INFINITY, f64::min)
}

impl Search<'_> {
    /// `Ok(Some(path))` on success, `Ok(None)` when the subtree is empty,
    /// `Err(())` once the budget runs out.
    fn descend(&mut self, curve: &SampledLoop, level: usize) -> std::result::Result<Option<Vec<Complex64>>, ()> {
        if level >= self.max_levels {
            return Ok(None);
        }
        let Ok(mut fibre) = preimage_set(self.f, curve.center, &self.cfg.roots) else {
            return Ok(None);
        };
        fibre.dedup();
        let mut children: Vec<(f64, Complex64)> = fibre
            .into_iter()
            .map(|z| (distance_to(self.sample, z), z))
            .filter(|(dist, _)| *dist <= self.epsilon)
            .collect();
        children.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (_, z) in children {
            if self.nodes >= self.budget {
                return Err(());
            }
            self.nodes += 1;
            let lift = match pullback_loop(self.f, curve, z, self.critical, self.cfg) {
                Ok(lift) => lift,
                Err(e) => {
                    log::trace!("search: pruning branch at level {}: {e}", level + 1);
                    continue;
                }
            };
            if matches!(winding_contains(&lift, self.target), Ok((w, _)) if w != 0) {
                return Ok(Some(vec![z]));
            }
            if let Some(mut rest) = self.descend(&lift, level + 1)? {
                rest.insert(0, z);
                return Ok(Some(rest));
            }
        }
        Ok(None)
    }
}

/// Depth-first search for a chain of preimages of `x`, each within
/// `epsilon` of `sample`, whose pulled-back neighbourhood of `D(x, radius)`
/// contains `c` at some level `2..=max_levels`. Children are tried nearest
/// to the sample first.
#[allow(clippy::too_many_arguments)]
pub fn engulfing_search(
    f: &Polynomial,
    c: Complex64,
    x: Complex64,
    radius: f64,
    sample: &[Complex64],
    epsilon: f64,
    max_levels: usize,
    budget: usize,
    critical: &[Complex64],
    cfg: &TraceConfig,
) -> SearchOutcome {
    let mut search = Search {
        f,
        target: c,
        sample,
        epsilon,
        max_levels,
        budget,
        critical,
        cfg,
        nodes: 0,
    };
    let seed = SampledLoop::circle(x, radius, cfg.seed_samples);
    match search.descend(&seed, 1) {
        Ok(Some(path)) => SearchOutcome::Found {
            path,
            nodes: search.nodes,
        },
        Ok(None) => SearchOutcome::NotFound { nodes: search.nodes },
        Err(()) => SearchOutcome::Exhausted { nodes: search.nodes },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrregularOrbit {
    pub orbit: BackwardOrbit,
    /// 1-based orbit indices whose neighbourhood (pulled back from the
    /// current stage's seed disk) contains `c`.
    pub engulfing_depths: Vec<usize>,
    pub stage_radii: Vec<f64>,
    pub recurrence_distance: f64,
    pub sample_size: usize,
    pub nodes: usize,
    pub config: SearchConfig,
}

/// Backward orbit from `x0` staying `epsilon`-close to the sampled `P(c)`,
/// built in stages: each stage seeds a disk (radius halving from stage to
/// stage) at the current endpoint and extends the orbit until that disk's
/// pullback engulfs `c`.
pub fn construct_irregular_orbit(
    f: &Polynomial,
    c: Complex64,
    x0: Complex64,
    depth: usize,
    critical: &[Complex64],
    search: &SearchConfig,
    cfg: &TraceConfig,
) -> Result<IrregularOrbit> {
    let sample = orbit_closure_sample(f, c, search.sample_steps, search.include_c, 1e-8)?;
    if let Some(step) = sample.escaped_at {
        return Err(Error::NoPcMembership(format!("critical orbit escapes at step {step}")));
    }
    let rec = recurrence_probe(f, c, search.sample_steps)?;
    if rec.distance > search.epsilon {
        return Err(Error::NoPcMembership(format!(
            "closest return {:e} exceeds epsilon {:e}",
            rec.distance, search.epsilon
        )));
    }
    let gap = distance_to(&sample.points, x0);
    if gap > search.epsilon {
        return Err(Error::NoPcMembership(format!(
            "start point is {gap:e} from the orbit sample (epsilon {:e})",
            search.epsilon
        )));
    }

    let mut points = vec![x0];
    let mut engulfing_depths = Vec::new();
    let mut stage_radii = Vec::new();
    let mut nodes = 0;
    let mut radius = search.seed_radius;
    while points.len() < depth {
        let x = *points.last().unwrap();
        let remaining = depth - points.len();
        let outcome = engulfing_search(
            f,
            c,
            x,
            radius,
            &sample.points,
            search.epsilon,
            remaining + 1,
            search.budget,
            critical,
            cfg,
        );
        match outcome {
            SearchOutcome::Found { path, nodes: n } => {
                nodes += n;
                stage_radii.push(radius);
                points.extend(path);
                engulfing_depths.push(points.len());
                radius *= 0.5;
            }
            SearchOutcome::NotFound { nodes: n } | SearchOutcome::Exhausted { nodes: n } => {
                nodes += n;
                if engulfing_depths.is_empty() {
                    return Err(Error::SearchExhausted { nodes });
                }
                break;
            }
        }
    }
    Ok(IrregularOrbit {
        orbit: BackwardOrbit::greedy(points, "inverse-critical"),
        engulfing_depths,
        stage_radii,
        recurrence_distance: rec.distance,
        sample_size: sample.points.len(),
        nodes,
        config: *search,
    })
}
