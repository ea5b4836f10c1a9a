//! Backward orbits `(x_1, x_2, ...)` with `f(x_{i+1}) = x_i`.

use num_complex::Complex64;
use serde::Serialize;

use super::trace::preimage_set;
use crate::dynamics::roots::{lex_cmp, RootConfig};
use crate::dynamics::{Cycle, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitGenerator {
    /// Repetition of a cycle, starting at its `base`-th point (1-based).
    InvariantLift {
        period: usize,
        base: usize,
    },
    /// Preimage indices into the lexicographically sorted fibre.
    ExplicitBranches {
        choices: Vec<usize>,
    },
    Greedy {
        strategy: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BackwardOrbit {
    /// One period for periodic orbits, the full truncation otherwise.
    #[serde(serialize_with = "crate::report::complex_vec")]
    pub points: Vec<Complex64>,
    pub generator: OrbitGenerator,
    pub periodic: bool,
}

impl BackwardOrbit {
    /// The invariant lift of `cycle` with `x_1 = cycle.points[base - 1]`.
    pub fn from_cycle(cycle: &Cycle, base: usize) -> Result<Self> {
        let n = cycle.points.len();
        if base == 0 || base > n {
            return Err(Error::InvalidArgument(format!("base {base} outside 1..={n}")));
        }
        let points = (0..n).map(|i| cycle.points[(base - 1 + i) % n]).collect();
        Ok(Self {
            points,
            generator: OrbitGenerator::InvariantLift {
                period: cycle.period,
                base,
            },
            periodic: true,
        })
    }

    /// `x_1 = start`, then `x_{i+1}` is the `choices[i-1]`-th root of
    /// `f(z) = x_i` in lexicographic order.
    pub fn from_branches(f: &Polynomial, start: Complex64, choices: &[usize], cfg: &RootConfig) -> Result<Self> {
        let mut points = vec![start];
        for &k in choices {
            let mut fibre = preimage_set(f, *points.last().unwrap(), cfg)?;
            fibre.sort_by(|a, b| lex_cmp(*a, *b));
            let z = *fibre
                .get(k)
                .ok_or_else(|| Error::InvalidArgument(format!("branch {k} exceeds degree {}", f.degree())))?;
            points.push(z);
        }
        Ok(Self {
            points,
            generator: OrbitGenerator::ExplicitBranches {
                choices: choices.to_vec(),
            },
            periodic: false,
        })
    }

    pub fn greedy(points: Vec<Complex64>, strategy: &str) -> Self {
        Self {
            points,
            generator: OrbitGenerator::Greedy {
                strategy: strategy.to_owned(),
            },
            periodic: false,
        }
    }

    /// `x_i`, 1-based; periodic orbits wrap.
    pub fn point(&self, i: usize) -> Option<Complex64> {
        if i == 0 || self.points.is_empty() {
            return None;
        }
        if self.periodic {
            Some(self.points[(i - 1) % self.points.len()])
        } else {
            self.points.get(i - 1).copied()
        }
    }

    /// Number of available coordinates; `None` when unbounded.
    pub fn len(&self) -> Option<usize> {
        (!self.periodic).then_some(self.points.len())
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(x_1, ..., x_n)`; fails if the orbit is shorter.
    pub fn truncate(&self, n: usize) -> Result<Vec<Complex64>> {
        (1..=n)
            .map(|i| {
                self.point(i)
                    .ok_or_else(|| Error::InvalidArgument(format!("orbit has fewer than {n} points")))
            })
            .collect()
    }

    /// The orbit `(x_{m+1}, x_{m+2}, ...)`, i.e. with the first `m`
    /// coordinates deleted.
    pub fn reindexed(&self, m: usize) -> Self {
        let mut out = self.clone();
        if self.periodic {
            let n = self.points.len();
            out.points.rotate_left(m % n);
            if let OrbitGenerator::InvariantLift { period, base } = &mut out.generator {
                *base = (*base - 1 + m) % *period + 1;
            }
        } else {
            out.points.drain(..m.min(out.points.len()));
        }
        out
    }

    /// `max_i |f(x_{i+1}) - x_i|` over the first `n` coordinates.
    pub fn consistency(&self, f: &Polynomial, n: usize) -> f64 {
        (1..n)
            .filter_map(|i| Some((f.eval(self.point(i + 1)?) - self.point(i)?).norm()))
            .fold(0.0, f64::max)
    }
}
