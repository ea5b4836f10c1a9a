//! Resolution of `--cycle` and `--critical` selectors against a map.

use plaque::dynamics::{format_complex, parse_complex, periodic_cycles, Cycle, Polynomial};
use plaque::engine::EngineConfig;
use plaque::Complex64;

use crate::CliError;

/// Distance within which `fixed:<z>` accepts a fixed point.
const FIXED_MATCH: f64 = 1e-3;
/// Distance within which a critical value selects a critical point.
const CRITICAL_MATCH: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
enum Which {
    Fixed(Complex64),
    Period { n: usize, index: usize },
}

/// A cycle together with the 1-based point the invariant lift starts from.
pub struct Selected {
    pub cycle: Cycle,
    pub base: usize,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_index(s: &str, what: &str) -> Result<usize, CliError> {
    s.parse::<usize>()
        .ok()
        .filter(|&i| i >= 1)
        .ok_or_else(|| usage(format!("{what} must be a positive integer, got {s:?}")))
}

/// Parses `fixed:<z>`, `period:<n>:<index>` and `base:<i>` selectors; one of
/// the first two is required, `base` defaults to 1.
pub fn cycle(f: &Polynomial, selectors: &[String], cfg: &EngineConfig) -> Result<Selected, CliError> {
    let mut which = None;
    let mut base = 1;
    for sel in selectors {
        let (kind, rest) = sel
            .split_once(':')
            .ok_or_else(|| usage(format!("bad --cycle {sel:?}")))?;
        let parsed = match kind {
            "fixed" => Which::Fixed(parse_complex(rest).map_err(|e| usage(e.to_string()))?),
            "period" => {
                let (n, index) = rest
                    .split_once(':')
                    .ok_or_else(|| usage(format!("expected period:<n>:<index>, got {sel:?}")))?;
                Which::Period {
                    n: parse_index(n, "period")?,
                    index: parse_index(index, "cycle index")?,
                }
            }
            "base" => {
                base = parse_index(rest, "base")?;
                continue;
            }
            _ => return Err(usage(format!("unknown --cycle selector {kind:?}"))),
        };
        if which.replace(parsed).is_some() {
            return Err(usage("give one of fixed:<z> or period:<n>:<index>"));
        }
    }
    let which = which.ok_or_else(|| usage("this command needs --cycle fixed:<z> or --cycle period:<n>:<index>"))?;
    let cycle = match which {
        Which::Fixed(z) => {
            let fixed = periodic_cycles(f, 1, &cfg.tolerances, &cfg.trace.roots)?;
            let best = fixed
                .into_iter()
                .min_by(|a, b| (a.points[0] - z).norm().total_cmp(&(b.points[0] - z).norm()))
                .ok_or_else(|| usage("map has no fixed points"))?;
            if (best.points[0] - z).norm() > FIXED_MATCH {
                return Err(usage(format!(
                    "no fixed point near {}; nearest is {}",
                    format_complex(z),
                    format_complex(best.points[0])
                )));
            }
            best
        }
        Which::Period { n, index } => {
            let mut cycles = periodic_cycles(f, n, &cfg.tolerances, &cfg.trace.roots)?;
            if index > cycles.len() {
                return Err(usage(format!(
                    "period {n} has {} cycles, asked for {index}",
                    cycles.len()
                )));
            }
            cycles.swap_remove(index - 1)
        }
    };
    if base > cycle.period {
        return Err(usage(format!("base {base} exceeds the period {}", cycle.period)));
    }
    Ok(Selected { cycle, base })
}

/// An integer selects a critical point by 0-based index; anything else is
/// read as a complex number and matched to the nearest critical point.
pub fn critical(spec: &str, critical: &[Complex64]) -> Result<usize, CliError> {
    if let Ok(i) = spec.trim().parse::<usize>() {
        if i >= critical.len() {
            return Err(usage(format!(
                "critical index {i} out of range: the map has {} critical points",
                critical.len()
            )));
        }
        return Ok(i);
    }
    let z = parse_complex(spec).map_err(|e| usage(e.to_string()))?;
    critical
        .iter()
        .position(|c| (c - z).norm() <= CRITICAL_MATCH)
        .ok_or_else(|| usage(format!("{spec} is not a critical point")))
}

pub fn complex(spec: &str) -> Result<Complex64, CliError> {
    parse_complex(spec).map_err(|e| usage(e.to_string()))
}
