//! Forward orbits: plain evaluation, critical-orbit samples and recurrence.

use num_complex::Complex64;
use serde::Serialize;

use super::poly::Polynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbit {
    #[serde(serialize_with = "crate::report::complex_vec")]
    pub points: Vec<Complex64>,
    /// Step at which `|z|` exceeded the escape radius with steps still to go.
    pub escaped_at: Option<usize>,
}

/// `(z0, f(z0), ..., f^N(z0))`, stopping early once the orbit escapes.
pub fn evaluate_orbit(f: &Polynomial, z0: Complex64, steps: usize) -> Result<Orbit> {
    let radius = f.escape_radius();
    let mut points = Vec::with_capacity(steps + 1);
    let mut z = z0;
    for step in 0..=steps {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite { step });
        }
        points.push(z);
        if step == steps {
            break;
        }
        if z.norm() > radius {
            return Ok(Orbit {
                points,
                escaped_at: Some(step),
            });
        }
        z = f.eval(z);
    }
    Ok(Orbit {
        points,
        escaped_at: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSample {
    #[serde(serialize_with = "crate::report::complex_vec")]
    pub points: Vec<Complex64>,
    pub escaped_at: Option<usize>,
    pub includes_critical_point: bool,
}

/// Deduplicated `{f(c), ..., f^N(c)}` (optionally with `c` itself), the
/// finite stand-in for the closure of the critical orbit.
pub fn orbit_closure_sample(
    f: &Polynomial,
    c: Complex64,
    steps: usize,
    include_c: bool,
    dedup: f64,
) -> Result<OrbitSample> {
    let orbit = evaluate_orbit(f, c, steps)?;
    let skip = if include_c { 0 } else { 1 };
    let mut points: Vec<Complex64> = Vec::new();
    for &z in orbit.points.iter().skip(skip) {
        if !points.iter().any(|p| (p - z).norm() <= dedup) {
            points.push(z);
        }
    }
    Ok(OrbitSample {
        points,
        escaped_at: orbit.escaped_at,
        includes_critical_point: include_c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Recurrence {
    pub distance: f64,
    pub step: usize,
    pub escaped_at: Option<usize>,
}

/// `min_{1<=m<=N} |f^m(c) - c|` and the first step attaining it.
pub fn recurrence_probe(f: &Polynomial, c: Complex64, steps: usize) -> Result<Recurrence> {
    if steps == 0 {
        return Err(Error::InvalidArgument(
            "recurrence probe needs at least one step".into(),
        ));
    }
    let orbit = evaluate_orbit(f, c, steps)?;
    let (step, distance) = orbit
        .points
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, z)| (m, (z - c).norm()))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    Ok(Recurrence {
        distance,
        step,
        escaped_at: orbit.escaped_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::golden_multiplier;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quad(cv: f64) -> Polynomial {
        Polynomial::quadratic(c(cv, 0.0))
    }

    #[test]
    fn orbit_examples() {
        let pts = |f: &Polynomial, z: f64, n| evaluate_orbit(f, c(z, 0.0), n).unwrap();
        assert_eq!(pts(&quad(0.0), 0.0, 3).points, vec![c(0.0, 0.0); 4]);
        let cheb = pts(&quad(-2.0), 0.0, 3);
        assert_eq!(cheb.points, vec![c(0.0, 0.0), c(-2.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)]);
        let sq = pts(&quad(0.0), 2.0, 2);
        assert_eq!(sq.points, vec![c(2.0, 0.0), c(4.0, 0.0), c(16.0, 0.0)]);
        assert_eq!(sq.escaped_at, None);
    }

    #[test]
    fn non_finite_is_an_error() {
        let f = Polynomial::quadratic(c(0.0, 0.0));
        assert!(matches!(
            evaluate_orbit(&f, c(f64::NAN, 0.0), 2),
            Err(Error::NonFinite { step: 0 })
        ));
    }

    #[test]
    fn closure_samples() {
        let s = orbit_closure_sample(&quad(-2.0), c(0.0, 0.0), 5, false, 1e-8).unwrap();
        assert_eq!(s.points, vec![c(-2.0, 0.0), c(2.0, 0.0)]);
        let s = orbit_closure_sample(&quad(0.0), c(0.0, 0.0), 5, false, 1e-8).unwrap();
        assert_eq!(s.points, vec![c(0.0, 0.0)]);
        // 0 -> 1 -> 2 -> 5 leaves the radius-4 disk with steps remaining.
        let s = orbit_closure_sample(&quad(1.0), c(0.0, 0.0), 5, false, 1e-8).unwrap();
        assert_eq!(s.escaped_at, Some(3));
        assert_eq!(s.points, vec![c(1.0, 0.0), c(2.0, 0.0), c(5.0, 0.0)]);
    }

    #[test]
    fn recurrence_examples() {
        let r = recurrence_probe(&quad(0.0), c(0.0, 0.0), 100).unwrap();
        assert_eq!((r.distance, r.step), (0.0, 1));
        let r = recurrence_probe(&quad(-2.0), c(0.0, 0.0), 100).unwrap();
        assert_eq!(r.distance, 2.0);
        assert_eq!(r.step, 1);
    }

    #[test]
    fn siegel_critical_orbit_returns_closer_over_time() {
        let f = Polynomial::siegel_golden();
        let crit = -golden_multiplier() / 2.0;
        let d: Vec<f64> = [100, 1000, 10_000]
            .iter()
            .map(|&n| recurrence_probe(&f, crit, n).unwrap().distance)
            .collect();
        assert!(d[0] > 0.0);
        assert!(d[1] < d[0] && d[2] < d[1], "{d:?}");
    }
}
