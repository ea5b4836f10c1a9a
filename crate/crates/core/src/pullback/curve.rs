use std::f64::consts::PI;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A closed polyline around an interior reference point (the closing edge
/// from the last sample back to the first is implicit).
///
/// Samples are stored as offsets from `center`, so curves far smaller than
/// the spacing of doubles near `center` keep their shape.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledLoop {
    pub center: Complex64,
    pub offsets: Vec<Complex64>,
    /// Number of circuits of the parent curve needed to close this one.
    pub traversals: u32,
    /// For traced lifts: the parent-curve parameter each sample maps onto.
    pub parent_params: Vec<f64>,
}

impl SampledLoop {
    pub fn circle(center: Complex64, radius: f64, samples: usize) -> Self {
        let offsets = (0..samples)
            .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / samples as f64))
            .collect();
        Self {
            center,
            offsets,
            traversals: 1,
            parent_params: Vec::new(),
        }
    }

    /// A loop through the given absolute points.
    pub fn from_samples(samples: &[Complex64], center: Complex64) -> Self {
        Self {
            center,
            offsets: samples.iter().map(|z| z - center).collect(),
            traversals: 1,
            parent_params: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Absolute sample positions.
    pub fn samples(&self) -> Vec<Complex64> {
        self.offsets.iter().map(|o| self.center + o).collect()
    }

    /// Offset at parameter `t`, where sample `k` sits at `t = k` and the
    /// parameter wraps modulo the sample count.
    pub fn offset_at(&self, t: f64) -> Complex64 {
        let m = self.offsets.len();
        let t = t.rem_euclid(m as f64);
        let i = (t.floor() as usize).min(m - 1);
        let frac = t - i as f64;
        let a = self.offsets[i];
        if frac == 0.0 {
            return a;
        }
        let b = self.offsets[(i + 1) % m];
        a + (b - a) * frac
    }

    pub fn point_at(&self, t: f64) -> Complex64 {
        self.center + self.offset_at(t)
    }

    /// Side of the bounding box of the samples, along its diagonal.
    pub fn diameter_bound(&self) -> f64 {
        let Some(&first) = self.offsets.first() else {
            return 0.0;
        };
        let (mut lo, mut hi) = (first, first);
        for s in &self.offsets {
            lo = Complex64::new(lo.re.min(s.re), lo.im.min(s.im));
            hi = Complex64::new(hi.re.max(s.re), hi.im.max(s.im));
        }
        (hi - lo).norm()
    }

    /// Winding number around `z` given as an offset from the centre. The
    /// on-curve threshold shrinks with the curve so tiny loops stay testable.
    pub fn winding_around_offset(&self, z: Complex64) -> Result<i64> {
        let tol = ON_CURVE.min(ON_CURVE * self.diameter_bound());
        winding_with_tolerance(&self.offsets, z, tol)
    }
}

impl Serialize for SampledLoop {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let samples: Vec<[f64; 2]> = self.samples().iter().map(|z| [z.re, z.im]).collect();
        let mut st = s.serialize_struct("SampledLoop", 4)?;
        st.serialize_field("center", &[self.center.re, self.center.im])?;
        st.serialize_field("diameter", &self.diameter_bound())?;
        st.serialize_field("traversals", &self.traversals)?;
        st.serialize_field("samples", &samples)?;
        st.end()
    }
}

const ON_CURVE: f64 = 1e-12;

fn winding_with_tolerance(samples: &[Complex64], z: Complex64, tol: f64) -> Result<i64> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("empty curve".into()));
    }
    let distance = samples.iter().map(|s| (s - z).norm()).fold(f64::INFINITY, f64::min);
    if distance <= tol {
        return Err(Error::OnCurve { distance });
    }
    let n = samples.len();
    let total: f64 = (0..n)
        .map(|k| ((samples[(k + 1) % n] - z) / (samples[k] - z)).arg())
        .sum();
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Discrete winding number of the closed polyline `samples` around `z`.
pub fn winding_number(samples: &[Complex64], z: Complex64) -> Result<i64> {
    winding_with_tolerance(samples, z, ON_CURVE)
}

/// `(winding, inside)` with `inside` iff the winding number is nonzero.
pub fn winding_contains(curve: &SampledLoop, z: Complex64) -> Result<(i64, bool)> {
    let w = curve.winding_around_offset(z - curve.center)?;
    Ok((w, w != 0))
}
