//! Serialization helpers shared by report documents.
//!
//! Complex numbers are written as `[re, im]` arrays; lattice values use their
//! textual `p=K;w=...` form.

use std::fmt::Display;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::Serializer;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "plaque/1";

pub fn complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize_into(s)
}

pub fn complex_vec<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(zs.len()))?;
    for z in zs {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

pub fn complex_opt<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    match z {
        Some(z) => complex(z, s),
        None => s.serialize_none(),
    }
}

pub fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn display_opt<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

trait SerializeInto {
    fn serialize_into<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error>;
}

impl SerializeInto for [f64; 2] {
    fn serialize_into<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(self, s)
    }
}
