//! Finitely generated elements of the signature lattice: unions of principal
//! downsets `α(a) = { b : b <= a }`, kept as a sorted antichain.

use std::fmt;
use std::str::FromStr;

use super::tail::TailClass;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    generators: Vec<TailClass>,
}

impl Signature {
    /// Reduces an arbitrary nonempty generator list to antichain normal form.
    pub fn from_generators(generators: impl IntoIterator<Item = TailClass>) -> Result<Self> {
        let mut gens: Vec<TailClass> = generators.into_iter().collect();
        if gens.is_empty() {
            return Err(Error::EmptySignature);
        }
        gens.sort();
        gens.dedup();
        let maximal: Vec<TailClass> = gens
            .iter()
            .filter(|b| !gens.iter().any(|a| a != *b && b.leq(a)))
            .cloned()
            .collect();
        Ok(Self { generators: maximal })
    }

    /// `α(a)`.
    pub fn principal(a: TailClass) -> Self {
        Self { generators: vec![a] }
    }

    /// `{0}`, the least signature.
    pub fn bottom() -> Self {
        Self::principal(TailClass::zero())
    }

    /// `α(1)`, the whole algebra.
    pub fn top() -> Self {
        Self::principal(TailClass::one())
    }

    pub fn generators(&self) -> &[TailClass] {
        &self.generators
    }

    pub fn is_bottom(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_zero()
    }

    /// The single generator when the signature is principal.
    pub fn as_principal(&self) -> Option<&TailClass> {
        match self.generators.as_slice() {
            [a] => Some(a),
            _ => None,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_generators(self.generators.iter().chain(&other.generators).cloned()).expect("nonempty")
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let meets = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.meet(b)));
        Self::from_generators(meets).expect("nonempty")
    }

    pub fn contains(&self, b: &TailClass) -> bool {
        self.generators.iter().any(|a| b.leq(a))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.generators.iter().all(|a| other.contains(a))
    }

    pub fn shift(&self, m: i64) -> Self {
        Self::from_generators(self.generators.iter().map(|a| a.shift(m))).expect("nonempty")
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Semicolon-joined generators, e.g. `p=2;w=01;p=3;w=001`.
    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split(';').map(str::trim).collect();
        if !fields.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("unpaired generator fields in {s:?}")));
        }
        let gens = fields
            .chunks(2)
            .map(|pair| format!("{};{}", pair[0], pair[1]).parse::<TailClass>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: usize) -> TailClass {
        TailClass::sq(n).unwrap()
    }

    fn alpha(n: usize) -> Signature {
        Signature::principal(sq(n))
    }

    #[test]
    fn intersect_reduces_to_meet() {
        assert_eq!(alpha(2).intersect(&alpha(3)), alpha(6));
    }

    #[test]
    fn union_drops_dominated() {
        assert_eq!(alpha(2).union(&alpha(6)), alpha(2));
        let u = alpha(2).union(&alpha(3));
        assert_eq!(u.generators().len(), 2);
        let j = sq(2).join(&sq(3));
        assert!(!u.contains(&j));
        assert!(Signature::principal(j).contains(&sq(3)));
    }

    #[test]
    fn containment() {
        assert!(alpha(2).contains(&sq(6)));
        assert!(Signature::bottom().contains(&TailClass::zero()));
        assert!(!Signature::bottom().contains(&sq(4)));
    }

    #[test]
    fn shifts() {
        assert_eq!(alpha(2).shift(1), Signature::principal("p=2;w=10".parse().unwrap()));
        let s = alpha(2).union(&alpha(5));
        assert_eq!(s.shift(0), s);
        assert_eq!(s.shift(3).shift(-3), s);
        for m in -4..=4 {
            assert!(Signature::bottom().shift(m).is_bottom());
        }
    }

    #[test]
    fn bottom_absorbed_in_union() {
        assert_eq!(Signature::bottom().union(&alpha(4)), alpha(4));
        assert_eq!(Signature::top().intersect(&alpha(4)), alpha(4));
    }

    #[test]
    fn text_roundtrip() {
        let s = alpha(2).union(&alpha(3));
        assert_eq!(s.to_string(), "p=2;w=01;p=3;w=001");
        assert_eq!(s.to_string().parse::<Signature>().unwrap(), s);
        assert!("p=2".parse::<Signature>().is_err());
    }
}
