//! Finite reduction of countable meets, and the diagonal witness used when a
//! decreasing chain of classes does not stabilize.

use serde::Serialize;

use super::tail::TailClass;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChainReduction {
    /// Partial meets are constant from 1-based index `index` through the window.
    Stabilized {
        index: usize,
        #[serde(serialize_with = "crate::report::display")]
        class: TailClass,
    },
    NotStabilized {
        #[serde(serialize_with = "crate::report::display")]
        last: TailClass,
    },
}

impl ChainReduction {
    pub fn class(&self) -> &TailClass {
        match self {
            Self::Stabilized { class, .. } => class,
            Self::NotStabilized { last } => last,
        }
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, Self::Stabilized { .. })
    }
}

/// `t'_n = t_1 ∧ ... ∧ t_n` for every prefix.
pub fn partial_meets(ts: &[TailClass]) -> Vec<TailClass> {
    let mut out: Vec<TailClass> = Vec::with_capacity(ts.len());
    for t in ts {
        let next = match out.last() {
            Some(prev) => prev.meet(t),
            None => t.clone(),
        };
        out.push(next);
    }
    out
}

/// Looks for the first `n < window` with `t'_n = t'_{n+1} = ... = t'_window`.
/// A window of one is trivially stable.
pub fn meet_chain_reduce(ts: &[TailClass], window: usize) -> Result<ChainReduction> {
    if ts.is_empty() || window == 0 || window > ts.len() {
        return Err(Error::InvalidArgument(format!(
            "window {window} must lie in 1..={}",
            ts.len()
        )));
    }
    let meets = partial_meets(&ts[..window]);
    let last = meets[window - 1].clone();
    if window == 1 {
        return Ok(ChainReduction::Stabilized { index: 1, class: last });
    }
    let mut first = window;
    while first > 1 && meets[first - 2] == last {
        first -= 1;
    }
    Ok(if first < window {
        ChainReduction::Stabilized {
            index: first,
            class: last,
        }
    } else {
        ChainReduction::NotStabilized { last }
    })
}

/// First `k` one-positions of the diagonal sequence whose `n`-th one sits at
/// the `n`-th one of `t'_n`.
pub fn diagonal_witness(ts: &[TailClass], k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > ts.len() {
        return Err(Error::InvalidArgument(format!(
            "witness length {k} must lie in 1..={}",
            ts.len()
        )));
    }
    partial_meets(ts)
        .iter()
        .enumerate()
        .map(|(i, t)| {
            if t.is_zero() {
                return Err(Error::ChainHitsBottom(i + 1));
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .take(k)
        .enumerate()
        .map(|(i, t)| Ok(t.nth_one(i + 1).expect("nonzero class")))
        .collect()
}

/// For each `n`, every listed position with index `>= n` must be a one of `t'_n`.
pub fn witness_is_valid(ts: &[TailClass], positions: &[usize]) -> bool {
    let meets = partial_meets(ts);
    if positions.len() > meets.len() || positions.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    meets
        .iter()
        .take(positions.len())
        .enumerate()
        .all(|(n, t)| positions[n..].iter().all(|&pos| t.bit_at(pos)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: usize) -> TailClass {
        TailClass::sq(n).unwrap()
    }

    #[test]
    fn stabilizes_on_repeated_tail() {
        let r = meet_chain_reduce(&[sq(2), sq(3), sq(3), sq(3)], 4).unwrap();
        assert_eq!(r, ChainReduction::Stabilized { index: 2, class: sq(6) });
    }

    #[test]
    fn strictly_decreasing_does_not_stabilize() {
        let r = meet_chain_reduce(&[sq(2), sq(4), sq(8), sq(16)], 4).unwrap();
        assert_eq!(r, ChainReduction::NotStabilized { last: sq(16) });
    }

    #[test]
    fn singleton_is_stable() {
        let r = meet_chain_reduce(&[sq(5)], 1).unwrap();
        assert_eq!(r, ChainReduction::Stabilized { index: 1, class: sq(5) });
        assert!(meet_chain_reduce(&[], 1).is_err());
        assert!(meet_chain_reduce(&[sq(2)], 2).is_err());
    }

    #[test]
    fn witness_examples() {
        let chain = [sq(2), sq(4), sq(8), sq(16)];
        let w = diagonal_witness(&chain, 4).unwrap();
        assert_eq!(w, vec![2, 8, 24, 64]);
        assert!(witness_is_valid(&chain, &w));
        assert_eq!(diagonal_witness(&[sq(3), sq(3), sq(3)], 3).unwrap(), vec![3, 6, 9]);
        assert_eq!(
            diagonal_witness(&[sq(2), TailClass::zero()], 2),
            Err(Error::ChainHitsBottom(2))
        );
    }

    #[test]
    fn witness_validity_rejects_bad_positions() {
        let chain = [sq(2), sq(4)];
        assert!(!witness_is_valid(&chain, &[2, 6]));
        assert!(witness_is_valid(&chain, &[2, 8]));
    }
}
