#![allow(dead_code)]

pub mod fixtures;

use plaque::seqlattice::{EventuallyPeriodicSequence, TailClass};
use rand::Rng;

/// A raw eventually periodic sequence, read bit by bit without the library.
#[derive(Debug, Clone)]
pub struct RawSeq {
    pub pre: Vec<bool>,
    pub per: Vec<bool>,
}

impl RawSeq {
    pub fn random(rng: &mut impl Rng, max_pre: usize, max_period: usize) -> Self {
        let pre_len = rng.gen_range(0..=max_pre);
        let p = rng.gen_range(1..=max_period);
        Self {
            pre: (0..pre_len).map(|_| rng.gen()).collect(),
            per: (0..p).map(|_| rng.gen()).collect(),
        }
    }

    pub fn bit(&self, n: usize) -> bool {
        if n <= self.pre.len() {
            self.pre[n - 1]
        } else {
            let k = n - self.pre.len() - 1;
            self.per[k % self.per.len()]
        }
    }

    pub fn class(&self) -> TailClass {
        EventuallyPeriodicSequence::new(self.pre.clone(), self.per.clone())
            .unwrap()
            .class()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn class_bit(t: &TailClass, n: usize) -> bool {
    let w = t.residue_word();
    w[(n - 1) % w.len()]
}

/// Positions checked by the windowed oracle: past every preperiod (and
/// past the largest shift), `16 + 2·lcm` of them.
fn window(seqs: &[&RawSeq], skip: usize) -> std::ops::Range<usize> {
    let start = seqs.iter().map(|s| s.pre.len()).max().unwrap() + skip + 1;
    let l = seqs.iter().fold(1, |acc, s| lcm(acc, s.per.len()));
    start..start + 16 + 2 * l
}

fn agree(
    name: &str,
    got: &TailClass,
    range: std::ops::Range<usize>,
    want: impl Fn(usize) -> bool,
) -> Result<(), String> {
    for n in range {
        if class_bit(got, n) != want(n) {
            return Err(format!("{name}: position {n} disagrees for {got}"));
        }
    }
    Ok(())
}

fn law(name: &str, ok: bool) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("law failed: {name}"))
    }
}

/// Boolean-algebra laws, shift group laws, and bitwise agreement of every
/// operation with the raw sequences on a window.
pub fn check_triple(x: &RawSeq, y: &RawSeq, z: &RawSeq, m: i64, k: i64) -> Result<(), String> {
    let (a, b, c) = (x.class(), y.class(), z.class());
    let zero = TailClass::zero();
    let one = TailClass::one();

    let w = window(&[x, y], 0);
    agree("join", &a.join(&b), w.clone(), |n| x.bit(n) | y.bit(n))?;
    agree("meet", &a.meet(&b), w.clone(), |n| x.bit(n) & y.bit(n))?;
    agree("neg", &a.neg(), w.clone(), |n| !x.bit(n))?;
    let leq_raw = w.clone().all(|n| !x.bit(n) || y.bit(n));
    law("leq matches bitwise order", a.leq(&b) == leq_raw)?;
    let ws = window(&[x], m.unsigned_abs() as usize);
    agree("shift", &a.shift(m), ws, |n| x.bit((n as i64 - m) as usize))?;

    law("join commutes", a.join(&b) == b.join(&a))?;
    law("meet commutes", a.meet(&b) == b.meet(&a))?;
    law("join associates", a.join(&b).join(&c) == a.join(&b.join(&c)))?;
    law("meet associates", a.meet(&b).meet(&c) == a.meet(&b.meet(&c)))?;
    law("absorption ∨∧", a.join(&a.meet(&b)) == a)?;
    law("absorption ∧∨", a.meet(&a.join(&b)) == a)?;
    law("∧ distributes", a.meet(&b.join(&c)) == a.meet(&b).join(&a.meet(&c)))?;
    law("∨ distributes", a.join(&b.meet(&c)) == a.join(&b).meet(&a.join(&c)))?;
    law("complement ∧", a.meet(&a.neg()) == zero)?;
    law("complement ∨", a.join(&a.neg()) == one)?;
    law("double negation", a.neg().neg() == a)?;
    law("de Morgan", a.join(&b).neg() == a.neg().meet(&b.neg()))?;
    law("identities", a.join(&zero) == a && a.meet(&one) == a)?;
    law("order via meet", a.leq(&b) == (a.meet(&b) == a))?;
    law("order is transitive", !(a.leq(&b) && b.leq(&c)) || a.leq(&c))?;

    law("shift by zero", a.shift(0) == a)?;
    law("shift composes", a.shift(m).shift(k) == a.shift(m + k))?;
    law("shift inverse", a.shift(m).shift(-m) == a)?;
    law("shift ∧", a.meet(&b).shift(m) == a.shift(m).meet(&b.shift(m)))?;
    law("shift ∨", a.join(&b).shift(m) == a.shift(m).join(&b.shift(m)))?;
    law("shift ¬", a.neg().shift(m) == a.shift(m).neg())?;
    law("shift period", a.shift(a.period() as i64) == a)?;
    Ok(())
}
