mod common;

use common::fixtures::{c, crit, lift, quad};
use plaque::dynamics::{orbit_closure_sample, periodic_cycles, Polynomial};
use plaque::engine::checks;
use plaque::engine::*;
use plaque::pullback::{construct_regular_plaque, pullback_chain, BackwardOrbit};
use plaque::seqlattice::{Signature, TailClass};

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn class(text: &str) -> TailClass {
    text.parse().unwrap()
}

fn estimate(f: &Polynomial, orbit: &BackwardOrbit, radii: &[f64], depth: usize) -> SignatureEstimate {
    estimate_signature(f, orbit, &crit(f), 0, radii, depth, &cfg()).unwrap()
}

#[test]
fn index_class_examples() {
    let f = quad(0.0);
    let cp = crit(&f);
    let e = index_class(&f, &lift(&f, 1, c(0.0, 0.0)), &cp, 0, 0.25, 32, &cfg()).unwrap();
    assert_eq!(e.class(), Some(&TailClass::one()));
    let e = index_class(&f, &lift(&f, 1, c(1.0, 0.0)), &cp, 0, 0.1, 32, &cfg()).unwrap();
    assert_eq!(e.class(), Some(&TailClass::zero()));
    let g = quad(-1.0);
    let e = index_class(&g, &lift(&g, 2, c(0.0, 0.0)), &crit(&g), 0, 0.05, 32, &cfg()).unwrap();
    assert_eq!(e.class(), Some(&class("p=2;w=10")));
    assert_eq!(e.bits, "10".repeat(16));
}

#[test]
fn estimate_examples() {
    let f = quad(0.0);
    let top = estimate(&f, &lift(&f, 1, c(0.0, 0.0)), &[0.4, 0.2, 0.1], 32);
    assert!(top.is_stable());
    assert_eq!(top.value, Signature::principal(TailClass::sq(1).unwrap()));
    let bottom = estimate(&f, &lift(&f, 1, c(1.0, 0.0)), &[0.4, 0.2, 0.1], 32);
    assert!(bottom.is_stable() && bottom.value.is_bottom());

    let g = quad(-1.0);
    let alt = estimate(&g, &lift(&g, 2, c(0.0, 0.0)), &[0.1, 0.05, 0.025], 32);
    assert!(alt.is_stable());
    assert_eq!(alt.value, Signature::principal(TailClass::sq(2).unwrap()).shift(1));
    assert!(alt.monotone);
}

#[test]
fn estimate_rejects_bad_schedules() {
    let f = quad(0.0);
    let orbit = lift(&f, 1, c(0.0, 0.0));
    assert!(estimate_signature(&f, &orbit, &crit(&f), 0, &[0.4, 0.2], 32, &cfg()).is_err());
    assert!(estimate_signature(&f, &orbit, &crit(&f), 0, &[0.1, 0.2, 0.05], 32, &cfg()).is_err());
}

#[test]
fn regularity_examples() {
    let s = Polynomial::siegel_golden();
    let radii = halving_schedule(0.9, 6);
    let rep = regularity_verdict(&s, &lift(&s, 1, c(0.0, 0.0)), &crit(&s), &radii, 64, &cfg()).unwrap();
    assert_eq!(rep.verdict, Regularity::Regular);

    let p = quad(0.25);
    let rep = regularity_verdict(&p, &lift(&p, 1, c(0.5, 0.0)), &crit(&p), &radii, 64, &cfg()).unwrap();
    assert_eq!(rep.verdict, Regularity::Irregular);

    let f = quad(0.0);
    let (orbit, _) = construct_regular_plaque(&f, 16, &crit(&f), &cfg().trace).unwrap();
    let rep = regularity_verdict(&f, &orbit, &crit(&f), &[0.1, 0.05, 0.025], 16, &cfg()).unwrap();
    assert_eq!(rep.verdict, Regularity::Regular);
}

#[test]
fn prediction_examples() {
    let tol = cfg().tolerances;
    let rc = cfg().trace.roots;
    let f = quad(0.0);
    let fixed = periodic_cycles(&f, 1, &tol, &rc).unwrap();
    let zero = fixed.iter().find(|cy| cy.points[0].norm() < 1e-9).unwrap();
    let one = fixed.iter().find(|cy| (cy.points[0] - 1.0).norm() < 1e-9).unwrap();
    assert_eq!(
        predict_signature(&f, zero, c(0.0, 0.0)).candidates,
        vec![Signature::top()]
    );
    assert_eq!(
        predict_signature(&f, one, c(0.0, 0.0)).candidates,
        vec![Signature::bottom()]
    );

    let g = quad(-1.0);
    let two = periodic_cycles(&g, 2, &tol, &rc).unwrap().remove(0);
    let p = predict_signature(&g, &two, c(0.0, 0.0));
    let sq2 = Signature::principal(TailClass::sq(2).unwrap());
    assert_eq!(p.candidates, vec![sq2.clone(), sq2.shift(1)]);
    assert!(p.participates);

    let s = Polynomial::siegel_golden();
    let origin = periodic_cycles(&s, 1, &tol, &rc)
        .unwrap()
        .into_iter()
        .find(|cy| cy.points[0].norm() < 1e-9)
        .unwrap();
    let p = predict_signature(&s, &origin, crit(&s)[0]);
    assert_eq!(p.note.as_deref(), Some("Siegel-case prediction"));
    assert!(p.candidates[0].is_bottom());
}

#[test]
fn verify_examples() {
    let g = quad(-1.0);
    let rep = verify_cycle_theorem(&g, &crit(&g), 2, 0.1, 6, 32, &cfg()).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.rows.len(), 3);
    assert_eq!(rep.stable_rows, 3);
    let f = quad(0.0);
    let rep = verify_cycle_theorem(&f, &crit(&f), 1, 0.1, 6, 32, &cfg()).unwrap();
    assert!(rep.pass && rep.rows.iter().all(|r| r.matched == Some(true)));
    let p = quad(0.25);
    let rep = verify_cycle_theorem(&p, &crit(&p), 1, 0.9, 6, 64, &cfg()).unwrap();
    assert_eq!(rep.rows.len(), 1);
    assert_eq!(rep.rows[0].observed_k, Some(0));
    assert_eq!(rep.rows[0].regularity, Regularity::Irregular);
}

#[test]
fn branching_examples() {
    let f = quad(0.0);
    let cp = crit(&f);
    let t = cfg().trace;
    let ch = pullback_chain(&f, &lift(&f, 1, c(0.0, 0.0)), 0.25, 16, &cp, &t).unwrap();
    let b = branching_count(&ch);
    assert_eq!((b.count, b.bound), (16, Some(1 << 16)));
    let ch = pullback_chain(&f, &lift(&f, 1, c(1.0, 0.0)), 0.1, 16, &cp, &t).unwrap();
    assert_eq!(branching_count(&ch).bound, Some(1));
    let g = quad(-1.0);
    let ch = pullback_chain(&g, &lift(&g, 2, c(0.0, 0.0)), 0.05, 16, &crit(&g), &t).unwrap();
    let b = branching_count(&ch);
    assert_eq!(b.count, 8);
    assert_eq!(b.levels, vec![1, 3, 5, 7, 9, 11, 13, 15]);
}

#[test]
fn probe_examples() {
    let zero = c(0.0, 0.0);
    let rep = inverse_critical_probe(&quad(0.0), zero, &[zero], &[0.25], 4, 0.02, 10_000, &[zero], &cfg());
    assert_eq!(rep.satisfied_fraction, 1.0);

    let sample = [c(-2.0, 0.0), c(2.0, 0.0)];
    let rep = inverse_critical_probe(&quad(-2.0), zero, &sample, &[0.05], 6, 0.02, 10_000, &[zero], &cfg());
    assert!(rep.entries.iter().all(|e| e.status == ProbeStatus::Unsatisfied));

    let s = Polynomial::siegel_golden();
    let cp = crit(&s);
    let sample = orbit_closure_sample(&s, cp[0], 1000, false, 1e-8).unwrap().points;
    let rep = inverse_critical_probe(&s, cp[0], &sample, &[1e-2], 6, 0.02, 10_000, &cp, &cfg());
    assert!(rep.entries.iter().any(|e| e.status == ProbeStatus::Satisfied));
}

#[test]
fn structural_checks_on_two_cycle() {
    let g = quad(-1.0);
    let at_zero = lift(&g, 2, c(0.0, 0.0));
    let at_minus_one = lift(&g, 2, c(-1.0, 0.0));
    let radii = halving_schedule(0.1, 6);
    let s0 = estimate(&g, &at_zero, &radii, 32);
    let s1 = estimate(&g, &at_minus_one, &radii, 32);
    assert_eq!(checks::disjointness(&s0, &s1).holds, Some(true));
    assert_eq!(checks::shift_equivariance(&s0, &s1, 1).holds, Some(true));
    let reindexed = estimate(&g, &at_zero.reindexed(1), &radii, 32);
    assert_eq!(reindexed.value, s1.value);
    assert_eq!(checks::shift_equivariance(&s0, &s0, 0).holds, Some(true));
    let other = estimate(&g, &at_zero, &[0.08, 0.044, 0.0242, 0.0133], 32);
    assert_eq!(checks::schedule_independence(&s0, &other).holds, Some(true));
    let reg = regularity_verdict(&g, &at_zero, &crit(&g), &radii, 32, &cfg()).unwrap();
    assert_eq!(checks::regularity_bridge(&[s0], reg.verdict).holds, Some(true));
}
