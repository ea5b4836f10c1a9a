"""Smoke test for the `plaque` extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import cmath

import plaque


def main():
    a = plaque.TailClass.sq(2) & plaque.TailClass.sq(3)
    assert str(a) == "p=6;w=000001", a
    assert plaque.TailClass.sq(4) <= plaque.TailClass.sq(2)
    assert ~plaque.TailClass.zero() == plaque.TailClass.one()
    assert str(plaque.eval_expr("shift(1, sq(2))")) == "p=2;w=10"
    assert plaque.eval_expr("sq(4) <= sq(2)") is True

    sq = [plaque.TailClass.sq(n) for n in (2, 4, 8, 16)]
    assert plaque.diagonal_witness(sq, 4) == [2, 8, 24, 64]
    stable, index, _ = plaque.meet_chain_reduce([plaque.TailClass.sq(1 << k) for k in range(9)], 9)
    assert not stable and index is None

    s = plaque.Signature.principal(plaque.TailClass.sq(2))
    assert s.intersect(s.shift(1)).is_bottom()
    assert plaque.TailClass.sq(4) in s

    basilica = plaque.Polynomial("quad:c=-1")
    assert basilica.critical_points() == [0j]
    (two,) = basilica.cycles(2)
    assert two.label == "SuperAttracting"
    assert abs(two.multiplier) < 1e-12

    z2 = plaque.Polynomial.quadratic(0)
    fixed = {c.label: c for c in z2.cycles(1)}
    chain = plaque.pullback_chain(z2, fixed["SuperAttracting"].lift(), 0.25, 8)
    assert chain.index_bits(0) == "11111111"
    assert chain.branching_count() == 8
    chain = plaque.pullback_chain(z2, fixed["Repelling"].lift(), 0.1, 32)
    assert chain.is_complete() and chain.max_residual() <= 1e-9
    assert abs(chain.curve(1)[0] - 1.1) < 1e-12

    radii = [0.1 * 2.0 ** -j for j in range(6)]
    est = plaque.estimate_signature(basilica, two.lift(1), radii, 32)
    assert est["verdict"] == "Stable", est
    other = plaque.estimate_signature(basilica, two.lift(2), radii, 32)
    assert plaque.Signature.parse(est["value"]).shift(-1) == plaque.Signature.parse(other["value"])
    assert str(plaque.predict_signature(basilica, two)[0]) in (est["value"], other["value"])

    report = plaque.verify_cycle_theorem(basilica, 2)
    assert report["pass"] and report["stable_rows"] == 3, report["stable_rows"]

    siegel = plaque.Polynomial.siegel_golden()
    zero = [c for c in siegel.cycles(1) if abs(c.points[0]) < 1e-12][0]
    assert zero.label == "NeutralIrrational"
    assert abs(zero.multiplier - cmath.exp(2j * cmath.pi * (5 ** 0.5 - 1) / 2)) < 1e-12
    verdict = plaque.regularity_verdict(siegel, zero.lift(), [0.9 * 2.0 ** -j for j in range(6)], 32)
    assert verdict["verdict"] == "Regular", verdict["verdict"]

    orbit, plaque_chain = plaque.construct_regular_plaque(basilica, 16)
    assert plaque_chain.is_complete() and plaque_chain.branching_count() == 0
    orbit, out = plaque.construct_irregular_orbit(siegel, 8)
    assert out["engulfing_depths"], out

    try:
        plaque.TailClass("p=2;w=1")
    except ValueError:
        pass
    else:
        raise AssertionError("mismatched period accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
