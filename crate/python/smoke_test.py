"""Smoke test for the odt extension module."""

from fractions import Fraction

import odt


def frac(pair):
    return Fraction(*pair)


def main():
    p = odt.LaurentPoly([(0, 1), (2, -1)])
    assert str(p * p) == str(odt.LaurentPoly([(0, 1), (2, -2), (4, 1)]))
    r = odt.RationalFunc(p * p, p)
    assert r.as_poly() == p

    series = odt.loop_stack_series(2, 4)
    assert odt.GradedSeries.from_json(series.to_json()) == series
    assert series.log().exp() == series

    inv = odt.extract_dt_invariants(series)
    assert odt.rebuild_series(inv, 4) == series
    print("L_2 Omega_1 =", inv.poly([1]))

    for s, tp, tm in [(1, 0, 3), (-1, 0, 3), (1, 3, 0)]:
        res = odt.orientifold_dt(s, tp, tm, 7)
        assert not res.property_violations(), res.property_violations()
    assert odt.check_bc_duality(3, 3)

    a3 = odt.QuiverWithDuality.a3()
    e = [1, 2, 1]
    types = a3.sigma_hn_types(e)
    assert types and all(c >= 0 for _, c in types)
    ss = a3.sigma_semistable(e)
    for q in (3, 5):
        assert frac(ss.eval_q(q)) == frac(a3.sigma_oracle(q, e)), q
    d = [1, 1, 0]
    assert frac(a3.semistable(d).eval_q(3)) == frac(a3.oracle(3, d))

    try:
        a3.with_theta([1, 2, 3])
    except ValueError:
        pass
    else:
        raise AssertionError("incompatible stability accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
