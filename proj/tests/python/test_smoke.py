from fractions import Fraction

import pytest

import fy


def test_ifs_geometry():
    cs = fy.cantor_ifs(1)
    assert cs.map_count == 2
    a, b = cs.word_interval([0, 1])
    assert fy.fraction(a) == Fraction(2, 9)
    assert fy.fraction(b) == Fraction(1, 3)
    assert fy.fraction(cs.point([1], 0)) == Fraction(2, 3)
    gaps = cs.gap_intervals([])
    assert fy.fraction(gaps[0][0]) == Fraction(1, 3)


def test_ifs_json_roundtrip():
    cs = fy.cantor_ifs(1)
    again = fy.ifs_from_json(cs.to_json())
    assert again == cs


def test_integrate_trichotomy():
    cs = fy.cantor_ifs(1)
    r = fy.integrate(cs, "const(1)", "cantor(1,1/2)")
    assert r["status"] == "Converged"
    assert fy.fraction(r["estimate"]) == 2

    r0 = fy.integrate(cs, "const(1)", "cantor(1,1/3)")
    assert r0["status"] == "Converged"
    assert fy.fraction(r0["estimate"]) == 0

    rd = fy.integrate(cs, "const(1)", "cantor(1,3/4)")
    assert rd["status"] == "Diverged"
    assert fy.fraction(rd["growth_ratio"]) == Fraction(3, 2)


def test_level_sums_are_exact_strings():
    cs = fy.cantor_ifs(1)
    assert fy.fraction(fy.phi_n(cs, "const(1)", "cantor(1,1/2)", 5)) == 2
    assert fy.fraction(fy.psi_n(cs, "const(1)", "cantor(1,1/2)", 3)) == 0
    assert fy.fraction(fy.phi_n(cs, "step(1/3)", "step(1/3)", 7)) == 1


def test_moments():
    table = [fy.fraction(v) for v in fy.moments(6)]
    assert table == [
        Fraction(2),
        Fraction(1),
        Fraction(3, 4),
        Fraction(5, 8),
        Fraction(87, 160),
        Fraction(31, 64),
        Fraction(10215, 23296),
    ]
    oracle = fy.fraction(fy.moment_oracle(1, 1))
    assert oracle == 1


def test_dimension():
    d = fy.dimension(fy.cantor_ifs(1))
    assert d["value"] == pytest.approx(0.6309297535714574)
    assert [fy.fraction(v) for v in d["log_form"]] == [3, 2]
    assert fy.dimension(fy.binary_interval_ifs())["value"] == 1.0


def test_substitute():
    out = fy.substitute(
        fy.binary_interval_ifs(), fy.unequal_interval_ifs(), [1, 0], "const(1)", "x"
    )
    assert out["sign_class"] == "FlipsEnds"
    assert out["well_defined"]
    assert fy.fraction(out["source"]["estimate"]) == -2
    assert fy.fraction(out["target"]["estimate"]) == 2

    bad = fy.substitute(fy.binary_interval_ifs(), fy.cantor_ifs(1), [0, 1], "const(1)", "x")
    assert not bad["well_defined"]


def test_errors_are_typed():
    with pytest.raises(fy.FyError):
        fy.ifs_from_json('{"interval": ["0","1"], "maps": [{"r":"2","t":"0"},{"r":"1/2","t":"1/2"}]}')
    with pytest.raises(fy.FyError):
        fy.phi_n(fy.cantor_ifs(1), "nope(1)", "x", 2)


def test_float_mode():
    bi = fy.binary_interval_ifs()
    v = fy.phi_n(bi, "x", "x^2", 10, float_mode=False)
    assert fy.fraction(v) == Fraction(4, 3) - Fraction(1, 3 * 4**10)
    s = fy.stieltjes_sum("x", "x^2", 64, rule="midpoint")
    assert fy.fraction(s) * 2 == fy.fraction(fy.phi_n(bi, "x", "x^2", 6))
