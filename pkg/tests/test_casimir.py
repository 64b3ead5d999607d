import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from laakso import casimir
from laakso.errors import NumericalGuardError, ValidationError
from laakso.sequence import PlateConfig, constant_sequence, make_sequence, plate_config
from laakso.zeta import zeta_plated

PI = math.pi


# -- 1D ------------------------------------------------------------------------

def test_energy_matches_continued_zeta():
    cfg = plate_config(5, 3, Fraction(3, 10))
    e = casimir.energy_1d(cfg)
    assert e.kind == "energy-1d" and e.method == "regularized-sum"
    assert abs(e.value - zeta_plated(cfg, -0.5).real) <= 1e-8 * abs(e.value)
    P, Q = casimir.energy_coefficients(5, 3)
    assert e.exact == P * Fraction(5, 3) + Q * Fraction(5, 2)


def test_energy_small_x0_asymptote():
    # E X0 -> pi P / 2: the interior families scale like 1/(2 X0)
    P, Q = casimir.energy_coefficients(5, 3)
    base = PlateConfig(5, 3)
    for x in (Fraction(1, 10 ** 4), Fraction(1, 10 ** 6)):
        ex = casimir.energy_1d(base.with_X0(x)).value * float(x)
        # remainder is pi Q X0 / (1 - 2 X0)
        assert abs(ex - PI * float(P) / 2) <= 2 * PI * float(Q) * float(x)
    # for (5, 3) P > 0, so the energy diverges to +infinity
    assert P > 0


def test_closed_force_structure():
    a, b = casimir.force_coefficients(5, 3)
    res = casimir.force_1d_closed(5, 3, Fraction(3, 10))
    x = Fraction(3, 10)
    assert res.exact == a / x ** 2 + b / (1 - 2 * x) ** 2
    assert res.value == pytest.approx(float(res.exact) * PI)
    assert res.exact == Fraction(25, 6)
    assert "printed_value" in res.audit and res.audit["published_Z"] == 2


def test_force_is_quadratic_in_Z():
    x = Fraction(1, 10)
    F = [casimir.force_1d_closed(256, Z, x).exact for Z in range(1, 12)]
    d3 = [F[i + 3] - 3 * F[i + 2] + 3 * F[i + 1] - F[i] for i in range(len(F) - 3)]
    assert all(v == 0 for v in d3)
    assert any(F[i + 2] - 2 * F[i + 1] + F[i] != 0 for i in range(len(F) - 2))


@pytest.mark.parametrize("j,Z,x", [(5, 3, 0.3), (8, 2, 0.1), (3, 1, 0.4)])
def test_numeric_force_converges(j, Z, x):
    exact = casimir.force_1d_closed(j, Z, x).value
    errs = [abs(casimir.force_1d_numeric(j, Z, x, h).value - exact) for h in (1e-2, 1e-3)]
    assert errs[1] < errs[0]
    assert abs(casimir.force_1d_numeric(j, Z, x).value - exact) <= 1e-6 * abs(exact)


def test_numeric_force_guards():
    with pytest.raises(NumericalGuardError):
        casimir.force_1d_numeric(5, 3, 0.3, h=1e-13)
    with pytest.raises(ValidationError):
        casimir.force_1d_numeric(5, 3, 0.3, h=0.25)
    with pytest.raises(ValidationError):
        casimir.force_1d_closed(5, 3, Fraction(1, 2))


def test_sweep_examples():
    assert len(casimir.sweep_force(5, range(1, 4))) == 3
    assert casimir.sweep_force(5, range(1, 1)) == []
    rows = casimir.sweep_force(256, range(1, 126))
    assert len(rows) == 125 and rows[0].X0 == Fraction(1, 512)
    text = casimir.sweep_csv(rows)
    assert text.splitlines()[0] == "Z,X0,force" and len(text.splitlines()) == 126
    with pytest.raises(ValidationError):
        casimir.sweep_force(5, range(1, 5))


# -- L x R^2 ---------------------------------------------------------------------

def test_pressure_examples():
    p = casimir.pressure_3d_constant(2)
    assert p.exact == Fraction(7, 31) and "pi^2/240" in p.units
    assert p.audit["family_derived_matches"]
    assert casimir.pressure_3d_constant(2, 2).value == pytest.approx(p.value / 16, rel=1e-15)
    with pytest.raises(ValidationError):
        casimir.pressure_3d_constant(1)
    with pytest.raises(ValidationError):
        casimir.pressure_3d_constant(2, 0)


def test_pressure_approaches_one_32nd_monotonically():
    devs = [float(casimir.pressure_3d_constant(j).exact) - 1 / 32
            for j in (2, 3, 5, 10, 100, 10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6)]
    assert all(a > b > 0 for a, b in zip(devs, devs[1:]))
    assert devs[-1] <= 1e-5


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10 ** 4))
def test_constant_pressure_equals_family_derivation(j):
    C = casimir.energy_3d_coefficient(constant_sequence(j))
    assert 120 * C == casimir.pressure_3d_constant(j).exact


@given(st.integers(2, 9), st.integers(1, 3))
def test_repeated_period_gives_same_coefficient(j, reps):
    assert casimir.energy_3d_coefficient(make_sequence([j] * reps)) == \
        casimir.energy_3d_coefficient(constant_sequence(j))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(2, 7), min_size=1, max_size=3),
       st.floats(0.1, 100, allow_nan=False))
def test_periodic_d_scaling(entries, d):
    seq = make_sequence(entries)
    e1, p1 = casimir.energy_3d_periodic(seq, 1), casimir.pressure_3d_periodic(seq, 1)
    e, p = casimir.energy_3d_periodic(seq, d), casimir.pressure_3d_periodic(seq, d)
    assert e.exact == e1.exact and p.exact == p1.exact
    assert e.value * d ** 3 == pytest.approx(e1.value, rel=1e-12)
    assert p.value * d ** 4 == pytest.approx(p1.value, rel=1e-12)


def test_periodic_pressure_regression_23():
    p = casimir.pressure_3d_periodic(make_sequence([2, 3]))
    assert p.exact == Fraction(789740, 4472929)
    assert p.value > 0 and "repulsive" in p.sign_convention
    assert p.audit["unnormalized_3C"] == "39487/8945858"
    assert "printed_bracket" in p.audit


def test_energy_3d_audit_records_printed_form():
    e = casimir.energy_3d_periodic(constant_sequence(2), 1)
    assert e.exact == Fraction(7, 3720)
    assert e.audit["printed_coefficient"] != "7/3720" and e.audit["printed_matches"] is False


def test_cross_report_shape():
    rep = casimir.cross_proposition_report()
    assert rep["units"] == casimir.PRESSURE_UNITS
    assert all(r["canonical_match"] for r in rep["rows"])
    assert all(r["printed_rel_diff"] > 0 for r in rep["rows"])
    assert casimir.CasimirResult("energy-1d", 1.0, {}, "closed-form", "pi",
                                 Fraction(1, 3)).as_dict()["exact"] == "1/3"
