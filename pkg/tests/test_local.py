import random

import pytest
from hypothesis import given, strategies as st

from wildkummer.field import field_make
from wildkummer.local import SeriesError, TruncatedSeries, surface_relation, verify_normal_form
from wildkummer.poly import PolyRing

F2 = field_make(2)
F3 = field_make(3)
F4 = field_make(2, 2)
U = PolyRing(F2, "x")
N = 8


def s(text, ring=U, n=N):
    return TruncatedSeries.parse(ring, text, n)


def test_arithmetic_examples():
    assert s("1 + x") * s("1 + x") == s("1 + x^2")
    R = PolyRing(F2, "x,y")
    sq = TruncatedSeries.parse(PolyRing(F2, "x"), "x^2", N)
    assert sq.compose([s("x + y", R)]) == s("x^2 + y^2", R)
    assert s(f"x^{N}").is_zero()
    assert str(s("x + 1")).endswith("O(deg 8)")


def test_inverse_examples():
    assert s("1 + x").invert_unit() == s(" + ".join(f"x^{i}" for i in range(N)))
    assert s("1").invert_unit() == s("1")
    assert s("1 + x^2").invert_unit() == s("1 + x^2 + x^4 + x^6")
    with pytest.raises(SeriesError):
        s("x").invert_unit()


def test_reversion_examples():
    assert s("x").reversion() == s("x")
    assert s("x + x^2").reversion() == s("x + x^2 + x^4")
    with pytest.raises(SeriesError):
        s("x^2").reversion()
    with pytest.raises(SeriesError):
        s("1 + x").reversion()


def test_compose_requires_zero_constant_term():
    with pytest.raises(SeriesError):
        s("x^2").compose([s("1 + x")])


def _series(draw, desc, n, unit=False, shift=False):
    R = PolyRing(desc, "x")
    coeffs = [draw(st.integers(0, desc.q - 1)) for _ in range(n)]
    if unit:
        coeffs[0] = coeffs[0] or 1
    if shift:
        coeffs[0] = 0
        coeffs[1] = coeffs[1] or 1
    return TruncatedSeries(R, n, R.from_terms({(i,): c for i, c in enumerate(coeffs) if c}))


@given(st.sampled_from([F2, F3, F4]), st.integers(2, 14), st.data())
def test_inverse_property(desc, n, data):
    u = _series(data.draw, desc, n, unit=True)
    assert (u * u.invert_unit()).poly == u.ring.one


@given(st.sampled_from([F2, F3, F4]), st.integers(2, 14), st.data())
def test_reversion_property(desc, n, data):
    f = _series(data.draw, desc, n, shift=True)
    g = f.reversion()
    x = TruncatedSeries(f.ring, n, f.ring.gens[0])
    assert f.compose([g]) == x
    assert g.compose([f]) == x


def test_series_agrees_with_polynomials_below_n():
    rng = random.Random(4)
    R = PolyRing(F3, "x,y")
    for _ in range(50):
        a = R.from_terms({(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 2) for _ in range(3)})
        b = R.from_terms({(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 2) for _ in range(3)})
        n = 7
        got = TruncatedSeries(R, n, a) * TruncatedSeries(R, n, b) + TruncatedSeries(R, n, a)
        assert got.poly == (a * b + a).truncate(n)


def test_surface_relations_match_example_forms():
    R = surface_relation(2).ring
    assert surface_relation(2) == R.parse("T^2 + X1*X2*T + X1^2*(X2^3 + X2) + X2^2*(X1^3 + X1)")
    R1 = surface_relation(1).ring
    assert surface_relation(1) == R1.parse("T^2 + X1*V2^2*T + X1^2*V2 + V2^4*(X1^3 + X1)")


@pytest.mark.parametrize("order", [8, 12, 16])
@pytest.mark.parametrize("r", [0, 1, 2])
def test_normal_forms(r, order):
    cert = verify_normal_form(r, N=order)
    assert cert.passed and cert.difference == "0"


def test_normal_form_unit_factors():
    assert verify_normal_form(0).unit == "1"
    # P = X^3 + X, so U = X^2 + 1 and psi = X + ..., unit U1^2 U2^2 starts with 1
    cert = verify_normal_form(2)
    assert cert.unit.endswith("+ 1")


def test_normal_forms_general_j():
    w = F4.gen
    assert verify_normal_form(2, [w, w + 1], 12, F4).passed
    assert verify_normal_form(1, [w], 12, F4).passed


def test_normal_form_preconditions():
    with pytest.raises(SeriesError):
        verify_normal_form(3)
    with pytest.raises(SeriesError):
        verify_normal_form(2, N=6)
