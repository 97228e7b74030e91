import itertools

import pytest
from hypothesis import given, strategies as st

from wildkummer.field import (
    DEFAULT_MODULI,
    FieldError,
    field_make,
    field_sqrt,
    is_irreducible,
    is_prime,
    parse_field_spec,
    primitive_cube_root,
)


def brute_irreducible(mod, p):
    """Trial division by every monic polynomial of degree 1..k/2."""
    k = len(mod) - 1

    def rem(a, b):
        a = list(a)
        while len(a) >= len(b):
            c = a[-1]
            if c:
                shift = len(a) - len(b)
                for i, bc in enumerate(b):
                    a[shift + i] = (a[shift + i] - c * bc) % p
            a.pop()
        return a

    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(rem(mod, list(low) + [1])):
                return False
    return True


def test_default_moduli_are_irreducible_by_trial_division():
    for p, table in DEFAULT_MODULI.items():
        for k, mod in table.items():
            assert brute_irreducible(mod, p), (p, k)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (2, 5)])
def test_rabin_agrees_with_trial_division(p, k):
    for low in itertools.product(range(p), repeat=k):
        mod = tuple(low) + (1,)
        assert is_irreducible(mod, p) == brute_irreducible(mod, p), mod


def test_is_prime_small():
    sieve = [n for n in range(2, 400) if all(n % d for d in range(2, int(n**0.5) + 1))]
    assert [n for n in range(400) if is_prime(n)] == sieve


def test_construction_examples():
    f2 = field_make(2)
    assert f2.q == 2 and f2.is_gf2
    f4 = field_make(2, 2, (1, 1, 1))
    w = f4.gen
    assert w * w == w + 1
    f8 = field_make(2, 3, (1, 1, 0, 1))
    x = f8.gen
    assert x * x**2 == x + 1


def test_rejects_bad_input():
    with pytest.raises(FieldError):
        field_make(4)
    with pytest.raises(FieldError):
        field_make(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(FieldError):
        field_make(2, 2, (1, 1))


def test_gf4_tables_match_hand_table():
    f4 = field_make(2, 2)
    # elements 0, 1, w, w+1 encoded as 0..3
    add = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    mul = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
    for a in range(4):
        for b in range(4):
            assert f4.add(a, b) == add[a][b]
            assert f4.mul(a, b) == mul[a][b]


def test_inverse_of_one_in_f2():
    assert field_make(2).one.inv() == field_make(2).one
    with pytest.raises(FieldError):
        field_make(2).zero.inv()


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sqrt_exhaustive(k):
    F = field_make(2, k)
    for a in F.elements():
        r = field_sqrt(a)
        assert r * r == a
        assert r == a ** (2 ** (k - 1))


def test_sqrt_examples():
    f4 = field_make(2, 2)
    w = f4.gen
    assert field_sqrt(w) == w + 1
    assert field_sqrt(field_make(2).zero) == field_make(2).zero


def test_cube_roots():
    f4 = field_make(2, 2)
    assert primitive_cube_root(f4) == f4.gen
    with pytest.raises(FieldError):
        primitive_cube_root(field_make(2))
    f16 = field_make(2, 4)
    om = primitive_cube_root(f16)
    assert om != f16.one and om**3 == f16.one
    # g generates GF(16)* for x^4 + x + 1, so the cube roots are g^5 and g^10
    assert om in (f16.gen**5, f16.gen**10)


def test_mul_matches_schoolbook_polynomial_product():
    for p, k, mod in [(2, 3, None), (2, 8, None), (3, 3, None), (5, 2, (2, 0, 1))]:
        F = field_make(p, k, mod)
        mod = F.modulus
        for a in range(0, F.q, max(1, F.q // 37)):
            for b in range(0, F.q, max(1, F.q // 29)):
                ca, cb = F.to_coeffs(a), F.to_coeffs(b)
                prod = [0] * (2 * k)
                for i, x in enumerate(ca):
                    for j, y in enumerate(cb):
                        prod[i + j] = (prod[i + j] + x * y) % p
                for d in range(2 * k - 1, k - 1, -1):
                    c = prod[d]
                    if c:
                        for i, m in enumerate(mod):
                            prod[d - k + i] = (prod[d - k + i] - c * m) % p
                assert F.to_coeffs(F.mul(a, b)) == tuple(prod[:k])


def test_text_round_trip():
    for p, k in [(2, 4), (3, 3), (7, 1)]:
        F = field_make(p, k)
        for a in F.elements():
            assert F(str(a)) == a


def test_cross_field_is_an_error():
    with pytest.raises(FieldError):
        field_make(2, 2).one + field_make(2, 3).one


def test_parse_field_spec():
    assert parse_field_spec(2, 3, "1,1,0,1") == field_make(2, 3)
    assert parse_field_spec(3) == field_make(3)


@given(st.sampled_from([(2, 4), (2, 7), (3, 2), (3, 4), (5, 1)]), st.data())
def test_field_axioms_and_frobenius(pk, data):
    p, k = pk
    F = field_make(p, k)
    a, b, c = (F(data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert (a + b) ** p == a**p + b**p
    assert (a * b) ** p == a**p * b**p
    if a:
        assert a * a.inv() == F.one
        assert a ** (F.q - 1) == F.one
