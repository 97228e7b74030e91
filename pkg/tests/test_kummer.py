import itertools

import pytest

from wildkummer.action import is_invariant
from wildkummer.field import field_make
from wildkummer.kummer import (
    CurveConfig,
    HeavyComputationRefused,
    KummerError,
    closed_form_trace,
    curve_presentation,
    embedding_dimension,
    function_field_identities,
    invariant_generators,
    kernel_of_psi,
    lemma_phi_check,
    minimal_presentation,
    proper_submasks,
    relation_set,
    shioda_parametrization_check,
    threefold_basis,
    verify_containment,
    verify_kernel,
)

F2 = field_make(2)
F4 = field_make(2, 2)

ALL_CONFIGS_G3 = [(g, s) for g in (1, 2, 3) for s in range(g + 1)]


def cfg(g, s=0, j=None, field=None):
    return CurveConfig.make(g, supersingular=s, j=j, field=field)


def test_config_validation():
    with pytest.raises(KummerError):
        CurveConfig.make(0)
    with pytest.raises(KummerError):
        CurveConfig.make(2, supersingular=3)
    with pytest.raises(KummerError):
        CurveConfig.make(1, j=[0])
    with pytest.raises(KummerError):
        CurveConfig.make(1, field=field_make(3))


def test_submasks():
    assert proper_submasks(0b101) == [0, 1, 4]
    assert proper_submasks(0) == []


def test_curve_presentation_examples():
    q, act = curve_presentation(cfg(1))
    R = q.ring
    assert q.gens == (R.parse("y1^2 + x1*y1 + x1^3 + x1"),)
    assert act(R.var("y1")) == R.parse("y1 + x1")
    q, act = curve_presentation(cfg(1, 1))
    R = q.ring
    assert q.gens == (R.parse("w1^2 + v1^2*w1 + v1"),)
    assert act(R.var("w1")) == R.parse("w1 + v1^2")
    q, act = curve_presentation(cfg(2, 1))
    assert q.ring.names == ("x1", "y1", "v2", "w2") and len(q.gens) == 2


def test_curve_ideal_is_stable():
    for g, s in ALL_CONFIGS_G3:
        q, act = curve_presentation(cfg(g, s))
        gb = q.basis()
        assert all(gb.contains(act(f)) for f in q.gens)


def test_generator_examples():
    c = cfg(2)
    q, act = curve_presentation(c)
    P = q.ring.parse
    f = invariant_generators(c)
    assert f[0b01] == P("x1") and f[0b10] == P("x2")
    assert f[0b11] == P("x1*y2 + x2*y1 + x1*x2")
    assert f[0].is_zero()
    c0 = cfg(2, 2)
    q0, _ = curve_presentation(c0)
    assert invariant_generators(c0)[0b11] == q0.ring.parse("v1^2*w2 + v2^2*w1 + v1^2*v2^2")


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_generators_invariant_and_reduced(g):
    for s in range(g + 1):
        c = cfg(g, s)
        q, act = curve_presentation(c)
        for mask, f in invariant_generators(c, q.ring, act).items():
            assert is_invariant(act, f)
            for i in range(1, g + 1):
                moving = f"y{i}" if i <= c.r else f"w{i}"
                assert (f.degree_in(moving) or 0) <= 1


def test_support_of_ordinary_generators():
    """Each monomial uses exactly one of x_i, y_i per i in M, and prod y_i is absent."""
    c = cfg(4)
    q, act = curve_presentation(c)
    names = q.ring.names
    for mask, f in invariant_generators(c, q.ring, act).items():
        members = [i for i in range(4) if mask >> i & 1]
        prod_y = tuple(1 if (names[k][0] == "y" and int(names[k][1:]) - 1 in members) else 0 for k in range(8))
        if mask:
            assert prod_y not in f.terms
        for e in f.terms:
            for i in members:
                assert e[2 * i] + e[2 * i + 1] == 1
        # every admissible monomial except prod y_i occurs
        assert len(f.terms) == (2 ** len(members) - 1 if mask else 0)


def test_closed_form_trace_matches_for_all_masks():
    c = cfg(3, 1)
    q, _ = curve_presentation(c)
    for mask, f in invariant_generators(c).items():
        assert f == closed_form_trace(c, mask, q.ring)


def test_g2_relation_matches_example_forms():
    rs = relation_set(cfg(2))
    mp = minimal_presentation(rs)
    R = mp.ring
    assert mp.relations == (R.parse("T_12^2 + X1*X2*T_12 + X1^2*(X2^3 + X2) + X2^2*(X1^3 + X1)"),)
    rs0 = relation_set(cfg(2, 2))
    mp0 = minimal_presentation(rs0)
    assert mp0.relations == (mp0.ring.parse("T_12^2 + V1^2*V2^2*T_12 + V1^4*V2 + V2^4*V1"),)
    rs1 = relation_set(cfg(2, 1))
    mp1 = minimal_presentation(rs1)
    assert mp1.relations == (mp1.ring.parse("T_12^2 + X1*V2^2*T_12 + X1^2*V2 + V2^4*(X1^3 + X1)"),)


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5, 6])
def test_relation_counts(g):
    rs = relation_set(cfg(g))
    subsets = [set(c) for k in range(g + 1) for c in itertools.combinations(range(g), k)]
    big = [s for s in subsets if len(s) >= 2]
    assert len(rs.sums) == sum(1 for s in subsets if len(s) >= 3)
    assert len(rs.products) == len(big) * (len(big) + 1) // 2
    assert len(rs.trivial) == g + 1
    assert len(rs.sums) == 2**g - 1 - g - g * (g - 1) // 2


def test_threefold_counts():
    rs = relation_set(cfg(3))
    mp = minimal_presentation(rs)
    assert (len(rs.products), len(rs.sums), mp.ring.arity) == (10, 1, 7)
    assert len(mp.relations) == 11


@pytest.mark.parametrize("g,s", ALL_CONFIGS_G3)
def test_containment(g, s):
    cert = verify_containment(cfg(g, s))
    assert cert.passed
    assert len(cert.entries) == len(relation_set(cfg(g, s)).relations())


def test_containment_nontrivial_j_over_gf4():
    w = F4.gen
    assert verify_containment(cfg(3, 1, j=[w, w + 1], field=F4)).passed
    assert verify_containment(cfg(2, 0, j=[w, w], field=F4)).passed


def test_perturbed_relation_is_detected():
    c = cfg(2)
    q, act = curve_presentation(c)
    gb = q.basis()
    rs = relation_set(c)
    from wildkummer.kummer import psi_map

    psi = psi_map(c, rs, q.ring, invariant_generators(c))
    rel = rs.products[0].poly
    lm = next(iter(rel.terms))
    broken = rel - rel.ring.monomial(lm)
    assert not gb.normal_form(psi(broken)).is_zero()


@pytest.mark.parametrize("g,s", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)])
def test_kernel(g, s):
    cert = verify_kernel(cfg(g, s))
    assert cert.passed
    assert all(r.is_zero() for _, r in cert.comparison.a_mod_b + cert.comparison.b_mod_a)


def test_kernel_g1_is_trivial_identifications():
    kernel, rs = kernel_of_psi(cfg(1))
    R = rs.ring
    assert set(kernel) == {R.parse("T_0"), R.parse("T_1 + X1")}


def test_kernel_g3_needs_opt_in():
    with pytest.raises(HeavyComputationRefused):
        verify_kernel(cfg(3))


def test_minimal_presentation_examples():
    assert minimal_presentation(relation_set(cfg(1))).ring.arity == 1
    assert len(minimal_presentation(relation_set(cfg(1))).relations) == 0
    mp = minimal_presentation(relation_set(cfg(2)))
    assert (mp.ring.arity, len(mp.relations)) == (3, 1)


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_embedding_dimension(g):
    for s in sorted({0, g}):
        cert = embedding_dimension(relation_set(cfg(g, s)))
        assert cert.value == 2**g - 1
        assert cert.agree and cert.jacobian_value == cert.minimal_variables


def test_lemma_phi():
    checks = lemma_phi_check()
    assert len(checks) == 6 and all(c.passed for c in checks)


def test_threefold_identities_and_control():
    checks = function_field_identities()
    assert [c.passed for c in checks] == [True, True]
    mp, gb = threefold_basis()
    broken = mp.ring.parse("V1^2*T_23 + V2^2*T_13 + V3^2*T_12")
    assert not gb.normal_form(broken).is_zero()


def test_shioda():
    assert shioda_parametrization_check().passed
    assert shioda_parametrization_check(swap=True).passed
    w = F4.gen
    assert shioda_parametrization_check(F4, w * w).passed
    assert not shioda_parametrization_check(F4, F4.one, raise_on_failure=False).passed


def test_relation_text_export_round_trips():
    rs = relation_set(cfg(3, 1))
    lines = rs.to_text().splitlines()
    assert len(lines) == len(rs.relations())
    for line, rel in zip(lines, rs.relations()):
        head, body = line.split(": ", 1)
        assert head.startswith(rel.family)
        assert rs.ring.parse(body) == rel.poly
