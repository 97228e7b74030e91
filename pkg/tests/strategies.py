"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from wildkummer.poly import MultiPoly


def monomials(n, max_deg):
    return st.lists(st.integers(0, max_deg), min_size=n, max_size=n).map(tuple)


def polys(ring, max_deg=3, max_terms=5):
    q = ring.desc.q
    return st.dictionaries(monomials(ring.arity, max_deg), st.integers(1, q - 1), max_size=max_terms).map(
        lambda d: MultiPoly(ring, {e: c for e, c in d.items() if sum(e) <= max_deg})
    )
