"""Isogeny-class bookkeeping for formal groups of abelian varieties.

A decomposition is ``G_{1,0}^r + G_{1,1}^s + sum (G_{n,m} + G_{m,n})^t``
with ``m > n >= 1`` coprime; each symmetric pair contributes ``n + m`` to
the dimension.  No formal-group-law arithmetic happens here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class FormalGroupError(ValueError):
    pass


class NotDeterminedByTorsion(FormalGroupError):
    """Fewer than 2^(g-1) points of order at most 2: the count does not pin the formal group."""


def symmetric_pairs(g: int) -> list[tuple[int, int]]:
    """(n, m) with m > n >= 1, gcd 1 and n + m <= g, ascending."""
    return [(n, m) for n in range(1, g) for m in range(n + 1, g - n + 1) if gcd(n, m) == 1]


def _power(label: str, k: int) -> str:
    return label if k == 1 else f"{label}^{{⊕{k}}}"


@dataclass(frozen=True)
class IsoDecomposition:
    r: int
    s: int
    pairs: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise FormalGroupError("multiplicities must be non-negative")
        seen = set()
        for (n, m), t in self.pairs:
            if not (m > n >= 1 and gcd(n, m) == 1):
                raise FormalGroupError(f"invalid slope pair ({n},{m})")
            if t < 1:
                raise FormalGroupError("pair multiplicities must be positive")
            if (n, m) in seen:
                raise FormalGroupError(f"pair ({n},{m}) repeated")
            seen.add((n, m))
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    @property
    def dimension(self) -> int:
        return self.r + self.s + sum(t * (n + m) for (n, m), t in self.pairs)

    @property
    def sort_key(self) -> tuple:
        return (self.r, self.s, self.pairs)

    @property
    def ambiguous(self) -> bool:
        """Isogeny class of G_{1,1}^s with s >= 2 contains several isomorphism classes."""
        return self.s >= 2

    def label(self) -> str:
        parts = []
        if self.r:
            parts.append(_power("G_{1,0}", self.r))
        if self.s:
            parts.append(_power("G_{1,1}", self.s))
        for (n, m), t in self.pairs:
            pair = f"G_{{{n},{m}}} ⊕ G_{{{m},{n}}}"
            parts.append(pair if t == 1 else f"({pair})^{{⊕{t}}}")
        return " ⊕ ".join(parts) if parts else "0"

    __str__ = label

    def to_dict(self) -> dict:
        return {
            "label": self.label(),
            "r": self.r,
            "s": self.s,
            "pairs": [{"n": n, "m": m, "multiplicity": t} for (n, m), t in self.pairs],
            "dimension": self.dimension,
            "ambiguous": self.ambiguous,
        }


def _pair_multisets(pairs: list[tuple[int, int]], budget: int):
    """All multiplicity assignments to ``pairs`` using dimension at most ``budget``."""
    if not pairs:
        yield (), 0
        return
    (n, m), rest = pairs[0], pairs[1:]
    w = n + m
    for t in range(budget // w + 1):
        for tail, used in _pair_multisets(rest, budget - t * w):
            head = (((n, m), t),) if t else ()
            yield head + tail, used + t * w


def enumerate_decompositions(g: int) -> list[IsoDecomposition]:
    """Every symmetric decomposition of dimension ``g``, sorted by (r, s, pairs)."""
    if g < 1:
        raise FormalGroupError("dimension must be at least 1")
    out = []
    for pairs, used in _pair_multisets(symmetric_pairs(g), g):
        left = g - used
        for r in range(left + 1):
            out.append(IsoDecomposition(r, left - r, pairs))
    out.sort(key=lambda d: d.sort_key)
    return out


def decomposition_from_torsion(g: int, r: int) -> IsoDecomposition:
    """Formal group of a g-dimensional abelian variety with 2^r points of order <= 2.

    Determined only for ``r = g`` (ordinary) and ``r = g - 1``.
    """
    if g < 1:
        raise FormalGroupError("dimension must be at least 1")
    if not 0 <= r <= g:
        raise FormalGroupError(f"torsion exponent must lie in [0, {g}]")
    if r == g:
        return IsoDecomposition(g, 0)
    if r == g - 1:
        return IsoDecomposition(g - 1, 1)
    raise NotDeterminedByTorsion(f"formal group not determined by torsion count (g={g}, r={r})")


__all__ = [
    "FormalGroupError", "IsoDecomposition", "NotDeterminedByTorsion", "decomposition_from_torsion",
    "enumerate_decompositions", "symmetric_pairs",
]
