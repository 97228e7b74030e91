"""Sparse row echelon forms over a finite field.

Vectors are dicts ``coordinate -> nonzero int coefficient``.  Coordinates
can be any hashable; a ``key`` function orders them, and every stored row
is pivoted on its largest coordinate.
"""

from __future__ import annotations

from typing import Callable, Hashable

from .field import FieldDesc

Vector = dict


def axpy(desc: FieldDesc, y: dict, a: int, x: dict) -> None:
    """In place ``y += a * x``."""
    if not a:
        return
    add, mul = desc.add, desc.mul
    if desc.is_gf2:
        for c in x:
            if c in y:
                del y[c]
            else:
                y[c] = 1
        return
    for c, v in x.items():
        s = add(y.get(c, 0), mul(a, v))
        if s:
            y[c] = s
        else:
            y.pop(c, None)


class Echelon:
    """Incrementally built echelon basis, optionally tracking combinations.

    ``tag`` vectors record which input combination produced each row, so a
    vector that reduces to zero yields a linear dependency among inputs.
    """

    def __init__(self, desc: FieldDesc, key: Callable[[Hashable], object] = lambda c: c):
        self.desc = desc
        self.key = key
        self.rows: dict[Hashable, tuple[dict, dict | None]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict, tag: dict | None = None) -> tuple[dict, dict | None]:
        vec = dict(vec)
        tag = dict(tag) if tag is not None else None
        neg = self.desc.neg
        rows = self.rows
        key = self.key
        while True:
            hits = [c for c in vec if c in rows]
            if not hits:
                return vec, tag
            c = max(hits, key=key)
            a = neg(vec[c])
            row, rtag = rows[c]
            axpy(self.desc, vec, a, row)
            if tag is not None and rtag is not None:
                axpy(self.desc, tag, a, rtag)

    def add(self, vec: dict, tag: dict | None = None) -> tuple[bool, dict, dict | None]:
        """Insert ``vec``; returns (independent, reduced vector, reduced tag)."""
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False, vec, tag
        piv = max(vec, key=self.key)
        inv = self.desc.inv(vec[piv])
        if inv != 1:
            mul = self.desc.mul
            vec = {c: mul(inv, v) for c, v in vec.items()}
            if tag is not None:
                tag = {c: mul(inv, v) for c, v in tag.items()}
        self.rows[piv] = (vec, tag)
        return True, vec, tag

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def pivots(self) -> list:
        return sorted(self.rows, key=self.key)

    def rref(self) -> list[dict]:
        """Fully reduced basis rows, ascending by pivot.

        Rows are processed bottom-up, so each row only meets pivots smaller
        than its own and the result has no pivot coordinate off-diagonal.
        """
        order = self.pivots()
        done: dict[Hashable, dict] = {}
        sub = Echelon(self.desc, self.key)
        for piv in order:
            row = dict(self.rows[piv][0])
            lead = row.pop(piv)
            row, _ = sub.reduce(row)
            row[piv] = lead
            sub.rows[piv] = (row, None)
            done[piv] = row
        return [done[p] for p in order]


def rank(desc: FieldDesc, vectors, key=lambda c: c) -> int:
    ech = Echelon(desc, key)
    for v in vectors:
        ech.add(v)
    return len(ech)


def nullspace(desc: FieldDesc, columns: list[dict]) -> list[dict]:
    """Basis of ``{c : sum_i c_i columns[i] = 0}`` as dicts index -> coefficient."""
    ech = Echelon(desc)
    out = []
    for i, col in enumerate(columns):
        ok, _, tag = ech.add(col, {i: 1})
        if not ok:
            out.append(tag)
    return out
