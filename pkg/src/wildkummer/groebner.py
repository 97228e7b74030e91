"""Buchberger's algorithm, normal forms, elimination and membership tests.

All bases returned by :func:`buchberger` are reduced, monic and sorted by
ascending leading monomial, so two computations of the same ideal under the
same order compare equal term by term.
"""

from __future__ import annotations

import hashlib
import heapq
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .poly import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    MultiPoly,
    PolyError,
    PolyRing,
    divides,
    mono_div,
    mono_lcm,
    mono_mul,
)

CACHE_ENV = "WILDKUMMER_CACHE_DIR"


class ResourceLimitExceeded(RuntimeError):
    """A timeout or degree cap was hit; the computation produced no answer."""


class GroebnerError(RuntimeError):
    """The engine failed its own certificate (indicates a bug)."""


@dataclass
class Limits:
    """Resource limits and shared services for Gröbner computations."""

    timeout: float | None = None
    degree_cap: int | None = None
    workers: int = 1
    cache: "GBCache | None" = None

    def deadline(self) -> float | None:
        return None if self.timeout is None else time.monotonic() + self.timeout


DEFAULT_LIMITS = Limits()


# -- internal polynomial records ----------------------------------------------

class _Rec:
    __slots__ = ("terms", "lm", "tail", "sugar", "mask", "key")

    def __init__(self, terms: dict, lm: Monomial, sugar: int, order: MonomialOrder):
        self.terms = terms
        self.lm = lm
        self.tail = {e: c for e, c in terms.items() if e != lm}
        self.sugar = sugar
        self.mask = _mask(lm)
        self.key = order.key(lm)


def _mask(e: Monomial) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


def _make_monic(desc, terms: dict, order: MonomialOrder) -> tuple[dict, Monomial]:
    lm = max(terms, key=order.key)
    lc = terms[lm]
    if lc != 1:
        inv = desc.inv(lc)
        mul = desc.mul
        terms = {e: mul(inv, c) for e, c in terms.items()}
    return terms, lm


class _Clock:
    __slots__ = ("deadline", "ticks")

    def __init__(self, deadline: float | None):
        self.deadline = deadline
        self.ticks = 0

    def tick(self) -> None:
        if self.deadline is None:
            return
        self.ticks += 1
        if self.ticks & 255 == 0 and time.monotonic() > self.deadline:
            raise ResourceLimitExceeded("Gröbner computation exceeded its timeout")


def _reduce(desc, terms: dict, reducers: Sequence[_Rec], order: MonomialOrder,
            clock: _Clock | None = None) -> dict:
    """Full reduction of ``terms`` by monic ``reducers``.

    Reducers must be sorted ascending by leading monomial; the first one
    whose leading monomial divides the current term is used.
    """
    if not terms:
        return {}
    if not reducers:
        return dict(terms)
    work = dict(terms)
    negkey = order.neg_key
    heap = [(negkey(e), e) for e in work]
    heapq.heapify(heap)
    rem: dict[Monomial, int] = {}
    add, mul, neg = desc.add, desc.mul, desc.neg
    gf2 = desc.is_gf2
    red = [(r.mask, r.lm, r.tail) for r in reducers]
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        _, m = pop(heap)
        c = work.pop(m, None)
        if not c:
            continue
        if clock is not None:
            clock.tick()
        mm = _mask(m)
        for rmask, lm, tail in red:
            if rmask & ~mm or not divides(lm, m):
                continue
            q = mono_div(m, lm)
            if gf2:
                for te in tail:
                    ne = mono_mul(te, q)
                    if ne in work:
                        del work[ne]
                    else:
                        work[ne] = 1
                        push(heap, (negkey(ne), ne))
            else:
                a = neg(c)
                for te, tc in tail.items():
                    ne = mono_mul(te, q)
                    v = work.get(ne)
                    if v is None:
                        work[ne] = mul(a, tc)
                        push(heap, (negkey(ne), ne))
                    else:
                        s = add(v, mul(a, tc))
                        if s:
                            work[ne] = s
                        else:
                            del work[ne]
            break
        else:
            rem[m] = c
    return rem


def _spoly(desc, a: _Rec, b: _Rec) -> tuple[dict, int]:
    lcm = mono_lcm(a.lm, b.lm)
    qa = mono_div(lcm, a.lm)
    qb = mono_div(lcm, b.lm)
    out = {mono_mul(e, qa): c for e, c in a.tail.items()}
    add, neg = desc.add, desc.neg
    for e, c in b.tail.items():
        ne = mono_mul(e, qb)
        v = out.get(ne)
        s = neg(c) if v is None else add(v, neg(c))
        if s:
            out[ne] = s
        else:
            out.pop(ne, None)
    sugar = max(a.sugar + sum(qa), b.sugar + sum(qb))
    return out, sugar


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


# -- public types ---------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis together with its provenance and certificate."""

    ring: PolyRing
    order: MonomialOrder
    gens: tuple[MultiPoly, ...]
    source: tuple[MultiPoly, ...] = ()
    certified: bool = False
    pairs_checked: int = 0
    from_cache: bool = False

    def __post_init__(self):
        recs = tuple(
            _Rec(g.terms, g.leading_monomial(self.order), g.total_degree(), self.order)
            for g in self.gens
        )
        object.__setattr__(self, "_recs", tuple(sorted(recs, key=lambda r: r.key)))

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        if f.ring != self.ring:
            raise PolyError(f"{f.ring!r} is not the basis ring {self.ring!r}")
        return MultiPoly(self.ring, _reduce(self.ring.desc, f.terms, self._recs, self.order))

    def contains(self, f: MultiPoly) -> bool:
        return not self.normal_form(f).terms

    def leading_monomials(self) -> list[Monomial]:
        return [r.lm for r in self._recs]

    def is_standard(self, e: Monomial) -> bool:
        return not any(divides(r.lm, e) for r in self._recs)

    def standard_monomials_up_to(self, d: int) -> list[Monomial]:
        return [e for e in self.ring.monomials_up_to(d, self.order) if self.is_standard(e)]

    def is_unit_ideal(self) -> bool:
        return any(sum(r.lm) == 0 for r in self._recs)

    def texts(self) -> list[str]:
        return [g.to_text(self.order) for g in self.gens]

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


def _common_ring(gens: Sequence[MultiPoly], ring: PolyRing | None) -> PolyRing:
    if ring is None:
        if not gens:
            raise PolyError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise PolyError("generators live in different rings")
    return ring


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder = GREVLEX, *,
               ring: PolyRing | None = None, limits: Limits | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Pair selection uses the sugar strategy with the Gebauer–Möller
    criteria; pairs of equal sugar are reduced as a batch (in worker threads
    when ``limits.workers > 1``) and inserted in a fixed order.  Raises
    :class:`ResourceLimitExceeded` on timeout or when a basis element
    exceeds ``limits.degree_cap``.
    """
    limits = limits or DEFAULT_LIMITS
    ring = _common_ring(gens, ring)
    source = tuple(g for g in gens if g.terms)
    cache = limits.cache
    if cache is not None:
        hit = cache.load(ring, order, source)
        if hit is not None:
            return hit
    gb = _buchberger(ring, order, source, limits)
    if cache is not None:
        cache.store(gb)
    return gb


def _buchberger(ring: PolyRing, order: MonomialOrder, source: tuple[MultiPoly, ...],
                limits: Limits) -> GroebnerBasis:
    desc = ring.desc
    clock = _Clock(limits.deadline())
    cap = limits.degree_cap
    recs: list[_Rec] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def reducers() -> list[_Rec]:
        return sorted((recs[i] for i in G), key=lambda r: r.key)

    def insert(terms: dict, sugar: int) -> None:
        nonlocal G, B
        terms, lm = _make_monic(desc, terms, order)
        if cap is not None and max(sum(e) for e in terms) > cap:
            raise ResourceLimitExceeded(f"basis element exceeded degree cap {cap}")
        h = len(recs)
        recs.append(_Rec(terms, lm, sugar, order))
        G, B = _gm_update(recs, G, B, h)

    initial = sorted(
        (dict(g.terms) for g in source),
        key=lambda t: order.key(max(t, key=order.key)),
    )
    for t in initial:
        r = _reduce(desc, t, reducers(), order, clock)
        if r:
            insert(r, max(sum(e) for e in t))

    pool = ThreadPoolExecutor(limits.workers) if limits.workers > 1 else None
    try:
        while B:
            clock.tick()
            keyed = [(_pair_sugar(recs, p), order.key(_pair_lcm(recs, p)), p) for p in B]
            best = min(k[0] for k in keyed)
            batch = sorted((k for k in keyed if k[0] == best), key=lambda k: (k[1], k[2]))
            chosen = {k[2] for k in batch}
            B = [p for p in B if p not in chosen]
            red = reducers()
            spolys = [_spoly(desc, recs[i], recs[j]) for _, _, (i, j) in batch]

            def work(sp, red=red):
                return _reduce(desc, sp[0], red, order, clock), sp[1]

            results = list(pool.map(work, spolys)) if pool else [work(sp) for sp in spolys]
            for rem, sugar in results:
                if not rem:
                    continue
                rem = _reduce(desc, rem, reducers(), order, clock)
                if rem:
                    insert(rem, sugar)
    finally:
        if pool is not None:
            pool.shutdown()

    final = _interreduce(desc, [recs[i] for i in G], order, clock)
    gens = tuple(MultiPoly(ring, r.terms) for r in final)
    checked = _certify(desc, final, order)
    return GroebnerBasis(ring, order, gens, source, certified=True, pairs_checked=checked)


def _pair_lcm(recs, p) -> Monomial:
    return mono_lcm(recs[p[0]].lm, recs[p[1]].lm)


def _pair_sugar(recs, p) -> int:
    a, b = recs[p[0]], recs[p[1]]
    lcm = mono_lcm(a.lm, b.lm)
    return max(a.sugar + sum(lcm) - sum(a.lm), b.sugar + sum(lcm) - sum(b.lm))


def _gm_update(recs: list[_Rec], G: list[int], B: list[tuple[int, int]], h: int):
    lh = recs[h].lm
    C = [g for g in G]
    D: list[int] = []
    while C:
        g1 = C.pop(0)
        l1 = mono_lcm(lh, recs[g1].lm)
        if _coprime(lh, recs[g1].lm):
            D.append(g1)
            continue
        if not any(divides(mono_lcm(lh, recs[g2].lm), l1) for g2 in C + D):
            D.append(g1)
    E = [(g, h) for g in D if not _coprime(lh, recs[g].lm)]
    newB = []
    for g1, g2 in B:
        l12 = mono_lcm(recs[g1].lm, recs[g2].lm)
        if (
            divides(lh, l12)
            and mono_lcm(recs[g1].lm, lh) != l12
            and mono_lcm(lh, recs[g2].lm) != l12
        ):
            continue
        newB.append((g1, g2))
    newB.extend(E)
    newG = [g for g in G if not divides(lh, recs[g].lm)]
    newG.append(h)
    return newG, newB


def _interreduce(desc, recs: list[_Rec], order: MonomialOrder, clock) -> list[_Rec]:
    recs = sorted(recs, key=lambda r: r.key)
    minimal = [r for r in recs if not any(s is not r and divides(s.lm, r.lm) for s in recs)]
    out = []
    for i, r in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = _reduce(desc, r.tail, others, order, clock)
        terms = dict(tail)
        terms[r.lm] = 1
        out.append(_Rec(terms, r.lm, r.sugar, order))
    return out


def _certify(desc, recs: list[_Rec], order: MonomialOrder) -> int:
    """Check every S-pair with non-coprime leading monomials reduces to zero."""
    checked = 0
    for i in range(len(recs)):
        for j in range(i + 1, len(recs)):
            if _coprime(recs[i].lm, recs[j].lm):
                continue
            sp, _ = _spoly(desc, recs[i], recs[j])
            if _reduce(desc, sp, recs, order):
                raise GroebnerError("S-pair certificate failed")
            checked += 1
    return checked


def verify_basis(gb: GroebnerBasis) -> bool:
    """Re-run the S-pair criterion and the reducedness conditions on ``gb``."""
    desc = gb.ring.desc
    recs = list(gb._recs)
    try:
        _certify(desc, recs, gb.order)
    except GroebnerError:
        return False
    for i, r in enumerate(recs):
        if r.terms[r.lm] != 1:
            return False
        for j, s in enumerate(recs):
            if i != j and any(divides(s.lm, e) for e in r.terms):
                return False
    return all(gb.contains(g) for g in gb.source)


# -- operations built on Gröbner bases -------------------------------------------

def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return gb.normal_form(f)


def eliminate(gens: Sequence[MultiPoly], drop_vars: Iterable, *, ring: PolyRing | None = None,
              limits: Limits | None = None) -> list[MultiPoly]:
    """Generators of ``ideal(gens) ∩ k[kept variables]``.

    Uses the block order with the dropped variables in the first block.
    The returned polynomials live in the original ring and involve only
    kept variables.
    """
    ring = _common_ring(gens, ring)
    idx = sorted(v if isinstance(v, int) else ring.roster.index[v] for v in drop_vars)
    order = MonomialOrder.block(idx)
    gb = buchberger(gens, order, ring=ring, limits=limits)
    dropped = set(idx)
    return [g for g in gb.gens if not (g.variables() & dropped)]


@dataclass
class IdealComparison:
    equal: bool
    a_mod_b: list[tuple[MultiPoly, MultiPoly]]
    b_mod_a: list[tuple[MultiPoly, MultiPoly]]

    def __bool__(self) -> bool:
        return self.equal

    def witnesses(self) -> list[MultiPoly]:
        return [g for g, r in self.a_mod_b + self.b_mod_a if r.terms]


def ideal_equal(a: Sequence[MultiPoly], b: Sequence[MultiPoly], order: MonomialOrder = GREVLEX,
                *, ring: PolyRing | None = None, limits: Limits | None = None) -> IdealComparison:
    """Mutual containment of two ideals, with both reduction certificates."""
    ring = _common_ring(list(a) + list(b), ring)
    gba = buchberger(a, order, ring=ring, limits=limits)
    gbb = buchberger(b, order, ring=ring, limits=limits)
    a_mod_b = [(g, gbb.normal_form(g)) for g in a]
    b_mod_a = [(g, gba.normal_form(g)) for g in b]
    eq = all(not r.terms for _, r in a_mod_b) and all(not r.terms for _, r in b_mod_a)
    return IdealComparison(eq, a_mod_b, b_mod_a)


class SubalgebraMembership:
    """Membership in ``k[h_1..h_m] + I`` via tag variables.

    The ring is extended by tags ``t_i``; the ideal ``I + (t_i - h_i)`` is
    put in Gröbner form for a block order with the original variables
    first.  ``f`` belongs to the subalgebra modulo ``I`` iff its normal form
    involves tags only; that normal form expresses ``f`` in the ``h_i``.
    """

    def __init__(self, algebra_gens: Sequence[MultiPoly], modulo: Sequence[MultiPoly] = (),
                 *, ring: PolyRing | None = None, limits: Limits | None = None):
        ring = _common_ring(list(algebra_gens) + list(modulo), ring)
        self.ring = ring
        self.algebra_gens = tuple(algebra_gens)
        tags = []
        i = 0
        while len(tags) < len(algebra_gens):
            name = f"tag{i}"
            if name not in ring.roster.index:
                tags.append(name)
            i += 1
        self.tag_names = tuple(tags)
        self.big = PolyRing(ring.desc, ring.names + self.tag_names)
        n = ring.arity
        order = MonomialOrder.block(range(n))
        lifted = [g.to_ring(self.big) for g in modulo]
        for t, h in zip(self.tag_names, algebra_gens):
            lifted.append(self.big.var(t) - h.to_ring(self.big))
        self.basis = buchberger(lifted, order, ring=self.big, limits=limits)
        self._n = n

    def express(self, f: MultiPoly) -> MultiPoly | None:
        """Normal form of ``f`` if it lies in the tag subring, else ``None``."""
        r = self.basis.normal_form(f.to_ring(self.big))
        if any(any(e[: self._n]) for e in r.terms):
            return None
        return r

    def contains(self, f: MultiPoly) -> bool:
        return self.express(f) is not None


def subalgebra_contains(f: MultiPoly, algebra_gens: Sequence[MultiPoly],
                        modulo: Sequence[MultiPoly] = (), *, limits: Limits | None = None) -> bool:
    if not algebra_gens:
        # k + I: constants only
        algebra_gens = [f.ring.one]
    return SubalgebraMembership(algebra_gens, modulo, ring=f.ring, limits=limits).contains(f)


@dataclass
class QuotientPresentation:
    """``ring / (gens)`` with a lazily computed, cached Gröbner basis."""

    ring: PolyRing
    gens: tuple[MultiPoly, ...]
    order: MonomialOrder = GREVLEX
    _basis: GroebnerBasis | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.gens = tuple(self.gens)
        for g in self.gens:
            if g.ring != self.ring:
                raise PolyError("ideal generator outside the presentation ring")

    def basis(self, limits: Limits | None = None) -> GroebnerBasis:
        if self._basis is None:
            self._basis = buchberger(self.gens, self.order, ring=self.ring, limits=limits)
        return self._basis

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return self.basis().normal_form(f)

    def contains(self, f: MultiPoly) -> bool:
        return self.basis().contains(f)

    def certify(self) -> bool:
        """Both-ways check: every listed generator reduces to 0 and the basis is a GB."""
        gb = self.basis()
        return verify_basis(gb) and all(gb.contains(g) for g in self.gens)


# -- disk cache -----------------------------------------------------------------

def _stable_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class GBCache:
    """Content-addressed store of reduced bases as polynomial text."""

    def __init__(self, root: str | os.PathLike | None = None):
        if root is None:
            root = os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "wildkummer"
        self.root = Path(root)
        self.hits = 0
        self.misses = 0

    def key(self, ring: PolyRing, order: MonomialOrder, source: Sequence[MultiPoly]) -> str:
        blob = _stable_dumps({
            "field": ring.desc.describe(),
            "roster": list(ring.names),
            "order": order.describe(),
            "gens": sorted(g.to_text() for g in source),
        })
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def load(self, ring, order, source) -> GroebnerBasis | None:
        path = self._path(self.key(ring, order, source))
        if not path.exists():
            self.misses += 1
            return None
        try:
            data = json.loads(path.read_text())
            gens = tuple(ring.parse(t) for t in data["gens"])
        except (OSError, ValueError, KeyError):
            self.misses += 1
            return None
        gb = GroebnerBasis(ring, order, gens, tuple(source), certified=False, from_cache=True)
        if not verify_basis(gb):
            self.misses += 1
            return None
        self.hits += 1
        return GroebnerBasis(ring, order, gens, tuple(source), certified=True,
                             pairs_checked=data.get("pairs_checked", 0), from_cache=True)

    def store(self, gb: GroebnerBasis) -> None:
        path = self._path(self.key(gb.ring, gb.order, gb.source))
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(_stable_dumps({
            "gens": gb.texts(),
            "certified": gb.certified,
            "pairs_checked": gb.pairs_checked,
        }))
        tmp.replace(path)
