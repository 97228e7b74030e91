"""Cyclic group actions of prime order on polynomial rings and their quotients.

The main entry points compute traces and norms, reduced coset
representatives for ideals of the form
``B^p - A^((p-1)e) B + P(A)``, degree-bounded bases of invariants (by linear
algebra on the kernel of ``sigma - id``), and a degree-bounded test of
whether invariants of the quotient lift to invariants of the polynomial
ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .field import FieldDesc
from .groebner import GroebnerBasis, Limits, SubalgebraMembership, buchberger
from .linalg import Echelon, nullspace
from .poly import GREVLEX, Monomial, MultiPoly, PolyRing, RingMap


class ActionError(ValueError):
    """Ill-formed action or an ideal that the action does not preserve."""


@dataclass(frozen=True)
class ShapePair:
    """A variable pair with ``sigma(A) = A`` and ``sigma(B) = B + A^e``."""

    a: int
    b: int
    e: int


@dataclass(frozen=True)
class CyclicAction:
    p: int
    sigma: RingMap
    shape: tuple[ShapePair, ...] | None
    wild: bool

    @property
    def ring(self) -> PolyRing:
        return self.sigma.source

    def __call__(self, f: MultiPoly) -> MultiPoly:
        return self.sigma(f)

    def orbit(self, f: MultiPoly) -> list[MultiPoly]:
        out = [f]
        for _ in range(self.p - 1):
            out.append(self.sigma(out[-1]))
        return out

    def image_degree(self) -> int:
        """Largest total degree among the images of the variables."""
        return max([im.total_degree() or 0 for im in self.sigma.images] + [1])


def _detect_shape(ring: PolyRing, images: Sequence[MultiPoly]) -> tuple[ShapePair, ...] | None:
    gens = ring.gens
    fixed = {i for i, im in enumerate(images) if im == gens[i]}
    pairs = []
    used = set()
    for b, im in enumerate(images):
        if b in fixed:
            continue
        diff = im - gens[b]
        if len(diff.terms) != 1:
            return None
        (e, c), = diff.terms.items()
        support = [i for i, x in enumerate(e) if x]
        if c != 1 or len(support) != 1 or support[0] not in fixed or support[0] in used:
            return None
        a = support[0]
        used.add(a)
        pairs.append(ShapePair(a, b, e[a]))
    return tuple(pairs)


def make_action(ring: PolyRing, p: int, images: Mapping[str, MultiPoly | str] | Sequence[MultiPoly]) -> CyclicAction:
    """Build the order-``p`` action sending each variable to its image.

    ``images`` may be a mapping (unlisted variables are fixed) or a full
    sequence.  Raises :class:`ActionError` unless ``sigma^p`` is the identity.
    """
    if isinstance(images, Mapping):
        sigma = RingMap.from_dict(ring, ring, images)
    else:
        sigma = RingMap(ring, ring, tuple(images))
    if p < 2:
        raise ActionError("group order must be at least 2")
    power = sigma
    for _ in range(p - 1):
        power = sigma.compose(power)
    if power.images != ring.gens:
        raise ActionError(f"sigma^{p} is not the identity")
    shape = _detect_shape(ring, sigma.images)
    return CyclicAction(p, sigma, shape, wild=(p == ring.desc.p))


def trace(act: CyclicAction, f: MultiPoly) -> MultiPoly:
    acc = f.ring.zero
    for h in act.orbit(f):
        acc = acc + h
    return acc


def norm(act: CyclicAction, f: MultiPoly) -> MultiPoly:
    acc = f.ring.one
    for h in act.orbit(f):
        acc = acc * h
    return acc


def is_invariant(act: CyclicAction, f: MultiPoly, modulo: GroebnerBasis | None = None) -> bool:
    diff = act(f) - f
    return modulo.contains(diff) if modulo is not None else not diff.terms


# -- reduced representatives --------------------------------------------------------

@dataclass(frozen=True)
class _Rewrite:
    b: int
    a: int
    e: int
    rhs: dict  # B^p == rhs modulo the ideal


def _shape_rules(act: CyclicAction, gens: Sequence[MultiPoly]) -> list[_Rewrite]:
    if act.shape is None:
        raise ActionError("action is not of the B -> B + A^e shape")
    ring = act.ring
    p = act.p
    rules = []
    remaining = list(gens)
    for pair in act.shape:
        a, b, e = pair.a, pair.b, pair.e
        B, A = ring.gens[b], ring.gens[a]
        match = None
        for g in remaining:
            lead = B**p
            rest = g - lead + A ** ((p - 1) * e) * B
            if g.coefficient(lead.leading_monomial()) != 1:
                continue
            ok = all(
                all(x == 0 for i, x in enumerate(m) if i != a) and m[a] > 0
                for m in rest.terms
            )
            if ok:
                match = (g, rest)
                break
        if match is None:
            raise ActionError(f"no generator of the form {ring.names[b]}^p - ... for pair {pair}")
        remaining.remove(match[0])
        rhs = A ** ((p - 1) * e) * B - match[1]
        rules.append(_Rewrite(b, a, e, rhs.terms))
    if remaining:
        raise ActionError("ideal has generators outside the B^p - A^((p-1)e) B + P(A) shape")
    return rules


def reduce_representative(f: MultiPoly, act: CyclicAction, ideal: Sequence[MultiPoly]) -> MultiPoly:
    """The unique representative of ``f`` modulo ``ideal`` with every ``deg_B < p``.

    Rewrites ``B^p -> A^((p-1)e) B - P(A)`` on the term of highest B-degree
    until no B-exponent reaches ``p``.
    """
    rules = _shape_rules(act, ideal)
    desc = f.ring.desc
    p = act.p
    terms = dict(f.terms)
    while True:
        best = None
        for m in terms:
            for r in rules:
                if m[r.b] >= p and (best is None or m[r.b] > best[0][best[1].b]):
                    best = (m, r)
        if best is None:
            return MultiPoly(f.ring, terms)
        m, r = best
        c = terms.pop(m)
        q = list(m)
        q[r.b] -= p
        for te, tc in r.rhs.items():
            ne = tuple(x + y for x, y in zip(te, q))
            v = desc.add(terms.get(ne, 0), desc.mul(c, tc))
            if v:
                terms[ne] = v
            else:
                terms.pop(ne, None)


# -- bounded-degree invariants -------------------------------------------------------

def _components(columns: list[dict]) -> list[list[int]]:
    parent: dict = {}

    def find(x):
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for i, col in enumerate(columns):
        ri = find(("col", i))
        for c in col:
            rc = find(("mono", c))
            if rc != ri:
                parent[rc] = ri
    groups: dict = {}
    for i in range(len(columns)):
        groups.setdefault(find(("col", i)), []).append(i)
    return list(groups.values())


def _sigma_minus_id(act: CyclicAction, monos: list[Monomial], gb: GroebnerBasis | None) -> list[dict]:
    desc = act.ring.desc
    cols = []
    for m in monos:
        img = dict(act.sigma.monomial_image(m))
        if gb is not None:
            img = gb.normal_form(MultiPoly(act.ring, img)).terms
            img = dict(img)
        v = desc.add(img.get(m, 0), desc.neg(1))
        if v:
            img[m] = v
        else:
            img.pop(m, None)
        cols.append(img)
    return cols


def invariant_basis_bounded(act: CyclicAction, d: int, ideal: Sequence[MultiPoly] = (), *,
                            limits: Limits | None = None) -> list[MultiPoly]:
    """Basis of the invariant classes spanned by monomials of degree <= d.

    Without ``ideal`` this is the invariants of the polynomial ring of total
    degree <= d.  With an ideal, classes are represented by normal forms for
    a grevlex Gröbner basis, and the space considered is the span of the
    standard monomials of degree <= d.  The result is in reduced row echelon
    form, ascending by leading monomial.
    """
    ring = act.ring
    gb = buchberger(ideal, GREVLEX, ring=ring, limits=limits) if ideal else None
    monos = gb.standard_monomials_up_to(d) if gb is not None else ring.monomials_up_to(d)
    cols = _sigma_minus_id(act, monos, gb)
    desc = ring.desc
    key = GREVLEX.key
    out = []
    for comp in _components(cols):
        kernel = nullspace(desc, [cols[i] for i in comp])
        if not kernel:
            continue
        ech = Echelon(desc, key)
        for vec in kernel:
            ech.add({monos[comp[j]]: c for j, c in vec.items()})
        out.extend(ech.rref())
    out.sort(key=lambda row: key(max(row, key=key)))
    return [MultiPoly(ring, row) for row in out]


@dataclass
class SurjectivityReport:
    surjective: bool
    degree: int
    lift_degree: int
    dim_invariants: int
    dim_image: int
    witnesses: list[MultiPoly] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "surjective_up_to_d": self.surjective,
            "degree": self.degree,
            "lift_degree": self.lift_degree,
            "dim_quotient_invariants": self.dim_invariants,
            "dim_image": self.dim_image,
            "witnesses": [str(w) for w in self.witnesses],
        }


def check_stable(act: CyclicAction, ideal: Sequence[MultiPoly], gb: GroebnerBasis) -> None:
    for g in ideal:
        if not gb.contains(act(g)):
            raise ActionError(f"ideal is not stable under sigma: sigma({g}) is not in it")


def check_quotient_surjectivity(act: CyclicAction, ideal: Sequence[MultiPoly], d: int, *,
                                lift_degree: int | None = None,
                                limits: Limits | None = None) -> SurjectivityReport:
    """Do invariant classes of degree <= d come from invariants of the ring?

    Invariants of the polynomial ring are enumerated up to ``lift_degree``
    (default ``d`` times the largest degree of a variable image, which
    bounds the degree of the reduced representative for the B -> B + A^e
    shape).  Their classes are intersected with the degree <= d part of the
    quotient and compared with the invariant classes there; the first
    invariant basis class outside the image is reported as a witness.
    """
    ring = act.ring
    if lift_degree is None:
        lift_degree = d * act.image_degree()
    if ideal:
        gb = buchberger(ideal, GREVLEX, ring=ring, limits=limits)
        check_stable(act, ideal, gb)
    else:
        gb = None
    quotient_inv = invariant_basis_bounded(act, d, ideal, limits=limits)
    free_inv = invariant_basis_bounded(act, lift_degree, limits=limits)
    desc = ring.desc
    key = GREVLEX.key
    image = Echelon(desc, key)
    for h in free_inv:
        nf = gb.normal_form(h) if gb is not None else h
        image.add(nf.terms)
    dim_image = sum(1 for piv in image.rows if sum(piv) <= d)
    witnesses = [v for v in quotient_inv if not image.contains(v.terms)]
    return SurjectivityReport(
        surjective=not witnesses,
        degree=d,
        lift_degree=lift_degree,
        dim_invariants=len(quotient_inv),
        dim_image=dim_image,
        witnesses=witnesses[:1],
    )


@dataclass
class GenerationReport:
    degree: int
    dim_invariants: int
    generators: list[MultiPoly]
    missing: list[MultiPoly] = field(default_factory=list)

    @property
    def generated(self) -> bool:
        return not self.missing

    def to_dict(self) -> dict:
        return {
            "generated_up_to_d": self.generated,
            "degree": self.degree,
            "dim_invariants": self.dim_invariants,
            "generators": [str(h) for h in self.generators],
            "missing": [str(m) for m in self.missing],
        }


def check_generation(act: CyclicAction, gens: Sequence[MultiPoly], d: int, *,
                     limits: Limits | None = None) -> GenerationReport:
    """Does every invariant of degree <= d lie in the subalgebra generated by ``gens``?"""
    for h in gens:
        if act(h) != h:
            raise ActionError(f"generator {h} is not invariant")
    basis = invariant_basis_bounded(act, d, limits=limits)
    member = SubalgebraMembership(gens, ring=act.ring, limits=limits)
    missing = [b for b in basis if not member.contains(b)]
    return GenerationReport(d, len(basis), list(gens), missing)


# -- standard examples ------------------------------------------------------------------

def shaped_action(desc: FieldDesc, exponents: Sequence[int],
                  p_polys: Sequence[MultiPoly | str] | None = None) -> tuple[CyclicAction, list[MultiPoly]]:
    """The action ``B_i -> B_i + A_i^{e_i}`` and the ideal of ``B_i^p - A_i^{(p-1)e_i} B_i + P_i``.

    ``P_i`` defaults to ``A_i``.
    """
    p = desc.p
    g = len(exponents)
    names = []
    for i in range(1, g + 1):
        names += [f"A{i}", f"B{i}"]
    ring = PolyRing(desc, names)
    images = {f"B{i}": ring.var(f"B{i}") + ring.var(f"A{i}") ** e for i, e in enumerate(exponents, 1)}
    act = make_action(ring, p, images)
    ideal = []
    for i, e in enumerate(exponents, 1):
        A, B = ring.var(f"A{i}"), ring.var(f"B{i}")
        P = A
        if p_polys is not None:
            P = p_polys[i - 1]
            P = ring.parse(P) if isinstance(P, str) else P
        ideal.append(B**p - A ** ((p - 1) * e) * B + P)
    return act, ideal


def swap_example(desc: FieldDesc) -> tuple[CyclicAction, list[MultiPoly]]:
    """F[X, Y] with the coordinate swap and the stable ideal (X + Y)."""
    if desc.p != 2:
        raise ActionError("the swap example is an order-2 action in characteristic 2")
    ring = PolyRing(desc, "X,Y")
    act = make_action(ring, 2, {"X": ring.var("Y"), "Y": ring.var("X")})
    return act, [ring.var("X") + ring.var("Y")]


def campbell_hughes_generators(desc: FieldDesc, g: int) -> tuple[CyclicAction, list[MultiPoly]]:
    """Generators of the invariants of ``y_i -> y_i + x_i`` on F[x_1, y_1, ..., x_g, y_g]."""
    p = desc.p
    names = []
    for i in range(1, g + 1):
        names += [f"x{i}", f"y{i}"]
    ring = PolyRing(desc, names)
    act = make_action(ring, p, {f"y{i}": f"y{i} + x{i}" for i in range(1, g + 1)})
    xs = [ring.var(f"x{i}") for i in range(1, g + 1)]
    ys = [ring.var(f"y{i}") for i in range(1, g + 1)]
    gens = list(xs)
    for i in range(g):
        for j in range(i + 1, g):
            gens.append(xs[i] * ys[j] - xs[j] * ys[i])
    gens += [norm(act, y) for y in ys]

    def exponent_vectors(k):
        if k == 0:
            yield ()
            return
        for rest in exponent_vectors(k - 1):
            for a in range(p):
                yield rest + (a,)

    for a in exponent_vectors(g):
        if sum(a) > 2 * (p - 1):
            mono = ring.one
            for y, ai in zip(ys, a):
                mono = mono * y**ai
            gens.append(trace(act, mono))
    return act, gens


__all__ = [
    "ActionError", "CyclicAction", "GenerationReport", "check_generation", "ShapePair", "SurjectivityReport", "campbell_hughes_generators",
    "check_quotient_surjectivity", "invariant_basis_bounded", "is_invariant", "make_action", "norm",
    "reduce_representative", "shaped_action", "swap_example", "trace",
]

