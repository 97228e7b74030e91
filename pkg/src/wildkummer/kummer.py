"""Invariant rings of the sign involution on products of elliptic curves (char 2).

Notation
--------
A configuration has ``g`` factors, the first ``r`` ordinary (coordinates
``x_i, y_i``) and the rest supersingular (coordinates ``v_j, w_j``).  Subsets
of ``{1..g}`` are bitmasks; bit ``i-1`` marks factor ``i``.  The
presentation ring has one variable ``T_M`` per subset, plus ``X_i`` for the
ordinary and ``V_j`` for the supersingular factors, and

    psi:  T_M -> Tr(prod y_i * prod w_j),  X_i -> x_i,  V_j -> v_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .action import CyclicAction, make_action, trace
from .field import FieldDesc, FieldElem, field_make, field_sqrt, primitive_cube_root
from .groebner import (
    GroebnerBasis,
    IdealComparison,
    Limits,
    QuotientPresentation,
    buchberger,
    eliminate,
    ideal_equal,
)
from .linalg import rank
from .poly import GREVLEX, MultiPoly, PolyRing, RingMap


class KummerError(ValueError):
    """Invalid configuration."""


class VerificationFailed(RuntimeError):
    """A mathematical identity did not hold; ``certificate`` carries the witness."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class HeavyComputationRefused(RuntimeError):
    """The requested kernel computation needs an explicit opt-in."""


# -- configuration and subsets --------------------------------------------------------

@dataclass(frozen=True)
class CurveConfig:
    g: int
    r: int
    j: tuple[FieldElem, ...]
    field: FieldDesc

    def __post_init__(self):
        if self.g < 1:
            raise KummerError("need at least one elliptic factor")
        if not 0 <= self.r <= self.g:
            raise KummerError(f"number of ordinary factors must lie in [0, {self.g}]")
        if self.field.p != 2:
            raise KummerError("the curve presentations live in characteristic 2")
        if len(self.j) != self.r:
            raise KummerError(f"expected {self.r} j-invariants, got {len(self.j)}")
        for x in self.j:
            if x.desc != self.field:
                raise KummerError("j-invariant from a different field")
            if not x:
                raise KummerError("ordinary factors need nonzero j-invariants")

    @classmethod
    def make(cls, g: int, supersingular: int = 0, j: Sequence | None = None,
             field: FieldDesc | None = None) -> "CurveConfig":
        """``g`` factors of which the last ``supersingular`` ones are supersingular."""
        field = field or field_make(2)
        r = g - supersingular
        if j is None:
            j = [field.one] * max(r, 0)
        j = tuple(field(x) for x in j)
        return cls(g, r, j, field)

    @property
    def full(self) -> int:
        return (1 << self.g) - 1

    def is_ordinary(self, i: int) -> bool:
        """``i`` is a 0-based factor index."""
        return i < self.r

    @property
    def gamma(self) -> tuple[FieldElem, ...]:
        return tuple(field_sqrt(x) for x in self.j)

    def describe(self) -> dict:
        return {"g": self.g, "r": self.r, "supersingular": self.g - self.r,
                "j": [str(x) for x in self.j]}


def members(mask: int) -> list[int]:
    """0-based indices of the set bits."""
    out = []
    i = 0
    while mask >> i:
        if mask >> i & 1:
            out.append(i)
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def proper_submasks(mask: int) -> list[int]:
    """All submasks of ``mask`` except ``mask`` itself, ascending."""
    if mask == 0:
        return []
    subs = []
    s = mask
    while True:
        s = (s - 1) & mask
        subs.append(s)
        if s == 0:
            break
    return sorted(subs)


def subset_label(mask: int, g: int) -> str:
    if mask == 0:
        return "0"
    sep = "" if g < 10 else "_"
    return sep.join(str(i + 1) for i in members(mask))


def t_name(mask: int, g: int) -> str:
    return f"T_{subset_label(mask, g)}"


# -- rings -------------------------------------------------------------------------------

def curve_names(cfg: CurveConfig) -> list[str]:
    names = []
    for i in range(1, cfg.g + 1):
        names += [f"x{i}", f"y{i}"] if i <= cfg.r else [f"v{i}", f"w{i}"]
    return names


def presentation_names(cfg: CurveConfig) -> list[str]:
    names = [t_name(m, cfg.g) for m in range(1 << cfg.g)]
    names += [f"X{i}" for i in range(1, cfg.r + 1)]
    names += [f"V{j}" for j in range(cfg.r + 1, cfg.g + 1)]
    return names


def minimal_names(cfg: CurveConfig) -> list[str]:
    names = [t_name(m, cfg.g) for m in range(1 << cfg.g) if popcount(m) >= 2]
    names += [f"X{i}" for i in range(1, cfg.r + 1)]
    names += [f"V{j}" for j in range(cfg.r + 1, cfg.g + 1)]
    return names


def curve_presentation(cfg: CurveConfig) -> tuple[QuotientPresentation, CyclicAction]:
    """Affine neighbourhood of a 2-division point and the induced involution."""
    ring = PolyRing(cfg.field, curve_names(cfg))
    gens = []
    images = {}
    for i in range(1, cfg.g + 1):
        if i <= cfg.r:
            x, y = ring.var(f"x{i}"), ring.var(f"y{i}")
            j = cfg.j[i - 1]
            gens.append(y**2 + x * y + x**3 * field_sqrt(j) + x * j.inv())
            images[f"y{i}"] = y + x
        else:
            v, w = ring.var(f"v{i}"), ring.var(f"w{i}")
            gens.append(w**2 + v**2 * w + v)
            images[f"w{i}"] = w + v**2
    act = make_action(ring, 2, images)
    return QuotientPresentation(ring, tuple(gens)), act


# -- invariant generators -------------------------------------------------------------------

def _moving(ring: PolyRing, cfg: CurveConfig, i: int) -> tuple[MultiPoly, MultiPoly]:
    """(shift, moving coordinate) of factor ``i`` (0-based): x_i, y_i or v_i^2, w_i."""
    if cfg.is_ordinary(i):
        return ring.var(f"x{i + 1}"), ring.var(f"y{i + 1}")
    v = ring.var(f"v{i + 1}")
    return v**2, ring.var(f"w{i + 1}")


def closed_form_trace(cfg: CurveConfig, mask: int, ring: PolyRing) -> MultiPoly:
    """Sum over proper subsets L of M of (shifts on M minus L) * (coordinates on L)."""
    acc = ring.zero
    for sub in proper_submasks(mask):
        term = ring.one
        for i in members(mask):
            shift, coord = _moving(ring, cfg, i)
            term = term * (coord if sub >> i & 1 else shift)
        acc = acc + term
    return acc


def invariant_generators(cfg: CurveConfig, ring: PolyRing | None = None,
                         act: CyclicAction | None = None) -> dict[int, MultiPoly]:
    """``f_M = Tr(prod_{i in M} moving coordinate)`` for every subset mask M.

    Computed with the trace operator and checked against the closed form.
    The further generators ``v_j`` are the curve variables themselves.
    """
    if ring is None or act is None:
        quotient, act = curve_presentation(cfg)
        ring = quotient.ring
    out = {}
    for mask in range(1 << cfg.g):
        mono = ring.one
        for i in members(mask):
            mono = mono * _moving(ring, cfg, i)[1]
        f = trace(act, mono)
        if f != closed_form_trace(cfg, mask, ring):
            raise VerificationFailed(f"trace of subset {subset_label(mask, cfg.g)} disagrees with closed form")
        out[mask] = f
    return out


# -- relations ---------------------------------------------------------------------------------

@dataclass
class Relation:
    family: str      # "trivial", "sum", "product"
    label: str
    poly: MultiPoly

    def to_line(self) -> str:
        return f"{self.family}[{self.label}]: {self.poly}"


@dataclass
class RelationSet:
    config: CurveConfig
    ring: PolyRing
    gamma: tuple[FieldElem, ...]
    trivial: list[Relation]
    sums: list[Relation]
    products: list[Relation]

    def generators(self) -> list[MultiPoly]:
        return [r.poly for r in self.relations()]

    def relations(self) -> list[Relation]:
        return self.trivial + self.sums + self.products

    def counts(self) -> dict[str, int]:
        return {"trivial": len(self.trivial), "sum": len(self.sums), "product": len(self.products)}

    def to_text(self) -> str:
        return "\n".join(r.to_line() for r in self.relations()) + "\n"


def expected_counts(g: int) -> dict[str, int]:
    s = (1 << g) - 1 - g
    return {
        "trivial": 1 + g,
        "sum": (1 << g) - 1 - g - comb(g, 2),
        "product": comb(s, 2) + s,
        "minimal_variables": (1 << g) - 1,
    }


class _Builder:
    """Shared pieces of the relation formulas in the presentation ring."""

    def __init__(self, cfg: CurveConfig, ring: PolyRing):
        self.cfg = cfg
        self.ring = ring
        gam = cfg.gamma
        self.T = {m: ring.var(t_name(m, cfg.g)) for m in range(1 << cfg.g)}
        self.coord = []
        self.P = []
        for i in range(cfg.g):
            if cfg.is_ordinary(i):
                X = ring.var(f"X{i + 1}")
                self.coord.append(X)
                self.P.append(X**3 * gam[i] + X * (gam[i] ** -2))
            else:
                V = ring.var(f"V{i + 1}")
                self.coord.append(V**2)
                self.P.append(V)
        self._xv: dict[int, MultiPoly] = {}
        self._p: dict[int, MultiPoly] = {}

    def xv(self, mask: int) -> MultiPoly:
        """prod X_i (ordinary) * prod V_j^2 (supersingular) over ``mask``."""
        got = self._xv.get(mask)
        if got is None:
            got = self.ring.one
            for i in members(mask):
                got = got * self.coord[i]
            self._xv[mask] = got
        return got

    def p(self, mask: int) -> MultiPoly:
        got = self._p.get(mask)
        if got is None:
            got = self.ring.one
            for i in members(mask):
                got = got * self.P[i]
            self._p[mask] = got
        return got

    def sum_relation(self, d: int) -> MultiPoly:
        acc = self.ring.zero
        for sub in proper_submasks(d):
            acc = acc + self.xv(d & ~sub) * self.T[sub]
        return acc

    def product_relation(self, a: int, b: int) -> MultiPoly:
        inter = a & b
        union = a | b
        acc = self.T[a] * self.T[b]
        if inter:
            for sub in proper_submasks(inter):
                acc = acc + self.xv(inter & ~sub) * self.p(sub) * self.T[union & ~sub]
        a_only = a & ~b
        b_only = b & ~a
        if a_only:
            inner = self.ring.zero
            for sub in proper_submasks(a_only):
                inner = inner + self.xv(a_only & ~sub) * self.T[sub | b_only]
            acc = acc + self.p(inter) * inner
        return acc


def relation_set(cfg: CurveConfig) -> RelationSet:
    """Generators of the relation ideal J in the presentation ring.

    Families: ``trivial`` (T_0, X_i - T_i, V_j^2 - T_j), ``sum`` (one per
    subset D with |D| >= 3) and ``product`` (one per unordered pair A <= B
    of subsets with |A|, |B| >= 2, ascending bitmask).
    """
    g = cfg.g
    ring = PolyRing(cfg.field, presentation_names(cfg))
    b = _Builder(cfg, ring)
    trivial = [Relation("trivial", "0", b.T[0])]
    for i in range(g):
        label = str(i + 1)
        trivial.append(Relation("trivial", label, b.coord[i] - b.T[1 << i]))
    big = [m for m in range(1 << g) if popcount(m) >= 2]
    sums = [
        Relation("sum", subset_label(d, g), b.sum_relation(d))
        for d in range(1 << g) if popcount(d) >= 3
    ]
    products = []
    for ia, a in enumerate(big):
        for bb in big[ia:]:
            products.append(Relation(
                "product", f"{subset_label(a, g)},{subset_label(bb, g)}", b.product_relation(a, bb)
            ))
    return RelationSet(cfg, ring, cfg.gamma, trivial, sums, products)


def psi_map(cfg: CurveConfig, rs: RelationSet, curve_ring: PolyRing,
            traces: dict[int, MultiPoly]) -> RingMap:
    images = {t_name(m, cfg.g): f for m, f in traces.items()}
    for i in range(1, cfg.g + 1):
        if i <= cfg.r:
            images[f"X{i}"] = curve_ring.var(f"x{i}")
        else:
            images[f"V{i}"] = curve_ring.var(f"v{i}")
    return RingMap(rs.ring, curve_ring, tuple(images[n] for n in rs.ring.names))


# -- verification ----------------------------------------------------------------------------

@dataclass
class ContainmentCertificate:
    config: CurveConfig
    entries: list[dict]

    @property
    def passed(self) -> bool:
        return all(e["zero"] for e in self.entries)

    def to_dict(self) -> dict:
        return {"config": self.config.describe(), "passed": self.passed, "relations": self.entries}


def verify_containment(cfg: CurveConfig, *, limits: Limits | None = None,
                       raise_on_failure: bool = True) -> ContainmentCertificate:
    """psi maps every generator of J into the curve ideal I."""
    quotient, act = curve_presentation(cfg)
    gb = quotient.basis(limits)
    traces = invariant_generators(cfg, quotient.ring, act)
    rs = relation_set(cfg)
    psi = psi_map(cfg, rs, quotient.ring, traces)
    entries = []
    for rel in rs.relations():
        nf = gb.normal_form(psi(rel.poly))
        entries.append({
            "family": rel.family,
            "label": rel.label,
            "relation": str(rel.poly),
            "normal_form": str(nf),
            "zero": nf.is_zero(),
        })
    cert = ContainmentCertificate(cfg, entries)
    if raise_on_failure and not cert.passed:
        bad = next(e for e in entries if not e["zero"])
        raise VerificationFailed(f"relation {bad['family']}[{bad['label']}] is not in ker(psi)", cert)
    return cert


@dataclass
class KernelCertificate:
    config: CurveConfig
    kernel: list[MultiPoly]
    comparison: IdealComparison

    @property
    def passed(self) -> bool:
        return self.comparison.equal

    def to_dict(self) -> dict:
        return {
            "config": self.config.describe(),
            "passed": self.passed,
            "kernel_generators": [str(k) for k in self.kernel],
            "J_mod_kernel": [{"generator": str(g), "normal_form": str(r)} for g, r in self.comparison.b_mod_a],
            "kernel_mod_J": [{"generator": str(g), "normal_form": str(r)} for g, r in self.comparison.a_mod_b],
        }


KERNEL_LIMITS = Limits(timeout=600.0, degree_cap=40)


def kernel_of_psi(cfg: CurveConfig, *, limits: Limits | None = None) -> tuple[list[MultiPoly], RelationSet]:
    """Generators of ker(psi) via elimination of the curve variables."""
    quotient, act = curve_presentation(cfg)
    traces = invariant_generators(cfg, quotient.ring, act)
    rs = relation_set(cfg)
    cnames = list(quotient.ring.names)
    big = PolyRing(cfg.field, cnames + list(rs.ring.names))
    gens = [f.to_ring(big) for f in quotient.gens]
    for m, f in traces.items():
        gens.append(big.var(t_name(m, cfg.g)) - f.to_ring(big))
    for i in range(1, cfg.g + 1):
        if i <= cfg.r:
            gens.append(big.var(f"X{i}") - big.var(f"x{i}"))
        else:
            gens.append(big.var(f"V{i}") - big.var(f"v{i}"))
    elim = eliminate(gens, cnames, ring=big, limits=limits)
    return [k.to_ring(rs.ring) for k in elim], rs


def verify_kernel(cfg: CurveConfig, *, allow_heavy: bool = False, limits: Limits | None = None,
                  raise_on_failure: bool = True) -> KernelCertificate:
    """ker(psi) equals J, checked as an equality of ideals.

    ``g >= 3`` needs ``allow_heavy``; resource exhaustion surfaces as
    :class:`~wildkummer.groebner.ResourceLimitExceeded`.
    """
    if cfg.g >= 3 and not allow_heavy:
        raise HeavyComputationRefused(f"verify_kernel at g={cfg.g} requires allow_heavy")
    limits = limits or KERNEL_LIMITS
    kernel, rs = kernel_of_psi(cfg, limits=limits)
    cmp = ideal_equal(kernel, rs.generators(), GREVLEX, ring=rs.ring, limits=limits)
    cert = KernelCertificate(cfg, kernel, cmp)
    if raise_on_failure and not cert.passed:
        raise VerificationFailed("ker(psi) differs from J", cert)
    return cert


# -- minimal presentation and embedding dimension ---------------------------------------------

@dataclass
class MinimalPresentation:
    relation_set: RelationSet
    quotient: QuotientPresentation
    labels: list[str]
    substitution: RingMap

    @property
    def ring(self) -> PolyRing:
        return self.quotient.ring

    @property
    def relations(self) -> tuple[MultiPoly, ...]:
        return self.quotient.gens


def minimal_presentation(rs: RelationSet) -> MinimalPresentation:
    """Drop T_0 and substitute T_i -> X_i, T_j -> V_j^2; keep the sum and product families."""
    cfg = rs.config
    small = PolyRing(cfg.field, minimal_names(cfg))
    images = {}
    for n in rs.ring.names:
        if n in small.roster.index:
            images[n] = small.var(n)
    images[t_name(0, cfg.g)] = small.zero
    for i in range(cfg.g):
        if cfg.is_ordinary(i):
            images[t_name(1 << i, cfg.g)] = small.var(f"X{i + 1}")
        else:
            images[t_name(1 << i, cfg.g)] = small.var(f"V{i + 1}") ** 2
    sub = RingMap(rs.ring, small, tuple(images[n] for n in rs.ring.names))
    for rel in rs.trivial:
        if sub(rel.poly):
            raise VerificationFailed(f"trivial relation {rel.label} survives the substitution")
    rels = [(r.family, r.label, sub(r.poly)) for r in rs.sums + rs.products]
    quotient = QuotientPresentation(small, tuple(p for _, _, p in rels))
    labels = [f"{fam}[{lab}]" for fam, lab, _ in rels]
    return MinimalPresentation(rs, quotient, labels, sub)


@dataclass
class EmbeddingCertificate:
    value: int
    minimal_variables: int
    linear_parts_vanish: bool
    nonzero_linear: list[str]
    full_variables: int
    jacobian_rank: int
    origin_on_variety: bool

    @property
    def jacobian_value(self) -> int:
        return self.full_variables - self.jacobian_rank

    @property
    def agree(self) -> bool:
        return (
            self.linear_parts_vanish
            and self.origin_on_variety
            and self.minimal_variables == self.jacobian_value == self.value
        )

    def to_dict(self) -> dict:
        return {
            "embedding_dimension": self.value,
            "linear_part_certificate": {
                "variables": self.minimal_variables,
                "all_linear_parts_zero": self.linear_parts_vanish,
                "offending_relations": self.nonzero_linear,
            },
            "jacobian_certificate": {
                "variables": self.full_variables,
                "rank_at_origin": self.jacobian_rank,
                "embedding_dimension": self.jacobian_value,
                "origin_on_variety": self.origin_on_variety,
            },
            "agree": self.agree,
        }


def embedding_dimension(rs: RelationSet) -> EmbeddingCertificate:
    """Embedding dimension at the origin, certified two independent ways.

    (a) In the minimal presentation every relation has zero linear part, so
    the cotangent space has one dimension per variable.  (b) For the full
    generator list, ``#variables - rank(Jacobian at 0)``.
    """
    mp = minimal_presentation(rs)
    offending = [lab for lab, f in zip(mp.labels, mp.relations) if f.linear_part()]
    full = rs.generators()
    on_variety = all(not f.constant_term() for f in full)
    jac_rank = rank(rs.ring.desc, [f.linear_part() for f in full])
    n_full = rs.ring.arity
    value = mp.ring.arity
    cert = EmbeddingCertificate(
        value=value,
        minimal_variables=mp.ring.arity,
        linear_parts_vanish=not offending,
        nonzero_linear=offending,
        full_variables=n_full,
        jacobian_rank=jac_rank,
        origin_on_variety=on_variety,
    )
    if not cert.agree:
        raise VerificationFailed("embedding dimension certificates disagree", cert)
    return cert


# -- function field identities ------------------------------------------------------------------

@dataclass
class IdentityCheck:
    name: str
    expression: str
    normal_form: str

    @property
    def passed(self) -> bool:
        return self.normal_form == "0"

    def to_dict(self) -> dict:
        return {"name": self.name, "expression": self.expression, "normal_form": self.normal_form,
                "passed": self.passed}


THREEFOLD_IDENTITIES = (
    ("T_23", "V1^2*T_23 + V2^2*T_13 + V3^2*T_12 + V1^2*V2^2*V3^2"),
    ("T_123", "V1^2*T_123 + T_12*T_13 + V1*V2^2*V3^2"),
)


def threefold_basis(field: FieldDesc | None = None, *, limits: Limits | None = None) -> tuple[MinimalPresentation, GroebnerBasis]:
    cfg = CurveConfig.make(3, supersingular=3, field=field)
    mp = minimal_presentation(relation_set(cfg))
    return mp, mp.quotient.basis(limits)


def function_field_identities(field: FieldDesc | None = None, *, limits: Limits | None = None,
                              raise_on_failure: bool = True) -> list[IdentityCheck]:
    """Cleared-denominator forms of T_23 and T_123 vanish modulo J (g=3, all supersingular)."""
    mp, gb = threefold_basis(field, limits=limits)
    out = []
    for name, text in THREEFOLD_IDENTITIES:
        f = mp.ring.parse(text)
        out.append(IdentityCheck(name, str(f), str(gb.normal_form(f))))
    if raise_on_failure and not all(c.passed for c in out):
        raise VerificationFailed("threefold identity failed", out)
    return out


@dataclass(frozen=True)
class Frac:
    """Numerator/denominator pair; no cancellation is attempted."""

    num: MultiPoly
    den: MultiPoly

    def __add__(self, o: "Frac") -> "Frac":
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __mul__(self, o: "Frac") -> "Frac":
        return Frac(self.num * o.num, self.den * o.den)

    def inv(self) -> "Frac":
        return Frac(self.den, self.num)

    def __pow__(self, n: int) -> "Frac":
        return Frac(self.num**n, self.den**n)


def substitute_fractions(f: MultiPoly, values: Sequence[Frac], target: PolyRing) -> MultiPoly:
    """Numerator of f(values) over the common denominator prod den_v^{deg_v f}."""
    degs = [f.degree_in(i) or 0 for i in range(f.ring.arity)]
    acc = target.zero
    for e, c in f.terms.items():
        term = target.const(FieldElem(target.desc, c))
        for v, x, dmax in zip(values, e, degs):
            term = term * v.num**x * v.den ** (dmax - x)
        acc = acc + term
    return acc


@dataclass
class ShiodaCertificate:
    omega: str
    numerator: str

    @property
    def passed(self) -> bool:
        return self.numerator == "0"

    def to_dict(self) -> dict:
        return {"omega": self.omega, "numerator": self.numerator, "passed": self.passed}


def shioda_parametrization(field: FieldDesc, omega: FieldElem | None = None) -> tuple[PolyRing, dict[str, Frac]]:
    """V1, V2, T as rational functions of (r, s)."""
    omega = primitive_cube_root(field) if omega is None else field(omega)
    ring = PolyRing(field, "r,s")
    r, s = ring.gens
    one = ring.one
    num = r**2 + s
    d1 = r**2 * s * omega + r + s**2 * omega**2
    d2 = r**2 * s * omega**2 + r + s**2 * omega
    V1 = Frac(num, d1)
    V2 = Frac(num, d2)
    T = V1**2 * V2**2 * Frac(r, one) * (V1.inv() + Frac(s * omega, one))
    return ring, {"V1": V1, "V2": V2, "T": T}


def shioda_parametrization_check(field: FieldDesc | None = None, omega: FieldElem | None = None, *,
                                 swap: bool = False, raise_on_failure: bool = True) -> ShiodaCertificate:
    """Substitute the (r, s) parametrization into T^2 + V1^2 V2^2 T + V1^4 V2 + V2^4 V1."""
    field = field or field_make(2, 2)
    if omega is None:
        omega = primitive_cube_root(field)
    omega = field(omega)
    target, vals = shioda_parametrization(field, omega)
    rel_ring = PolyRing(field, "V1,V2,T")
    rel = rel_ring.parse("T^2 + V1^2*V2^2*T + V1^4*V2 + V2^4*V1")
    order = ["V2", "V1", "T"] if swap else ["V1", "V2", "T"]
    num = substitute_fractions(rel, [vals[n] for n in order], target)
    cert = ShiodaCertificate(str(omega), str(num))
    if raise_on_failure and not cert.passed:
        raise VerificationFailed("parametrization does not satisfy the surface relation", cert)
    return cert


# -- the supersingular chart ----------------------------------------------------------------------

def lemma_phi_check(field: FieldDesc | None = None, *, raise_on_failure: bool = True) -> list[IdentityCheck]:
    """Identities for v -> x^2/(z+1), w -> x/(z+1) in k[x, z, u]/(z + z^2 + x^3, u(z+1) - 1)."""
    field = field or field_make(2)
    if field.p != 2:
        raise KummerError("the supersingular chart lives in characteristic 2")
    R = PolyRing(field, "x,z,u")
    x, z, u = R.gens
    ideal = [z + z**2 + x**3, u * (z + 1) - 1]
    gb = buchberger(ideal, GREVLEX, ring=R)
    S = PolyRing(field, "v,w")
    phi = RingMap.from_dict(S, R, {"v": x**2 * u, "w": x * u})
    iota = RingMap.from_dict(R, R, {"x": x * u, "z": z * u, "u": z + 1})
    P = S.parse
    checks = [
        ("phi(w^2+v^2*w+v) = 0", phi(P("w^2 + v^2*w + v"))),
        ("phi(v*w+1) = u", phi(P("v*w + 1")) - u),
        ("phi(v*w+v^3) = z", phi(P("v*w + v^3")) - z),
        ("phi(w*(v*w+v^3+1)) = x", phi(P("w*(v*w + v^3 + 1)")) - x),
        ("iota(phi(v)) = phi(v)", iota(phi(P("v"))) - phi(P("v"))),
        ("iota(phi(w)) = phi(w+v^2)", iota(phi(P("w"))) - phi(P("w + v^2"))),
    ]
    out = [IdentityCheck(name, str(expr), str(gb.normal_form(expr))) for name, expr in checks]
    if raise_on_failure and not all(c.passed for c in out):
        raise VerificationFailed("supersingular chart identity failed", out)
    return out


__all__ = [
    "CurveConfig", "EmbeddingCertificate", "HeavyComputationRefused", "KernelCertificate",
    "KummerError", "MinimalPresentation", "Relation", "RelationSet", "VerificationFailed",
    "closed_form_trace", "curve_presentation", "embedding_dimension", "expected_counts",
    "function_field_identities", "invariant_generators", "kernel_of_psi", "lemma_phi_check",
    "minimal_presentation", "relation_set", "shioda_parametrization_check", "verify_containment",
    "verify_kernel",
]
