"""Truncated power series and the formal normal forms of the g = 2 singularities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .field import FieldDesc, FieldElem, field_make
from .kummer import CurveConfig, VerificationFailed, minimal_presentation, relation_set
from .poly import MultiPoly, PolyRing


class SeriesError(ValueError):
    pass


DEFAULT_ORDER = 12


class TruncatedSeries:
    """Element of k[[vars]] known modulo total degree ``N``."""

    __slots__ = ("ring", "N", "poly")

    def __init__(self, ring: PolyRing, N: int, poly: MultiPoly | None = None):
        if N < 1:
            raise SeriesError("truncation order must be positive")
        self.ring = ring
        self.N = N
        self.poly = (poly if poly is not None else ring.zero).truncate(N)

    @classmethod
    def of(cls, f: MultiPoly, N: int) -> "TruncatedSeries":
        return cls(f.ring, N, f)

    @classmethod
    def parse(cls, ring: PolyRing, text: str, N: int) -> "TruncatedSeries":
        return cls(ring, N, ring.parse(text))

    def _wrap(self, f: MultiPoly) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.N, f)

    def _check(self, other: "TruncatedSeries") -> None:
        if other.ring != self.ring or other.N != self.N:
            raise SeriesError("series live in different rings or precisions")

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, MultiPoly):
            return self._wrap(other)
        return self._wrap(self.ring.const(other))

    def __add__(self, other):
        return self._wrap(self.poly + self._lift(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.poly - self._lift(other).poly)

    def __neg__(self):
        return self._wrap(-self.poly)

    def __mul__(self, other):
        o = self._lift(other)
        return self._wrap(_mul_trunc(self.poly, o.poly, self.N))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert_unit() ** (-n)
        out = self._wrap(self.ring.one)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.N == other.N and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.ring, self.N, self.poly))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def constant_term(self) -> FieldElem:
        return self.poly.constant_term()

    def to_text(self) -> str:
        return f"{self.poly} + O(deg {self.N})"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.to_text()!r})"

    def compose(self, images: Mapping[str, "TruncatedSeries"] | Sequence["TruncatedSeries"]) -> "TruncatedSeries":
        """Substitute series (zero constant term) for the variables.

        Unlisted variables are left alone.  The result lives in the ring and
        precision of the images.
        """
        names = self.ring.names
        if not isinstance(images, Mapping):
            images = dict(zip(names, images))
        if not images:
            return self
        first = next(iter(images.values()))
        target = first.ring
        N = first.N
        subs = []
        for n in names:
            s = images.get(n)
            if s is None:
                s = TruncatedSeries(target, N, target.var(n))
            elif s.ring != target or s.N != N:
                raise SeriesError("substituted series must share ring and precision")
            if s.constant_term():
                raise SeriesError(f"composition needs zero constant term for {n}")
            subs.append(s.poly)
        powers: list[dict[int, MultiPoly]] = [{0: target.one} for _ in names]

        def power(i: int, k: int) -> MultiPoly:
            table = powers[i]
            if k not in table:
                table[k] = _mul_trunc(power(i, k - 1), subs[i], N)
            return table[k]

        acc = target.zero
        for e, c in self.poly.terms.items():
            term = target.const(FieldElem(target.desc, c))
            for i, k in enumerate(e):
                if k:
                    term = _mul_trunc(term, power(i, k), N)
                    if term.is_zero():
                        break
            acc = acc + term
        return TruncatedSeries(target, N, acc)

    def invert_unit(self) -> "TruncatedSeries":
        """Multiplicative inverse by Newton iteration ``v <- v - v (u v - 1)``."""
        c0 = self.constant_term()
        if not c0:
            raise SeriesError("series with zero constant term is not a unit")
        v = self._wrap(self.ring.const(c0.inv()))
        prec = 1
        while prec < self.N:
            prec = min(2 * prec, self.N)
            uv = _mul_trunc(self.poly, v.poly, prec)
            v = self._wrap(v.poly - _mul_trunc(v.poly, uv - 1, prec))
        return v

    def derivative(self, var=0) -> "TruncatedSeries":
        return self._wrap(self.poly.derivative(var))

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse of a univariate series: f(g(x)) = x."""
        if self.ring.arity != 1:
            raise SeriesError("reversion is only defined for univariate series")
        if self.constant_term():
            raise SeriesError("reversion needs zero constant term")
        (x,) = self.ring.gens
        a1 = self.poly.coefficient((1,))
        if not a1:
            raise SeriesError("reversion needs a nonzero linear coefficient")
        g = self._wrap(x.scale(a1.inv()))
        df = self.derivative()
        target = self._wrap(x)
        for _ in range(self.N.bit_length() + 1):
            err = self.compose([g]) - target
            if err.is_zero():
                return g
            g = g - err * df.compose([g]).invert_unit()
        if not (self.compose([g]) - target).is_zero():
            raise SeriesError("reversion did not converge")
        return g


def _mul_trunc(a: MultiPoly, b: MultiPoly, N: int) -> MultiPoly:
    """Product of ``a`` and ``b`` with terms of total degree >= N discarded."""
    if a.is_zero() or b.is_zero():
        return a.ring.zero
    desc = a.desc
    add, mul = desc.add, desc.mul
    out: dict = {}
    bt = [(e, sum(e), c) for e, c in b.terms.items()]
    for ea, ca in a.terms.items():
        da = sum(ea)
        if da >= N:
            continue
        for eb, db, cb in bt:
            if da + db >= N:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            s = add(out.get(e, 0), mul(ca, cb))
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return MultiPoly(a.ring, out)


# -- g = 2 normal forms ---------------------------------------------------------------------

NORMAL_FORMS = {
    2: ("D4^1", "T^2 + X1*X2*T + X1^2*X2 + X1*X2^2"),
    1: ("D8^2", "T^2 + X1*V2^2*T + X1^2*V2 + V2^4*X1"),
    0: ("katsura", "T^2 + V1^2*V2^2*T + V1^4*V2 + V2^4*V1"),
}


@dataclass
class NormalFormCertificate:
    r: int
    j: tuple[str, ...]
    order: int
    singularity: str
    relation: str
    normal_form: str
    unit: str
    difference: str

    @property
    def passed(self) -> bool:
        return self.difference == "0"

    def to_dict(self) -> dict:
        return {
            "r": self.r, "j": list(self.j), "truncation": self.order, "type": self.singularity,
            "relation": self.relation, "normal_form": self.normal_form, "unit_factor": self.unit,
            "difference": self.difference, "passed": self.passed,
        }


def surface_relation(r: int, j: Sequence | None = None, field: FieldDesc | None = None) -> MultiPoly:
    """The single g = 2 relation with T_12 renamed to T."""
    cfg = CurveConfig.make(2, supersingular=2 - r, j=j, field=field)
    mp = minimal_presentation(relation_set(cfg))
    (rel,) = mp.relations
    names = ["T" if n == "T_12" else n for n in mp.ring.names]
    return rel.to_ring(PolyRing(cfg.field, names), rename={"T_12": "T"})


def _unit_series(gamma: FieldElem, ring: PolyRing, N: int) -> TruncatedSeries:
    """U(X) = gamma X^2 + gamma^-2, so that P(X) = X U(X)."""
    (x,) = ring.gens
    return TruncatedSeries(ring, N, x**2 * gamma + ring.const(gamma ** -2))


def verify_normal_form(r: int, j: Sequence | None = None, N: int = DEFAULT_ORDER,
                       field: FieldDesc | None = None, *, raise_on_failure: bool = True) -> NormalFormCertificate:
    """Check f(phi) = unit * f_normal modulo degree ``N`` for the g = 2 relation.

    ``r`` counts ordinary factors.  With U_i = P_i / X_i and psi_i the
    reversion of X -> X U_i(X)^-1 we substitute X_i -> psi_i(X_i) and
    T -> T * prod U_i(psi_i); the unit is prod U_i(psi_i)^2.
    """
    if r not in (0, 1, 2):
        raise SeriesError("r must be 0, 1 or 2")
    if N < 8:
        raise SeriesError("truncation order must be at least 8")
    field = field or field_make(2)
    cfg = CurveConfig.make(2, supersingular=2 - r, j=j, field=field)
    f = surface_relation(r, cfg.j, field)
    label, normal_text = NORMAL_FORMS[r]
    ring = f.ring
    normal = ring.parse(normal_text)
    if r == 0:
        diff = f - normal
        unit = ring.one
    else:
        uni = PolyRing(field, "X")
        images = {}
        unit = TruncatedSeries(ring, N, ring.one)
        for i, gamma in enumerate(cfg.gamma, start=1):
            U = _unit_series(gamma, uni, N)
            x = TruncatedSeries(uni, N, uni.gens[0])
            psi = (x * U.invert_unit()).reversion()
            U_psi = U.compose([psi])
            name = f"X{i}"
            images[name] = TruncatedSeries(ring, N, psi.poly.to_ring(ring, rename={"X": name}))
            unit = unit * TruncatedSeries(ring, N, U_psi.poly.to_ring(ring, rename={"X": name}))
        images["T"] = TruncatedSeries(ring, N, ring.var("T")) * unit
        lhs = TruncatedSeries(ring, N, f).compose(images)
        rhs = unit * unit * TruncatedSeries(ring, N, normal)
        diff = (lhs - rhs).poly
        unit = (unit * unit).poly
    cert = NormalFormCertificate(
        r=r, j=tuple(str(x) for x in cfg.j), order=N, singularity=label, relation=str(f),
        normal_form=str(normal), unit=str(unit), difference=str(diff),
    )
    if raise_on_failure and not cert.passed:
        raise VerificationFailed(f"normal form identity fails for r={r}", cert)
    return cert


__all__ = [
    "DEFAULT_ORDER", "NORMAL_FORMS", "NormalFormCertificate", "SeriesError", "TruncatedSeries",
    "surface_relation", "verify_normal_form",
]
