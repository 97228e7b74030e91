"""Sparse multivariate polynomials over a finite field.

A polynomial is a dict mapping exponent tuples (dense, one entry per roster
variable) to nonzero integer-encoded field coefficients.  Values are
immutable by convention: every operation returns a fresh object.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Mapping, Sequence

from .field import GENERATOR_SYMBOL, FieldDesc, FieldElem, FieldError, _check_same

Monomial = tuple[int, ...]


class PolyError(ValueError):
    """Roster/field mismatch, bad syntax, or an ill-formed ring map."""


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class VarRoster:
    """An ordered sequence of distinct variable names."""

    __slots__ = ("names", "index", "_hash")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for n in names:
            if not _NAME.match(n):
                raise PolyError(f"bad variable name {n!r}")
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self._hash = hash(names)

    @property
    def arity(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, VarRoster) and self.names == other.names)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"VarRoster({', '.join(self.names)})"


class MonomialOrder:
    """lex, grevlex, or a two-block order (grevlex inside each block).

    ``key(exps)`` returns a tuple whose natural ordering is the monomial
    order, so larger key means larger monomial.
    """

    __slots__ = ("kind", "first", "_memo", "_split")

    def __init__(self, kind: str = "grevlex", first: Sequence[int] = ()):
        if kind not in ("lex", "grevlex", "block"):
            raise PolyError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.first = tuple(sorted(first)) if kind == "block" else ()
        self._memo: dict[Monomial, tuple] = {}
        self._split = None

    @classmethod
    def block(cls, first: Iterable[int]) -> "MonomialOrder":
        return cls("block", tuple(first))

    def key(self, e: Monomial) -> tuple:
        k = self._memo.get(e)
        if k is None:
            k = self._compute(e)
            self._memo[e] = k
        return k

    def _compute(self, e: Monomial) -> tuple:
        if self.kind == "lex":
            return e
        if self.kind == "grevlex":
            return (sum(e),) + tuple(-x for x in reversed(e))
        if self._split is None or len(self._split[0]) + len(self._split[1]) != len(e):
            fs = set(self.first)
            self._split = (
                [i for i in range(len(e)) if i in fs],
                [i for i in range(len(e)) if i not in fs],
            )
        a = [e[i] for i in self._split[0]]
        b = [e[i] for i in self._split[1]]
        return (sum(a),) + tuple(-x for x in reversed(a)) + (sum(b),) + tuple(-x for x in reversed(b))

    def neg_key(self, e: Monomial) -> tuple:
        return tuple(-x for x in self.key(e))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def describe(self) -> str:
        if self.kind == "block":
            return f"block{list(self.first)}"
        return self.kind

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and (self.kind, self.first) == (other.kind, other.first)

    def __hash__(self) -> int:
        return hash((self.kind, self.first))

    def __repr__(self) -> str:
        return f"MonomialOrder({self.describe()})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.add, a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(operator.sub, a, b))


class PolyRing:
    """Factory bundling a field and a variable roster.

    >>> R = PolyRing(field_make(2), "x,y")
    >>> x, y = R.gens
    """

    __slots__ = ("desc", "roster", "_zero_exp")

    def __init__(self, desc: FieldDesc, names):
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        roster = names if isinstance(names, VarRoster) else VarRoster(names)
        if desc.k > 1 and GENERATOR_SYMBOL in roster.index:
            raise PolyError(f"variable name {GENERATOR_SYMBOL!r} clashes with the field generator")
        self.desc = desc
        self.roster = roster
        self._zero_exp = (0,) * roster.arity

    @property
    def arity(self) -> int:
        return self.roster.arity

    @property
    def names(self) -> tuple[str, ...]:
        return self.roster.names

    @property
    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    @property
    def one(self) -> "MultiPoly":
        return MultiPoly(self, {self._zero_exp: 1})

    def const(self, c) -> "MultiPoly":
        v = self._coef(c)
        return MultiPoly(self, {self._zero_exp: v} if v else {})

    def _coef(self, c) -> int:
        if isinstance(c, FieldElem):
            _check_same(self.desc, c.desc)
            return c.value
        if isinstance(c, int):
            return self.desc.from_int(c)
        raise PolyError(f"not a coefficient: {c!r}")

    def var(self, name: str) -> "MultiPoly":
        i = self.roster.index.get(name)
        if i is None:
            raise PolyError(f"unknown variable {name!r}")
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.arity)))

    def monomial(self, exps: Monomial, coef=1) -> "MultiPoly":
        v = self._coef(coef)
        return MultiPoly(self, {tuple(exps): v} if v else {})

    @property
    def gens(self) -> tuple["MultiPoly", ...]:
        return tuple(self.var(n) for n in self.names)

    def from_terms(self, terms: Mapping[Monomial, int]) -> "MultiPoly":
        return MultiPoly(self, {tuple(e): c for e, c in terms.items() if c})

    def parse(self, text: str) -> "MultiPoly":
        return _Parser(self, text).parse()

    def monomials_up_to(self, d: int, order: MonomialOrder = GREVLEX) -> list[Monomial]:
        """All exponent vectors of total degree <= d, ascending in ``order``."""
        out: list[Monomial] = []
        n = self.arity

        def rec(prefix: list[int], i: int, left: int):
            if i == n - 1:
                for a in range(left + 1):
                    out.append(tuple(prefix + [a]))
                return
            for a in range(left + 1):
                rec(prefix + [a], i + 1, left - a)

        if n == 0:
            return [()]
        rec([], 0, d)
        out.sort(key=order.key)
        return out

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, PolyRing) and self.desc == other.desc and self.roster == other.roster
        )

    def __hash__(self) -> int:
        return hash((self.desc, self.roster))

    def __repr__(self) -> str:
        return f"PolyRing({self.desc!r}, {', '.join(self.names)})"


def _same_ring(a: PolyRing, b: PolyRing) -> None:
    if a is not b and a != b:
        raise PolyError(f"ring mismatch: {a!r} vs {b!r}")


class MultiPoly:
    """Element of ``ring`` with terms ``{exponents: coefficient}``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[Monomial, int]):
        self.ring = ring
        self.terms = terms

    # short aliases
    @property
    def roster(self) -> VarRoster:
        return self.ring.roster

    @property
    def desc(self) -> FieldDesc:
        return self.ring.desc

    # -- arithmetic -----------------------------------------------------------
    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            _same_ring(self.ring, other.ring)
            return other
        if isinstance(other, (int, FieldElem)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        add = self.ring.desc.add
        res = dict(self.terms)
        for e, c in other.terms.items():
            v = res.get(e)
            if v is None:
                res[e] = c
            else:
                s = add(v, c)
                if s:
                    res[e] = s
                else:
                    del res[e]
        return MultiPoly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        if self.ring.desc.p == 2:
            return self
        neg = self.ring.desc.neg
        return MultiPoly(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        v = self.ring._coef(c)
        if not v:
            return self.ring.zero
        if v == 1:
            return self
        mul = self.ring.desc.mul
        return MultiPoly(self.ring, {e: mul(v, x) for e, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly(self.ring, _mul_terms(self.ring.desc, self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a nonnegative integer")
        p = self.ring.desc.p
        result = self.ring.one
        base = self
        # base-p digits, with p-th powers via Frobenius
        while n:
            n, digit = divmod(n, p)
            for _ in range(digit):
                result = result * base
            if n:
                base = base.frobenius()
        return result

    def frobenius(self) -> "MultiPoly":
        """The p-th power, computed termwise (valid in characteristic p)."""
        d = self.ring.desc
        p = d.p
        return MultiPoly(
            self.ring,
            {tuple(x * p for x in e): d.pow(c, p) for e, c in self.terms.items()},
        )

    # -- inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int | None:
        """Total degree; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def degree_in(self, var) -> int | None:
        i = var if isinstance(var, int) else self.ring.roster.index[var]
        if not self.terms:
            return None
        return max(e[i] for e in self.terms)

    def coefficient(self, exps: Monomial) -> FieldElem:
        return FieldElem(self.ring.desc, self.terms.get(tuple(exps), 0))

    def constant_term(self) -> FieldElem:
        return self.coefficient(self.ring._zero_exp)

    def linear_part(self) -> dict[int, int]:
        """Variable index -> coefficient of that variable."""
        out = {}
        for e, c in self.terms.items():
            if sum(e) == 1:
                out[e.index(1)] = c
        return out

    def variables(self) -> set[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return used

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise PolyError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> FieldElem:
        return self.coefficient(self.leading_monomial(order))

    def monic(self, order: MonomialOrder = GREVLEX) -> "MultiPoly":
        if not self.terms:
            return self
        lc = self.terms[self.leading_monomial(order)]
        return self.scale(FieldElem(self.ring.desc, self.ring.desc.inv(lc)))

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, n: int) -> "MultiPoly":
        """Drop all terms of total degree >= n."""
        return MultiPoly(self.ring, {e: c for e, c in self.terms.items() if sum(e) < n})

    def evaluate(self, point: Sequence) -> FieldElem:
        d = self.ring.desc
        vals = [self.ring._coef(v) for v in point]
        acc = 0
        for e, c in self.terms.items():
            t = c
            for v, x in zip(vals, e):
                if x:
                    t = d.mul(t, d.pow(v, x))
            acc = d.add(acc, t)
        return FieldElem(d, acc)

    def derivative(self, var) -> "MultiPoly":
        i = var if isinstance(var, int) else self.ring.roster.index[var]
        d = self.ring.desc
        res: dict[Monomial, int] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            v = d.mul(c, d.from_int(e[i]))
            if v:
                ne = list(e)
                ne[i] -= 1
                res[tuple(ne)] = v
        return MultiPoly(self.ring, res)

    def to_ring(self, ring: PolyRing, rename: Mapping[str, str] | None = None) -> "MultiPoly":
        """Re-home into ``ring`` matching variables by name (optionally renamed)."""
        _check_same(self.ring.desc, ring.desc)
        rename = rename or {}
        pos = []
        for i, n in enumerate(self.ring.names):
            target = ring.roster.index.get(rename.get(n, n))
            pos.append(target)
        res: dict[Monomial, int] = {}
        for e, c in self.terms.items():
            ne = [0] * ring.arity
            for i, x in enumerate(e):
                if x:
                    if pos[i] is None:
                        raise PolyError(f"variable {self.ring.names[i]!r} missing from {ring!r}")
                    ne[pos[i]] += x
            res[tuple(ne)] = c
        return MultiPoly(ring, res)

    # -- comparison / text ----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElem)):
            other = self.ring.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def to_text(self, order: MonomialOrder = GREVLEX) -> str:
        return format_poly(self, order)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _mul_terms(desc: FieldDesc, a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    res: dict[Monomial, int] = {}
    add = operator.add
    if desc.is_gf2:
        for eb in b:
            for ea in a:
                e = tuple(map(add, ea, eb))
                if e in res:
                    del res[e]
                else:
                    res[e] = 1
        return res
    fadd, fmul = desc.add, desc.mul
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(map(add, ea, eb))
            c = fmul(ca, cb)
            v = res.get(e)
            if v is None:
                res[e] = c
            else:
                s = fadd(v, c)
                if s:
                    res[e] = s
                else:
                    del res[e]
    return res


def poly_sum(polys: Iterable[MultiPoly], ring: PolyRing) -> MultiPoly:
    acc = ring.zero
    for f in polys:
        acc = acc + f
    return acc


def poly_prod(polys: Iterable[MultiPoly], ring: PolyRing) -> MultiPoly:
    return reduce(operator.mul, polys, ring.one)


# -- ring maps ----------------------------------------------------------------

@dataclass(frozen=True)
class RingMap:
    """Substitution homomorphism: source variable i -> images[i]."""

    source: PolyRing
    target: PolyRing
    images: tuple[MultiPoly, ...]

    def __post_init__(self):
        if len(self.images) != self.source.arity:
            raise PolyError(
                f"ring map needs {self.source.arity} images, got {len(self.images)}"
            )
        _check_same(self.source.desc, self.target.desc)
        for im in self.images:
            _same_ring(im.ring, self.target)

    @classmethod
    def from_dict(cls, source: PolyRing, target: PolyRing, images: Mapping[str, MultiPoly | str]):
        """Unlisted variables map to the same-named target variable."""
        out = []
        for n in source.names:
            im = images.get(n)
            if im is None:
                im = target.var(n)
            elif isinstance(im, str):
                im = target.parse(im)
            out.append(im)
        return cls(source, target, tuple(out))

    @classmethod
    def identity(cls, ring: PolyRing) -> "RingMap":
        return cls(ring, ring, ring.gens)

    def __call__(self, f: MultiPoly) -> MultiPoly:
        return apply_map(self, f)

    @cached_property
    def _cache(self) -> tuple[list[dict[int, dict]], dict[Monomial, dict]]:
        return [{1: im.terms} for im in self.images], {}

    def _power(self, i: int, n: int) -> dict:
        cache = self._cache[0][i]
        got = cache.get(n)
        if got is None:
            half = self._power(i, n // 2)
            got = _mul_terms(self.target.desc, half, half)
            if n % 2:
                got = _mul_terms(self.target.desc, got, cache[1])
            cache[n] = got
        return got

    def monomial_image(self, e: Monomial) -> dict:
        """Term dict of the image of the monomial ``e`` (cached; do not mutate)."""
        memo = self._cache[1]
        got = memo.get(e)
        if got is None:
            got = {self.target._zero_exp: 1}
            for i, x in enumerate(e):
                if x:
                    got = _mul_terms(self.target.desc, got, self._power(i, x))
                    if not got:
                        break
            memo[e] = got
        return got

    def compose(self, other: "RingMap") -> "RingMap":
        """``self ∘ other`` (apply ``other`` first)."""
        _same_ring(other.target, self.source)
        return RingMap(other.source, self.target, tuple(apply_map(self, im) for im in other.images))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingMap)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.images))


def apply_map(m: RingMap, f: MultiPoly) -> MultiPoly:
    """Substitute the images of ``m`` into ``f``."""
    _same_ring(f.ring, m.source)
    target = m.target
    fadd = target.desc.add
    acc: dict[Monomial, int] = {}
    for e, c in f.terms.items():
        img = m.monomial_image(e)
        if c != 1:
            img = {te: target.desc.mul(c, tc) for te, tc in img.items()}
        for te, tc in img.items():
            v = acc.get(te)
            if v is None:
                acc[te] = tc
            else:
                s = fadd(v, tc)
                if s:
                    acc[te] = s
                else:
                    del acc[te]
    return MultiPoly(target, acc)


def degree_profile(f: MultiPoly, var) -> int | None:
    """Max exponent of ``var`` over the terms of f; ``None`` flags the zero polynomial."""
    return f.degree_in(var)


# -- text format --------------------------------------------------------------

def format_monomial(names: Sequence[str], e: Monomial) -> str:
    parts = []
    for n, x in zip(names, e):
        if x == 1:
            parts.append(n)
        elif x > 1:
            parts.append(f"{n}^{x}")
    return "*".join(parts)


def format_coefficient(desc: FieldDesc, c: int) -> str:
    s = desc.format(c)
    return f"({s})" if " + " in s else s


def format_poly(f: MultiPoly, order: MonomialOrder = GREVLEX) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    desc = f.ring.desc
    out = []
    for e, c in f.sorted_terms(order):
        mono = format_monomial(names, e)
        if not mono:
            out.append(format_coefficient(desc, c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{format_coefficient(desc, c)}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str):
        toks = []
        i = 0
        s = text.rstrip()
        while i < len(s):
            m = _TOKEN.match(s, i)
            if not m or m.end() == i:
                raise PolyError(f"cannot parse {text!r} at position {i}")
            num, ident, op = m.groups()
            if num is not None:
                toks.append(("num", int(num)))
            elif ident is not None:
                toks.append(("id", ident))
            else:
                toks.append(("op", "^" if op == "**" else op))
            i = m.end()
        return toks

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _take(self):
        t = self._peek()
        self.pos += 1
        return t

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise PolyError("empty polynomial text")
        f = self._expr()
        if self.pos != len(self.tokens):
            raise PolyError(f"trailing input in {self.text!r}")
        return f

    def _expr(self) -> MultiPoly:
        f = self._term()
        while self._peek() in (("op", "+"), ("op", "-")):
            _, op = self._take()
            g = self._term()
            f = f + g if op == "+" else f - g
        return f

    def _term(self) -> MultiPoly:
        f = self._factor()
        while self._peek() == ("op", "*"):
            self._take()
            f = f * self._factor()
        return f

    def _factor(self) -> MultiPoly:
        if self._peek() == ("op", "-"):
            self._take()
            return -self._factor()
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            kind, val = self._take()
            if kind != "num":
                raise PolyError(f"exponent must be an integer in {self.text!r}")
            base = base**val
        return base

    def _atom(self) -> MultiPoly:
        kind, val = self._take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "id":
            if val in self.ring.roster.index:
                return self.ring.var(val)
            if val == GENERATOR_SYMBOL and self.ring.desc.k > 1:
                return self.ring.const(self.ring.desc.gen)
            raise PolyError(f"unknown symbol {val!r} in {self.text!r}")
        if (kind, val) == ("op", "("):
            f = self._expr()
            if self._take() != ("op", ")"):
                raise PolyError(f"unbalanced parentheses in {self.text!r}")
            return f
        raise PolyError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(ring: PolyRing, text: str) -> MultiPoly:
    return ring.parse(text)


__all__ = [
    "FieldError", "GREVLEX", "LEX", "Monomial", "MonomialOrder", "MultiPoly", "PolyError",
    "PolyRing", "RingMap", "VarRoster", "apply_map", "degree_profile", "divides",
    "format_poly", "mono_div", "mono_lcm", "mono_mul", "parse_poly", "poly_prod", "poly_sum",
]
