"""Finite fields F_p and F_{p^k} in polynomial-basis representation.

An element of F_{p^k} = F_p[g]/(m(g)) is stored as a plain integer whose
base-p digits are its coefficients: the digit at position i is the
coefficient of g^i.  The arithmetic routines on :class:`FieldDesc` work on
these integers directly; :class:`FieldElem` is the user-facing wrapper.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

MAX_EXTENSION_DEGREE = 16
_TABLE_LIMIT = 1 << 16

# Low-to-high coefficient tuples of monic irreducible polynomials.
DEFAULT_MODULI: dict[int, dict[int, tuple[int, ...]]] = {
    2: {
        1: (0, 1),
        2: (1, 1, 1),
        3: (1, 1, 0, 1),
        4: (1, 1, 0, 0, 1),
        5: (1, 0, 1, 0, 0, 1),
        6: (1, 1, 0, 0, 0, 0, 1),
        7: (1, 1, 0, 0, 0, 0, 0, 1),
        8: (1, 0, 1, 1, 1, 0, 0, 0, 1),
    },
    3: {
        1: (0, 1),
        2: (2, 2, 1),
        3: (1, 2, 0, 1),
        4: (2, 1, 0, 0, 1),
    },
}

GENERATOR_SYMBOL = "g"


class FieldError(ValueError):
    """Invalid field construction or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p as low-to-high coefficient lists ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: tuple[int, ...], p: int) -> list[int]:
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return _pmod(res, m, p)


def _ppowmod(base: list[int], e: int, m: tuple[int, ...], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a = _pmod(a, tuple(b), p)
        a, b = b, a
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    k = len(modulus) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**k, modulus, p) != _pmod(x, modulus, p):
        return False
    for q in _prime_factors(k):
        h = _ppowmod(x, p ** (k // q), modulus, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(list(modulus), _trim(diff), p)
        if len(g) != 1:
            return False
    return True


class FieldDesc:
    """The field F_p[g]/(modulus) of order p**k.

    Instances are immutable and cached by :func:`field_make`; compare them
    with ``==``.  The integer-level methods (``add``, ``mul`` ...) are the
    hot path used by the polynomial layer.
    """

    __slots__ = (
        "p", "k", "modulus", "q", "is_gf2", "_exp", "_log", "_add_table",
        "add", "mul",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        self.is_gf2 = p == 2 and k == 1
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._add_table = None
        if p == 2:
            self.add = int.__xor__
        elif k == 1:
            self.add = self._add_prime
        else:
            self.add = self._add_digits
        if k == 1:
            self.mul = self._mul_prime
        elif self.q <= _TABLE_LIMIT:
            self._build_tables()
            self.mul = self._mul_table
        else:
            self.mul = self._mul_poly

    # -- construction helpers --------------------------------------------
    def _build_tables(self) -> None:
        q = self.q
        for cand in range(2, q):
            exp = [0] * (2 * q)
            log = [0] * q
            x = 1
            ok = True
            for i in range(q - 1):
                if i and x == 1:
                    ok = False
                    break
                exp[i] = x
                log[x] = i
                x = self._mul_poly(x, cand)
            if ok and x == 1:
                for i in range(q - 1, 2 * q):
                    exp[i] = exp[i - (q - 1)]
                self._exp, self._log = exp, log
                return
        raise FieldError("no primitive element found")  # pragma: no cover

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            coeffs = _pmod(coeffs, self.modulus, self.p)
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c % self.p
        return v

    # -- integer-level arithmetic ----------------------------------------
    def _add_prime(self, a: int, b: int) -> int:
        s = a + b
        return s - self.p if s >= self.p else s

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            s = x + y
            if s >= p:
                s -= p
            out += s * place
            place *= p
        return out

    def _mul_prime(self, a: int, b: int) -> int:
        return a * b % self.p

    def _mul_table(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def _mul_poly(self, a: int, b: int) -> int:
        return self.from_coeffs(
            _pmulmod(list(self.to_coeffs(a)), list(self.to_coeffs(b)), self.modulus, self.p)
        )

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self.k == 1:
            return self.p - a
        return self.from_coeffs([-c for c in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + str(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self._log is not None:
            if a == 0:
                return 1 if e == 0 else 0
            return self._exp[self._log[a] * e % (self.q - 1)]
        if self.k == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        return n % self.p

    # -- element-level API -----------------------------------------------
    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            _check_same(self, value.desc)
            return value
        if isinstance(value, str):
            return FieldElem(self, self.parse(value))
        if isinstance(value, int):
            return FieldElem(self, self.from_int(value))
        return FieldElem(self, self.from_coeffs(value))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        """Residue class of the modulus variable."""
        return FieldElem(self, self.from_coeffs([0, 1]))

    def elements(self):
        for v in range(self.q):
            yield FieldElem(self, v)

    # -- text --------------------------------------------------------------
    def format(self, a: int) -> str:
        if a == 0:
            return "0"
        parts = []
        for i, c in enumerate(self.to_coeffs(a)):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            mono = GENERATOR_SYMBOL if i == 1 else f"{GENERATOR_SYMBOL}^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    _TERM = re.compile(
        r"^(?:(?P<c>\d+)\s*\*?\s*)?(?:(?P<g>" + GENERATOR_SYMBOL + r")(?:\s*\^\s*(?P<e>\d+))?)?$"
    )

    def parse(self, text: str) -> int:
        """Parse ``a0 + a1*g + a2*g^2``-style text (``-`` allowed)."""
        s = text.strip()
        if not s:
            raise FieldError("empty field element")
        s = s.replace("-", "+-")
        acc = 0
        for raw in s.split("+"):
            term = raw.strip()
            if not term:
                continue
            sign = 1
            while term.startswith("-"):
                sign = -sign
                term = term[1:].strip()
            m = self._TERM.match(term)
            if not m or (m.group("c") is None and m.group("g") is None):
                raise FieldError(f"cannot parse field element {text!r}")
            c = int(m.group("c")) if m.group("c") is not None else 1
            if m.group("g") is None:
                val = self.from_int(c)
            else:
                if self.k == 1:
                    raise FieldError(f"{GENERATOR_SYMBOL!r} is not defined in a prime field")
                e = int(m.group("e")) if m.group("e") is not None else 1
                val = self.mul(self.from_int(c), self.pow(self.from_coeffs([0, 1]), e))
            acc = self.add(acc, val if sign > 0 else self.neg(val))
        return acc

    def describe(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "modulus": list(self.modulus),
            "modulus_text": self.modulus_text(),
        }

    def modulus_text(self) -> str:
        parts = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i == 0:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FieldDesc) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, {self.modulus_text()})"


def _check_same(a: FieldDesc, b: FieldDesc) -> None:
    if a is not b and a != b:
        raise FieldError(f"mixed fields: {a!r} vs {b!r}")


@lru_cache(maxsize=None)
def _make(p: int, k: int, modulus: tuple[int, ...]) -> FieldDesc:
    return FieldDesc(p, k, modulus)


def field_make(p: int, k: int = 1, modulus=None) -> FieldDesc:
    """Return the validated field of order ``p**k``.

    ``modulus`` is a low-to-high coefficient sequence of a monic irreducible
    polynomial of degree ``k``; when omitted a shipped default is used.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if not isinstance(k, int) or k < 1 or k > MAX_EXTENSION_DEGREE:
        raise FieldError(f"extension degree must lie in [1, {MAX_EXTENSION_DEGREE}], got {k!r}")
    if modulus is None:
        if k == 1:
            modulus = (0, 1)
        else:
            try:
                modulus = DEFAULT_MODULI[p][k]
            except KeyError:
                raise FieldError(f"no default modulus for p={p}, k={k}; supply one") from None
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus must be monic of degree {k}")
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over F_{p}")
    return _make(p, k, modulus)


@dataclass(frozen=True, slots=True)
class FieldElem:
    desc: FieldDesc
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.desc.to_coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            _check_same(self.desc, other.desc)
            return other.value
        if isinstance(other, int):
            return self.desc.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.desc, self.desc.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.desc, self.desc.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.desc, self.desc.sub(b, self.value))

    def __neg__(self):
        return FieldElem(self.desc, self.desc.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.desc, self.desc.mul(self.value, b))

    __rmul__ = __mul__

    def inv(self) -> "FieldElem":
        if self.value == 0:
            raise FieldError("inversion of zero")
        return FieldElem(self.desc, self.desc.inv(self.value))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        if b == 0:
            raise FieldError("division by zero")
        return FieldElem(self.desc, self.desc.mul(self.value, self.desc.inv(b)))

    def __pow__(self, e: int):
        if e < 0 and self.value == 0:
            raise FieldError("inversion of zero")
        return FieldElem(self.desc, self.desc.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == self.desc.from_int(other)
        if isinstance(other, FieldElem):
            return self.desc == other.desc and self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.desc, self.value))

    def __str__(self) -> str:
        return self.desc.format(self.value)

    def __repr__(self) -> str:
        return f"FieldElem({self}, {self.desc!r})"


def field_sqrt(a: FieldElem) -> FieldElem:
    """Square root in characteristic 2 via the inverse Frobenius a^(2^(k-1))."""
    d = a.desc
    if d.p != 2:
        raise FieldError("square roots are only implemented in characteristic 2")
    return FieldElem(d, d.pow(a.value, 2 ** (d.k - 1)))


def primitive_cube_root(desc: FieldDesc) -> FieldElem:
    """Smallest (by integer encoding) element of multiplicative order 3."""
    if (desc.q - 1) % 3:
        raise FieldError(f"{desc!r} contains no primitive cube root of unity")
    for v in range(2, desc.q):
        if desc.pow(v, 3) == 1:
            return FieldElem(desc, v)
    raise FieldError("no cube root found")  # pragma: no cover


def parse_field_spec(char: int, ext: int = 1, modulus: str | None = None) -> FieldDesc:
    """Field from CLI-style flags; ``modulus`` is a comma list, low to high."""
    coeffs = None
    if modulus:
        coeffs = [int(c) for c in modulus.split(",")]
    return field_make(char, ext, coeffs)
