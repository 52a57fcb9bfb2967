"""Exact multivariate polynomials over Q with dense exponent vectors.

Coefficients are :class:`fractions.Fraction`; monomials are tuples of
non-negative ints, one slot per ring variable.  Polynomials are immutable
after construction and carry no global state.
"""

from __future__ import annotations

import enum
import hashlib
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Monomial = tuple


class RingMismatchError(ValueError):
    pass


class MonomialOrder(enum.Enum):
    GREVLEX = "grevlex"
    LEX = "lex"

    def key(self, m: Monomial) -> tuple:
        """Sort key: larger key means larger monomial."""
        if self is MonomialOrder.GREVLEX:
            return _grevlex_key(m)
        return m


@lru_cache(maxsize=1 << 18)
def _grevlex_key(m: Monomial) -> tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


def mono_compare(m1: Sequence[int], m2: Sequence[int],
                 order: MonomialOrder = MonomialOrder.GREVLEX) -> int:
    """Return -1, 0 or 1 as ``m1`` is smaller, equal or larger than ``m2``."""
    if len(m1) != len(m2):
        raise ValueError(f"monomial length mismatch: {len(m1)} vs {len(m2)}")
    k1, k2 = order.key(tuple(m1)), order.key(tuple(m2))
    return (k1 > k2) - (k1 < k2)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree ``d`` in ``n`` variables, grevlex-descending."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_grevlex_key, reverse=True)
    return out


@dataclass(frozen=True)
class Ring:
    """A polynomial ring Q[names...]."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def projective(cls, n: int, prefix: str = "x") -> "Ring":
        """Homogeneous coordinate ring of P^n: variables x0..xn."""
        return cls(tuple(f"{prefix}{i}" for i in range(n + 1)))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: Fraction(c)})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def __str__(self):
        return "Q[" + ", ".join(self.names) + "]"


class Poly:
    """An immutable polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, object] | None = None,
                 homogeneous: bool = False):
        n = ring.nvars
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError(f"monomial {m} does not have {n} slots")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.ring = ring
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None
        if homogeneous and not self.is_homogeneous():
            raise ValueError("polynomial flagged homogeneous has mixed degrees")

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # --- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Poly._raw(self.ring, {m: c * v for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c=1) -> "Poly":
        c = Fraction(c)
        return Poly._raw(self.ring, {mono_mul(m, mono): c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # --- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def sorted_terms(self, order: MonomialOrder = MonomialOrder.GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> "Poly":
        return self.scale(1 / self.leading_coefficient(order))

    def diff(self, i: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Poly._raw(self.ring, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t *= Fraction(x) ** e
            total += t
        return total

    def integer_cleared(self) -> "Poly":
        """Scale by the lcm of the coefficient denominators."""
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return self.scale(den)

    def primitive(self) -> "Poly":
        """Integer multiple with coprime coefficients and positive grevlex-leading coefficient."""
        if not self.terms:
            return self
        p = self.integer_cleared()
        g = 0
        for c in p.terms.values():
            g = math.gcd(g, c.numerator)
        if p.leading_coefficient() < 0:
            g = -g
        return p.scale(Fraction(1, g))

    def to_text(self) -> str:
        return format_poly(self)

    def __str__(self):
        return format_poly(self, clear=False)

    def __repr__(self):
        return f"Poly({format_poly(self, clear=False)!r})"


# --- canonical text form ---------------------------------------------------


def _format_monomial(names, m) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly, clear: bool = True) -> str:
    """Canonical text: grevlex-descending terms, e.g. ``3*x0^2*x1 - x2^3``.

    With ``clear`` the polynomial is first scaled to integer coefficients.
    """
    if clear:
        p = p.integer_cleared()
    if not p.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_monomial(p.ring.names, m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse the canonical text form (also accepts ``p/q`` coefficients)."""
    index = {name: i for i, name in enumerate(ring.names)}
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict = {}
    pos = 0
    while pos < len(s):
        match = _TERM_RE.match(s, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, body = match.group(1), match.group(2).strip()
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        if pos > 0 and sign is None:
            raise ValueError(f"missing operator in {text!r}")
        pos = match.end()
        coeff = Fraction(1)
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            name, _, e = factor.partition("^")
            if name not in index:
                raise ValueError(f"unknown variable {name!r} for ring {ring}")
            exps[index[name]] += int(e) if e else 1
        if sign == "-":
            coeff = -coeff
        m = tuple(exps)
        terms[m] = terms.get(m, 0) + coeff
    return Poly(ring, terms)


# --- random sampling -------------------------------------------------------


def derive_seed(seed: int, *path) -> int:
    """Deterministic 64-bit child seed from ``seed`` and a label path."""
    h = hashlib.blake2b(repr((int(seed),) + tuple(path)).encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def random_form(degree: int, ring: Ring, height: int = 3, seed: int = 0) -> Poly:
    """A homogeneous form with integer coefficients uniform in [-height, height].

    Deterministic in ``seed``; never identically zero.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if height < 1:
        raise ValueError("height must be positive")
    rng = random.Random(seed)
    monos = monomials_of_degree(ring.nvars, degree)
    coeffs = [rng.randint(-height, height) for _ in monos]
    while not any(coeffs):
        coeffs[rng.randrange(len(coeffs))] = rng.randint(-height, height)
    return Poly(ring, dict(zip(monos, coeffs)))


def random_linear_forms(count: int, ring: Ring, height: int, seed: int) -> list[Poly]:
    return [random_form(1, ring, height, derive_seed(seed, "linear", i)) for i in range(count)]


def poly_from_coeffs(ring: Ring, items: Iterable[tuple[Monomial, object]]) -> Poly:
    return Poly(ring, dict(items))


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    """Functional form of ``p op q`` for ``op`` in {add, sub, mul}."""
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")
