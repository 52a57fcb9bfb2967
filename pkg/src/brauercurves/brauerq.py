"""Brauer classes over Q as vectors of local invariants.

A class is a finitely supported map from places of Q to Q/Z whose values
sum to zero; the real place only carries 0 or 1/2.  Over Q period and
index agree, so ``index`` is just ``period``.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from sympy import factorint, isprime

from .groebner import Ideal
from .polyring import Poly, Ring


class ReciprocityError(ValueError):
    """Local invariants do not sum to 0 mod 1."""


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: a finite prime, or the real place when ``prime`` is None."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None:
            p = int(self.prime)
            if p < 2 or not isprime(p):
                raise ValueError(f"{self.prime} is not prime")
            object.__setattr__(self, "prime", p)

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def sort_key(self):
        return (1, 0) if self.prime is None else (0, self.prime)

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)

    @classmethod
    def parse(cls, s) -> "Place":
        if isinstance(s, Place):
            return s
        if isinstance(s, int):
            return cls(s)
        s = str(s).strip().lower()
        if s in ("inf", "infinity", "oo", "∞", "r", "real"):
            return INF
        return cls(int(s))


INF = Place(None)


def _as_rational(x) -> Fraction:
    if isinstance(x, str):
        x = x.strip()
    return Fraction(x)


class BrauerClassQ:
    """An element of Br(Q), stored as reduced invariants in [0, 1)."""

    __slots__ = ("_inv",)

    def __init__(self, invariants: Mapping | Iterable = (), check: bool = True):
        items = invariants.items() if isinstance(invariants, Mapping) else invariants
        inv: dict[Place, Fraction] = {}
        for place, value in items:
            place = Place.parse(place)
            v = _as_rational(value) % 1
            if v:
                inv[place] = (inv.get(place, Fraction(0)) + v) % 1
        inv = {p: v for p, v in inv.items() if v}
        if INF in inv and inv[INF] != Fraction(1, 2):
            raise ValueError(f"invariant at the real place must be 0 or 1/2, got {inv[INF]}")
        if check and sum(inv.values(), Fraction(0)) % 1 != 0:
            raise ReciprocityError(
                f"invariants sum to {sum(inv.values(), Fraction(0)) % 1} mod 1, not 0")
        self._inv = dict(sorted(inv.items(), key=lambda kv: kv[0].sort_key()))

    @classmethod
    def zero(cls) -> "BrauerClassQ":
        return cls({})

    @property
    def invariants(self) -> dict[Place, Fraction]:
        return dict(self._inv)

    def invariant(self, place) -> Fraction:
        return self._inv.get(Place.parse(place), Fraction(0))

    def support(self) -> list[Place]:
        return list(self._inv)

    def is_zero(self) -> bool:
        return not self._inv

    def __add__(self, other: "BrauerClassQ") -> "BrauerClassQ":
        return class_combine(self, other, 1, 1)

    def __sub__(self, other: "BrauerClassQ") -> "BrauerClassQ":
        return class_combine(self, other, 1, -1)

    def __neg__(self):
        return class_combine(self, self, -1, 0)

    def __mul__(self, k: int) -> "BrauerClassQ":
        if not isinstance(k, int):
            return NotImplemented
        return class_combine(self, self, k, 0)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BrauerClassQ):
            return NotImplemented
        return self._inv == other._inv

    def __hash__(self):
        return hash(tuple(self._inv.items()))

    def __repr__(self):
        body = ", ".join(f"{p}: {v}" for p, v in self._inv.items())
        return "BrauerClassQ({" + body + "})"

    def to_json(self) -> dict:
        return {"invariants": [{"place": str(p), "num": v.numerator, "den": v.denominator}
                               for p, v in self._inv.items()]}

    @classmethod
    def from_json(cls, data) -> "BrauerClassQ":
        if isinstance(data, str):
            return parse_class(data)
        if isinstance(data, Mapping) and "invariants" in data:
            entries = data["invariants"]
            return cls((e["place"], Fraction(int(e["num"]), int(e["den"]))) for e in entries)
        if isinstance(data, Mapping):
            return cls(data)
        raise ValueError(f"cannot read a Brauer class from {data!r}")


_LOOSE_ENTRY = re.compile(r"""\s*["']?([A-Za-z∞]+|\d+)["']?\s*:\s*["']?(-?\d+(?:\s*/\s*\d+)?)["']?\s*""")


def parse_class(text: str) -> BrauerClassQ:
    """Read a class from JSON or the loose form ``{2:1/5, 3:4/5}``."""
    text = text.strip()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if data is not None:
        if isinstance(data, Mapping) and "invariants" in data:
            return BrauerClassQ.from_json(data)
        if isinstance(data, Mapping):
            return BrauerClassQ({k: _as_rational(str(v)) for k, v in data.items()})
        raise ValueError(f"unsupported invariants JSON: {text!r}")
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"cannot parse invariants {text!r}")
    body = text[1:-1].strip()
    entries = {}
    if body:
        for chunk in body.split(","):
            m = _LOOSE_ENTRY.fullmatch(chunk)
            if not m:
                raise ValueError(f"cannot parse invariant entry {chunk!r}")
            entries[m.group(1)] = Fraction(m.group(2).replace(" ", ""))
    return BrauerClassQ(entries)


# --- Hilbert symbols ------------------------------------------------------


def _squarefree_integer(x: Fraction) -> int:
    """An integer in the same square class as the rational ``x``."""
    return x.numerator * x.denominator


def _valuation(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, v) -> int:
    """Local Hilbert symbol (a, b)_v in {+1, -1}."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    v = Place.parse(v)
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.prime
    A, B = _squarefree_integer(a), _squarefree_integer(b)
    alpha, u = _valuation(A, p)
    beta, w = _valuation(B, p)
    if p == 2:
        def eps(t):
            return ((t - 1) // 2) % 2

        def omega(t):
            return ((t * t - 1) // 8) % 2

        e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre(u, p) ** beta * legendre(w, p) ** alpha


@dataclass(frozen=True)
class QuaternionPair:
    """The quaternion algebra (a, b)_Q."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if a == 0 or b == 0:
            raise ValueError("quaternion algebra needs nonzero a, b")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, text: str) -> "QuaternionPair":
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {text!r}")
        return cls(Fraction(parts[0]), Fraction(parts[1]))

    def relevant_places(self) -> list[Place]:
        primes = {2}
        for x in (self.a, self.b):
            for n in (x.numerator, x.denominator):
                primes.update(factorint(abs(n)))
        primes.discard(1)
        return [INF] + [Place(p) for p in sorted(primes)]

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}


def quaternion_class(q: QuaternionPair) -> BrauerClassQ:
    """Class of (a, b): invariant 1/2 exactly where the Hilbert symbol is -1."""
    inv = {v: Fraction(1, 2) for v in q.relevant_places()
           if hilbert_symbol(q.a, q.b, v) == -1}
    return BrauerClassQ(inv)


def class_combine(c1: BrauerClassQ, c2: BrauerClassQ, k1: int, k2: int) -> BrauerClassQ:
    """k1*c1 + k2*c2, placewise mod 1."""
    out: dict[Place, Fraction] = {}
    for c, k in ((c1, k1), (c2, k2)):
        for p, v in c._inv.items():
            out[p] = out.get(p, Fraction(0)) + k * v
    return BrauerClassQ(out)


def period(c: BrauerClassQ) -> int:
    n = 1
    for v in c._inv.values():
        n = math.lcm(n, v.denominator)
    return n


def index(c: BrauerClassQ) -> int:
    # period = index over number fields
    return period(c)


def sb_dimension(c: BrauerClassQ) -> int:
    """Dimension of the Severi-Brauer variety of minimal degree for ``c``."""
    return index(c) - 1


def conic_model(q: QuaternionPair) -> Ideal:
    """The conic a*x^2 + b*y^2 - z^2 = 0 in P^2, integer coefficients."""
    ring = Ring(("x", "y", "z"))
    x, y, z = ring.gens()
    form = (x * x).scale(q.a) + (y * y).scale(q.b) - z * z
    return Ideal(ring, (form.integer_cleared(),))


def random_class(period_: int, support: Iterable, seed: int) -> BrauerClassQ:
    """A class of exactly the given period supported on ``support``."""
    if period_ < 2:
        raise ValueError("period must be at least 2")
    places = sorted({Place.parse(p) for p in support}, key=Place.sort_key)
    finite = [p for p in places if not p.is_real]
    real = INF in places and period_ % 2 == 0
    if len(places) < 2 or not finite or (len(finite) == 1 and not (real and period_ == 2)):
        raise ValueError(f"no class of period {period_} is supported on {[str(p) for p in places]}")
    rng = random.Random(seed)
    if len(finite) == 1:
        return BrauerClassQ({INF: Fraction(1, 2), finite[0]: Fraction(1, 2)})
    units = [k for k in range(1, period_) if math.gcd(k, period_) == 1]
    inv = {finite[0]: Fraction(rng.choice(units), period_)}
    for p in finite[1:-1]:
        inv[p] = Fraction(rng.randrange(period_), period_)
    if real:
        inv[INF] = Fraction(rng.randrange(2), 2)
    inv[finite[-1]] = -sum(inv.values(), Fraction(0))
    return BrauerClassQ(inv)
