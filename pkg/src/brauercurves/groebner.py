"""Gröbner bases, Hilbert polynomials and Jacobian smoothness checks.

Everything here works over Q for homogeneous ideals.  Buchberger runs on
primitive integer polynomials internally (fraction-free reduction with
content removal) and returns a reduced, monic basis over Q.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .polyring import (
    MonomialOrder,
    Poly,
    Ring,
    RingMismatchError,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_PAIR_BUDGET = 20_000


class GroebnerBudgetError(RuntimeError):
    """Buchberger exceeded its pair budget; no basis was produced."""


class CodimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Ideal:
    """A homogeneous ideal given by generators (zero generators are dropped)."""

    ring: Ring
    generators: tuple[Poly, ...] = ()

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError(f"generator in {g.ring}, ideal in {self.ring}")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, *gens: Poly) -> "Ideal":
        if not gens:
            raise ValueError("use Ideal(ring) for the zero ideal")
        return cls(gens[0].ring, tuple(gens))

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, self.generators + other.generators)


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    basis: tuple[Poly, ...]
    order: MonomialOrder = MonomialOrder.GREVLEX
    reduced: bool = True
    pairs_processed: int = 0

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.basis]

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


# --- integer polynomial kernel ----------------------------------------------
# An "ipoly" is a dict monomial -> nonzero int.


def _heap_key(order: MonomialOrder):
    if order is MonomialOrder.GREVLEX:
        return lambda m: (-sum(m), m[::-1])
    return lambda m: tuple(-e for e in m)


def _to_ipoly(p: Poly) -> tuple[dict, int]:
    """Return (integer dict, D) with p = ipoly / D."""
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return {m: int(c * den) for m, c in p.terms.items()}, den


def _content(f: dict) -> int:
    g = 0
    for c in f.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _primitive(f: dict) -> dict:
    g = _content(f)
    if g > 1:
        return {m: c // g for m, c in f.items()}
    return f


def _leading(f: dict, hkey) -> tuple:
    return min(f, key=hkey)


class _Reducer:
    """Fraction-free multivariate division against a list of (lm, ipoly)."""

    def __init__(self, order: MonomialOrder):
        self.hkey = _heap_key(order)

    def reduce(self, f: dict, basis: Sequence[tuple[tuple, dict]], full: bool = True):
        """Return (r, s) with s*f - r in the ideal of ``basis`` and r reduced.

        ``s`` is a nonzero rational scale factor (as a Fraction).
        """
        hkey = self.hkey
        f = dict(f)
        heap = [(hkey(m), m) for m in f]
        heapq.heapify(heap)
        r: dict = {}
        scale = Fraction(1)
        steps = 0
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            for lm, g in basis:
                if mono_divides(lm, m):
                    break
            else:
                r[m] = c
                if not full:
                    # top-reduced: keep the tail as is
                    r.update(f)
                    break
                continue
            lc = g[lm]
            d = math.gcd(lc, c)
            a, b = lc // d, c // d
            if a != 1:
                for k in f:
                    f[k] *= a
                for k in r:
                    r[k] *= a
                scale *= a
            q = mono_div(m, lm)
            for gm, gc in g.items():
                if gm == lm:
                    continue
                nm = tuple(x + y for x, y in zip(gm, q))
                old = f.get(nm)
                if old is None:
                    f[nm] = -b * gc
                    heapq.heappush(heap, (hkey(nm), nm))
                else:
                    v = old - b * gc
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
            steps += 1
            if steps % 16 == 0:
                g_all = math.gcd(_content(f), _content(r)) if (f or r) else 1
                if g_all > 1:
                    for k in f:
                        f[k] //= g_all
                    for k in r:
                        r[k] //= g_all
                    scale /= g_all
        g_all = _content(r)
        if g_all > 1:
            r = {k: v // g_all for k, v in r.items()}
            scale /= g_all
        return r, scale


def _spoly(f: tuple, g: tuple) -> dict:
    (lmf, pf), (lmg, pg) = f, g
    L = mono_lcm(lmf, lmg)
    cf, cg = pf[lmf], pg[lmg]
    d = math.gcd(cf, cg)
    a, b = cg // d, cf // d
    qf, qg = mono_div(L, lmf), mono_div(L, lmg)
    out: dict = {}
    for m, c in pf.items():
        out[mono_mul(m, qf)] = a * c
    for m, c in pg.items():
        nm = mono_mul(m, qg)
        v = out.get(nm, 0) - b * c
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def buchberger(ideal: Ideal, order: MonomialOrder = MonomialOrder.GREVLEX,
               pair_budget: int = DEFAULT_PAIR_BUDGET) -> GroebnerBasis:
    """Reduced Gröbner basis of a homogeneous ideal.

    Normal selection strategy with the Gebauer-Möller criteria (which
    include the coprime leading-term criterion).  Input generators are queued
    by degree alongside S-pairs, so the basis grows degree by degree.
    Raises GroebnerBudgetError after ``pair_budget`` processed pairs.
    """
    ring = ideal.ring
    hkey = _heap_key(order)
    reducer = _Reducer(order)
    G: list[tuple[tuple, dict]] = []
    queue: list = []
    live: set = set()
    tick = itertools.count()

    for idx, gen in enumerate(ideal.generators):
        ip, _ = _to_ipoly(gen)
        ip = _primitive(ip)
        lm = _leading(ip, hkey)
        heapq.heappush(queue, (sum(lm), hkey(lm), next(tick), "gen", ip))

    def add(h: dict):
        lm = _leading(h, hkey)
        k = len(G)
        lcms = [mono_lcm(glm, lm) for glm, _ in G]
        # criterion B on existing pairs
        for pair in list(live):
            i, j = pair
            L = mono_lcm(G[i][0], G[j][0])
            if mono_divides(lm, L) and lcms[i] != L and lcms[j] != L:
                live.discard(pair)
        # criteria M and F, then the product criterion per lcm class
        by_lcm: dict = {}
        for i, L in enumerate(lcms):
            by_lcm.setdefault(L, []).append(i)
        keep = []
        for L, idxs in by_lcm.items():
            if any(L2 != L and mono_divides(L2, L) for L2 in by_lcm):
                continue
            if any(L == mono_mul(G[i][0], lm) for i in idxs):
                continue
            keep.append((min(idxs), L))
        G.append((lm, h))
        for i, L in keep:
            live.add((i, k))
            heapq.heappush(queue, (sum(L), hkey(L), next(tick), "pair", (i, k)))

    processed = 0
    while queue:
        _, _, _, kind, payload = heapq.heappop(queue)
        if kind == "pair":
            if payload not in live:
                continue
            live.discard(payload)
            processed += 1
            if processed > pair_budget:
                raise GroebnerBudgetError(
                    f"Buchberger exceeded pair budget {pair_budget}")
            i, j = payload
            f = _spoly(G[i], G[j])
        else:
            f = payload
        if not f:
            continue
        r, _ = reducer.reduce(f, G, full=True)
        if r:
            add(r)

    basis = _reduce_basis(G, reducer, hkey)
    polys = []
    for lm, ip in basis:
        lc = ip[lm]
        polys.append(Poly._raw(ring, {m: Fraction(c, lc) for m, c in ip.items()}))
    polys.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return GroebnerBasis(ring, tuple(polys), order, True, processed)


def _reduce_basis(G, reducer: _Reducer, hkey):
    """Minimalize, then tail-reduce each element against the others."""
    minimal = []
    for idx, (lm, p) in enumerate(G):
        if any(j != idx and mono_divides(olm, lm) and (olm != lm or j < idx)
               for j, (olm, _) in enumerate(G)):
            continue
        minimal.append((lm, p))
    out = []
    for idx, (lm, p) in enumerate(minimal):
        others = [x for j, x in enumerate(minimal) if j != idx]
        r, _ = reducer.reduce(p, others, full=True)
        # leading monomial is not divisible by any other leading monomial
        out.append((_leading(r, hkey), r))
    return out


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    """Fully reduced remainder of ``p`` modulo ``gb``."""
    if p.ring != gb.ring:
        raise RingMismatchError(f"{p.ring} vs {gb.ring}")
    if p.is_zero():
        return p
    ip, den = _to_ipoly(p)
    hkey = _heap_key(gb.order)
    basis = []
    for g in gb.basis:
        ig, _ = _to_ipoly(g)
        basis.append((_leading(ig, hkey), ig))
    r, scale = _Reducer(gb.order).reduce(ip, basis, full=True)
    factor = 1 / (scale * den)
    return Poly._raw(p.ring, {m: c * factor for m, c in r.items()})


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder = MonomialOrder.GREVLEX) -> Poly:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    L = mono_lcm(lf, lg)
    return (f.mul_monomial(mono_div(L, lf), 1 / f.terms[lf])
            - g.mul_monomial(mono_div(L, lg), 1 / g.terms[lg]))


# --- Hilbert series of monomial ideals ---------------------------------------


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _minimalize(monos) -> frozenset:
    ms = sorted(set(monos), key=sum)
    kept: list = []
    for m in ms:
        if not any(mono_divides(k, m) for k in kept):
            kept.append(m)
    return frozenset(kept)


@lru_cache(maxsize=1 << 16)
def _numerator(gens: frozenset) -> tuple:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of S/(gens)."""
    if not gens:
        return (1,)
    gl = list(gens)
    if any(not any(m) for m in gl):
        return (0,)
    nv = len(gl[0])
    counts = [sum(1 for m in gl if m[i]) for i in range(nv)]
    if max(counts) <= 1:
        out = [1]
        for m in gl:
            d = sum(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    var = max(range(nv), key=lambda i: counts[i])
    exps = sorted(m[var] for m in gl if m[var])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == var else 0 for i in range(nv))
    plus = _minimalize(gl + [pivot])
    colon = _minimalize(tuple(max(0, a - b) for a, b in zip(m, pivot)) for m in gl)
    left = list(_numerator(plus))
    right = [0] * e + list(_numerator(colon))
    return tuple(_poly_add(left, right))


def hilbert_numerator(leading_monomials, nvars: int) -> list[int]:
    gens = _minimalize(tuple(m) for m in leading_monomials)
    if any(len(m) != nvars for m in gens):
        raise ValueError("monomial length mismatch")
    num = list(_numerator(gens))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def _binomial_poly(shift: int, k: int) -> list[Fraction]:
    """Coefficients (ascending in t) of C(t + shift, k) as a polynomial in t."""
    out = [Fraction(1)]
    for i in range(k):
        out = _poly_mul(out, [Fraction(shift - i), Fraction(1)])
    fact = math.factorial(k)
    return [Fraction(c) / fact for c in out]


@dataclass(frozen=True)
class HilbertData:
    """Hilbert polynomial and derived invariants of Proj(S/I).

    ``hilbert_polynomial`` lists coefficients in ascending powers of t.
    """

    hilbert_polynomial: tuple[Fraction, ...]
    scheme_dimension: int
    degree: int | None
    arithmetic_genus: int | None
    numerator: tuple[int, ...] = field(repr=False, default=(1,))
    nvars: int = field(repr=False, default=0)

    def polynomial_value(self, t: int) -> Fraction:
        return sum((c * t**i for i, c in enumerate(self.hilbert_polynomial)), Fraction(0))

    def hilbert_function(self, t: int) -> int:
        """dim_Q (S/I)_t, read off the Hilbert series."""
        n = self.nvars
        return sum(c * math.comb(t - j + n - 1, n - 1)
                   for j, c in enumerate(self.numerator) if t - j >= 0)

    def is_empty(self) -> bool:
        return self.scheme_dimension == -1


def hilbert_data_from_numerator(numerator: Sequence[int], nvars: int) -> HilbertData:
    num = list(numerator)
    k = 0
    while num and sum(num) == 0 and any(num):
        # divide by (1 - t)
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        k += 1
    if not any(num):
        # S/I = 0: only for the unit ideal
        return HilbertData((), -1, None, None, tuple(numerator), nvars)
    krull = nvars - k
    if krull <= 0:
        return HilbertData((), -1, None, None, tuple(numerator), nvars)
    poly = [Fraction(0)] * krull
    for j, qj in enumerate(num):
        if qj:
            for i, c in enumerate(_binomial_poly(krull - 1 - j, krull - 1)):
                poly[i] += qj * c
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    degree = sum(num)
    genus = None
    if krull - 1 == 1:
        genus = int(1 - poly[0])
    return HilbertData(tuple(poly), krull - 1, int(degree), genus, tuple(numerator), nvars)


def hilbert_data(ideal: Ideal | GroebnerBasis,
                 pair_budget: int = DEFAULT_PAIR_BUDGET) -> HilbertData:
    """Hilbert polynomial, dimension, degree and (for curves) arithmetic genus."""
    gb = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal, pair_budget=pair_budget)
    n = gb.ring.nvars
    return hilbert_data_from_numerator(hilbert_numerator(gb.leading_monomials(), n), n)


def is_empty(ideal: Ideal, pair_budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    """True iff the projective scheme V(ideal) is empty."""
    return hilbert_data(ideal, pair_budget).is_empty()


# --- Jacobian criterion ------------------------------------------------------


def jacobian(gens: Sequence[Poly]) -> list[list[Poly]]:
    if not gens:
        return []
    n = gens[0].ring.nvars
    return [[g.diff(i) for i in range(n)] for g in gens]


def determinant(mat: Sequence[Sequence[Poly]]) -> Poly:
    """Leibniz expansion; fine for the 1x1 to 4x4 minors used here."""
    k = len(mat)
    ring = mat[0][0].ring
    total = ring.zero()
    for perm in itertools.permutations(range(k)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = ring.const(-1 if inversions % 2 else 1)
        for row, col in enumerate(perm):
            entry = mat[row][col]
            if entry.is_zero():
                term = None
                break
            term = term * entry
        if term is not None:
            total = total + term
    return total


def jacobian_minors(gens: Sequence[Poly], size: int) -> list[Poly]:
    jac = jacobian(gens)
    if size > len(jac) or (jac and size > len(jac[0])):
        return []
    ncols = len(jac[0])
    out = []
    seen = set()
    for rows in itertools.combinations(range(len(jac)), size):
        for cols in itertools.combinations(range(ncols), size):
            minor = determinant([[jac[r][c] for c in cols] for r in rows])
            if minor.is_zero():
                continue
            key = minor.primitive()
            if key not in seen:
                seen.add(key)
                out.append(minor)
    return out


def singular_locus(ideal: Ideal, expected_codim: int,
                   pair_budget: int = DEFAULT_PAIR_BUDGET,
                   hilbert: HilbertData | None = None) -> Ideal:
    """Generators of I plus all expected_codim-sized Jacobian minors.

    Raises CodimensionMismatchError when the Hilbert polynomial disagrees
    with ``expected_codim``.
    """
    if expected_codim < 1:
        raise ValueError("expected_codim must be positive")
    hd = hilbert if hilbert is not None else hilbert_data(ideal, pair_budget)
    ambient = ideal.nvars - 1
    if hd.scheme_dimension >= 0 and ambient - hd.scheme_dimension != expected_codim:
        raise CodimensionMismatchError(
            f"scheme has codimension {ambient - hd.scheme_dimension}, expected {expected_codim}")
    minors = jacobian_minors(list(ideal.generators), expected_codim)
    return Ideal(ideal.ring, ideal.generators + tuple(minors))


@dataclass(frozen=True)
class SmoothnessReport:
    dimension_ok: bool
    dimension: int
    degree: int | None
    genus: int | None
    smooth: bool

    def as_dict(self) -> dict:
        return {"dimension": self.dimension, "degree": self.degree,
                "genus": self.genus, "smooth": self.smooth}


def is_smooth_curve(ideal: Ideal, pair_budget: int = DEFAULT_PAIR_BUDGET) -> SmoothnessReport:
    """Dimension, degree, arithmetic genus and Jacobian smoothness of a curve."""
    hd = hilbert_data(ideal, pair_budget)
    if hd.scheme_dimension != 1:
        return SmoothnessReport(False, hd.scheme_dimension, hd.degree, hd.arithmetic_genus, False)
    codim = ideal.nvars - 2
    sing = singular_locus(ideal, codim, pair_budget, hilbert=hd)
    smooth = is_empty(sing, pair_budget)
    return SmoothnessReport(True, 1, hd.degree, hd.arithmetic_genus, smooth)
