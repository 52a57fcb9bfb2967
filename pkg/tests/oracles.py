"""Independent brute-force oracles used by the test suite.

None of these touch the Buchberger code path: Hilbert functions come from
exact ranks of Macaulay matrices (sympy DomainMatrix over QQ), Hilbert
symbols from exhaustive search modulo prime powers.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM

from brauercurves.polyring import Poly, monomials_of_degree


def brute_hilbert_function(gens: list[Poly], nvars: int, t: int) -> int:
    """dim (S/I)_t via the rank of all degree-t multiples of the generators."""
    monos = monomials_of_degree(nvars, t)
    col = {m: i for i, m in enumerate(monos)}
    rows = {}
    k = 0
    for g in gens:
        if g.is_zero():
            continue
        d = g.degree()
        if d > t:
            continue
        g = g.integer_cleared()
        for q in monomials_of_degree(nvars, t - d):
            rows[k] = {col[tuple(a + b for a, b in zip(m, q))]: QQ(int(c))
                       for m, c in g.terms.items()}
            k += 1
    if not rows:
        return len(monos)
    mat = DomainMatrix.from_rep(SDM(rows, (k, len(monos)), QQ))
    return len(monos) - mat.rank()


def interpolate(points: list[tuple[int, int]]) -> list[Fraction]:
    """Ascending coefficients of the Lagrange interpolant through ``points``."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _val(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _depth(a: int, b: int, p: int) -> int:
    # 2^5 / p^3 is not enough once v_2(a) + v_2(b) >= 3 (e.g. a = b = -8)
    extra = _val(a, p) + _val(b, p)
    return max(5, extra + 3) if p == 2 else max(3, extra + 2)


def locally_solvable(a: int, b: int, p: int) -> bool:
    """Does a x^2 + b y^2 = z^2 have a primitive solution mod p^k?"""
    mod = p ** _depth(a, b, p)
    xs = np.arange(mod, dtype=np.int64)
    sq = (xs * xs) % mod
    unit = xs % p != 0
    sq_unit = np.unique(sq[unit])
    sq_nonunit = np.unique(sq[~unit])
    sq_all = np.union1d(sq_unit, sq_nonunit)
    # at least one of x, y a unit: z arbitrary
    for s_set, t_set in ((sq_unit, sq_all), (sq_nonunit, sq_unit)):
        vals = (a * s_set[:, None] + b * t_set[None, :]) % mod
        if np.isin(vals, sq_all).any():
            return True
    # x, y both non-units: z must be a unit
    vals = (a * sq_nonunit[:, None] + b * sq_nonunit[None, :]) % mod
    return bool(np.isin(vals, sq_unit).any())
