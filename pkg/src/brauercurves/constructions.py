"""Genus-one curves on Severi-Brauer varieties of index 2 through 5.

Two layers live here.  The obstruction calculus (``descent_obstruction``,
``kunneth_obstruction``, ``plan_index4``, ``plan_index5``) tracks which
twisted line bundles on X x Y descend, purely through Brauer class
arithmetic.  The builders emit explicit curve equations and certify them
with the Gröbner engine; every certificate they return has dimension 1,
arithmetic genus 1 and passes the Jacobian criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .brauerq import (
    BrauerClassQ,
    QuaternionPair,
    index,
    sb_dimension,
)
from .groebner import (
    DEFAULT_PAIR_BUDGET,
    Ideal,
    SmoothnessReport,
    hilbert_data,
    is_smooth_curve,
)
from .polyring import Poly, Ring, derive_seed, parse_poly, random_form, random_linear_forms

DEFAULT_HEIGHT = 3
DEFAULT_MAX_RETRIES = 20

CONSTRUCTIONS = ("index2", "index3_split", "index3_cyclic", "index4_split", "index5_pfaffian")


class InvalidInputError(ValueError):
    """Bad builder or command input."""


class WrongIndexError(ValueError):
    """The class has the wrong index for the requested construction."""


class RetriesExhaustedError(RuntimeError):
    pass


class MalformedCertificateError(ValueError):
    pass


# --- obstruction calculus ----------------------------------------------------


@dataclass(frozen=True)
class BundleTwist:
    """O(m) on the X factor boxed with O(n), or Omega^1(n) if ``omega_twist``, on Y."""

    m: int
    n: int
    omega_twist: bool = False

    def label(self) -> str:
        y = f"Ω¹({self.n})" if self.omega_twist else f"O({self.n})"
        return f"O({self.m}) ⊠ {y}"

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "omega_twist": self.omega_twist}


def descent_obstruction(m: int, alpha: BrauerClassQ) -> BrauerClassQ:
    """Obstruction to descending O(m) from the split form of X_alpha: m*alpha."""
    return m * alpha


def kunneth_obstruction(t: BundleTwist, alpha: BrauerClassQ, beta: BrauerClassQ) -> BrauerClassQ:
    """Obstruction for the twist on X_alpha x X_beta; the Omega^1 factor itself descends."""
    return descent_obstruction(t.m, alpha) + descent_obstruction(t.n, beta)


def kunneth_h0(m: int, n: int, a: int, b: int) -> int:
    """h^0 of O(m, n) on P^a x P^b."""
    if m < 0 or n < 0:
        raise ValueError("twists must be non-negative")
    return math.comb(m + a, a) * math.comb(n + b, b)


def omega_h0(n: int, b: int) -> int:
    """h^0 of Omega^1(n) on P^b for n >= 1, from the Euler sequence."""
    if n < 1:
        raise ValueError("need n >= 1")
    return (b + 1) * math.comb(n - 1 + b, b) - math.comb(n + b, b)


def pushforward_rank(n: int, b: int) -> int:
    """Rank of the first-projection pushforward of O(m, n) from P^a x P^b."""
    if n < 0 or b < 0:
        raise ValueError("n and b must be non-negative")
    return math.comb(n + b, b)


def riemann_hurwitz_check(g_base: int, cover_degree: int, branch_degree: int) -> int:
    """Genus of a double cover of a genus ``g_base`` curve branched in ``branch_degree`` points."""
    if cover_degree != 2:
        raise ValueError("only double covers are supported")
    if branch_degree < 0 or branch_degree % 2:
        raise ValueError(f"a double cover needs an even branch degree, got {branch_degree}")
    two_g_minus_2 = cover_degree * (2 * g_base - 2) + branch_degree
    g = two_g_minus_2 // 2 + 1
    if g < 0:
        raise ValueError("cover is disconnected; genus formula does not apply")
    return g


@dataclass(frozen=True)
class ConstructionPlan:
    alpha: BrauerClassQ
    index_case: int
    x_dim: int
    obstruction: BrauerClassQ
    obstruction_vanishes: bool
    y_class: BrauerClassQ | None = None
    y_dim: int | None = None
    bundle: BundleTwist | None = None
    bundle_rank: int | None = None
    expected_sections: int | None = None
    arithmetic: str = ""

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "index_case": self.index_case,
            "x_dim": self.x_dim,
            "y_class": self.y_class.to_json() if self.y_class is not None else None,
            "y_dim": self.y_dim,
            "bundle": self.bundle.to_json() if self.bundle is not None else None,
            "bundle_label": self.bundle.label() if self.bundle is not None else None,
            "obstruction": self.obstruction.to_json(),
            "obstruction_vanishes": self.obstruction_vanishes,
            "obstruction_arithmetic": self.arithmetic,
            "bundle_rank": self.bundle_rank,
            "expected_sections": self.expected_sections,
        }


def _multiple(k: int, sym: str = "α") -> str:
    return sym if k == 1 else f"{k}{sym}"


def obstruction_arithmetic(t: BundleTwist, y_multiple: int, obstruction: BrauerClassQ) -> str:
    """Human-readable sum, e.g. ``2α + 2α = 0`` or ``α + 2(2α) = 5α = 0``."""
    x_term = _multiple(t.m)
    y_class = _multiple(y_multiple)
    y_term = y_class if t.n == 1 else f"{t.n}({y_class})"
    parts = [f"{x_term} + {y_term}"]
    if t.n != 1:
        parts.append(_multiple(t.m + t.n * y_multiple))
    parts.append("0" if obstruction.is_zero() else repr(obstruction))
    return " = ".join(parts)


def plan_index4(alpha: BrauerClassQ) -> ConstructionPlan:
    """Bookkeeping for index 4: Y carries 2α and O(2) ⊠ O(1) descends to X x Y."""
    if index(alpha) != 4:
        raise WrongIndexError(f"plan_index4 needs index 4, class has index {index(alpha)}")
    y_class = 2 * alpha
    y_dim = sb_dimension(y_class)
    if y_dim not in (0, 1):
        raise AssertionError(f"2α should have index 1 or 2, got {index(y_class)}")
    bundle = BundleTwist(2, 1)
    obstruction = kunneth_obstruction(bundle, alpha, y_class)
    return ConstructionPlan(
        alpha=alpha,
        index_case=4,
        x_dim=3,
        y_class=y_class,
        y_dim=y_dim,
        bundle=bundle,
        obstruction=obstruction,
        obstruction_vanishes=obstruction.is_zero(),
        bundle_rank=pushforward_rank(bundle.n, y_dim),
        expected_sections=kunneth_h0(bundle.m, bundle.n, 3, y_dim),
        arithmetic=obstruction_arithmetic(bundle, 2, obstruction),
    )


def plan_index5(alpha: BrauerClassQ) -> ConstructionPlan:
    """Bookkeeping for index 5: Y carries 2α and O(1) ⊠ Ω¹(2) descends to X x Y."""
    if index(alpha) != 5:
        raise WrongIndexError(f"plan_index5 needs index 5, class has index {index(alpha)}")
    y_class = 2 * alpha
    y_dim = sb_dimension(y_class)
    bundle = BundleTwist(1, 2, omega_twist=True)
    obstruction = kunneth_obstruction(bundle, alpha, y_class)
    return ConstructionPlan(
        alpha=alpha,
        index_case=5,
        x_dim=4,
        y_class=y_class,
        y_dim=y_dim,
        bundle=bundle,
        obstruction=obstruction,
        obstruction_vanishes=obstruction.is_zero(),
        # rank of Omega^1 on P^4
        bundle_rank=y_dim,
        expected_sections=kunneth_h0(bundle.m, 0, 4, 0) * omega_h0(bundle.n, y_dim),
        arithmetic=obstruction_arithmetic(bundle, 2, obstruction),
    )


def plan_low_index(alpha: BrauerClassQ) -> ConstructionPlan:
    """Index 2 and 3: the anticanonical bundle O(index) on X descends outright."""
    k = index(alpha)
    if k not in (2, 3):
        raise WrongIndexError(f"plan_low_index needs index 2 or 3, class has index {k}")
    obstruction = descent_obstruction(k, alpha)
    return ConstructionPlan(
        alpha=alpha,
        index_case=k,
        x_dim=k - 1,
        obstruction=obstruction,
        obstruction_vanishes=obstruction.is_zero(),
        bundle=BundleTwist(k, 0),
        bundle_rank=1,
        expected_sections=kunneth_h0(k, 0, k - 1, 0),
        arithmetic=f"{_multiple(k)} = " + ("0" if obstruction.is_zero() else repr(obstruction)),
    )


def plan_for(alpha: BrauerClassQ) -> ConstructionPlan:
    k = index(alpha)
    if k in (2, 3):
        return plan_low_index(alpha)
    if k == 4:
        return plan_index4(alpha)
    if k == 5:
        return plan_index5(alpha)
    raise WrongIndexError(f"no construction for index {k}; supported indices are 2 to 5")


# --- skew matrices and Pfaffians --------------------------------------------


class SkewMatrix:
    """5x5 skew-symmetric matrix of linear forms, stored by its upper triangle."""

    size = 5
    PAIRS = [(i, j) for i in range(5) for j in range(i + 1, 5)]

    def __init__(self, ring: Ring, entries):
        entries = list(entries)
        if len(entries) != len(self.PAIRS):
            raise ValueError(f"need {len(self.PAIRS)} upper-triangular entries")
        for e in entries:
            if e.ring != ring:
                raise ValueError("entry ring mismatch")
            if not e.is_zero() and (e.degree() != 1 or not e.is_homogeneous()):
                raise ValueError(f"entry {e} is not a linear form")
        self.ring = ring
        self.entries = tuple(entries)
        self._lookup = dict(zip(self.PAIRS, self.entries))

    def entry(self, i: int, j: int) -> Poly:
        if i == j:
            return self.ring.zero()
        if i < j:
            return self._lookup[(i, j)]
        return -self._lookup[(j, i)]

    @classmethod
    def from_dict(cls, ring: Ring, values: dict) -> "SkewMatrix":
        return cls(ring, [values.get(p, ring.zero()) for p in cls.PAIRS])

    @classmethod
    def random(cls, ring: Ring, height: int, seed: int) -> "SkewMatrix":
        return cls(ring, random_linear_forms(len(cls.PAIRS), ring, height, seed))


def pfaffian4(m: SkewMatrix, omit: int) -> Poly:
    """Pfaffian of the 4x4 submatrix dropping row and column ``omit``."""
    if not 0 <= omit < 5:
        raise ValueError("omit must be in 0..4")
    a, b, c, d = [i for i in range(5) if i != omit]
    e = m.entry
    return e(a, b) * e(c, d) - e(a, c) * e(b, d) + e(a, d) * e(b, c)


# --- certificates ------------------------------------------------------------


@dataclass
class CurveCertificate:
    construction: str
    variables: tuple[str, ...]
    generators: list[Poly]
    report: dict
    seed: int
    retries: int
    inputs: dict = field(default_factory=dict)
    plan: ConstructionPlan | None = None
    checks: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    irreducibility_certified: bool = False

    @property
    def ring(self) -> Ring:
        return Ring(self.variables)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, tuple(self.generators))

    def to_json(self) -> dict:
        out = {
            "construction": self.construction,
            "ambient": {"vars": list(self.variables)},
            "generators": [g.to_text() for g in self.generators],
            "report": dict(self.report),
            "irreducibility_certified": self.irreducibility_certified,
            "seed": self.seed,
            "retries": self.retries,
            "inputs": self.inputs,
            "checks": self.checks,
        }
        if self.config:
            out["config"] = self.config
        if self.plan is not None:
            out["plan"] = self.plan.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CurveCertificate":
        try:
            variables = tuple(data["ambient"]["vars"])
            ring = Ring(variables)
            gens = [parse_poly(s, ring) for s in data["generators"]]
            report = data["report"]
            cert = cls(
                construction=data["construction"],
                variables=variables,
                generators=gens,
                report={k: report[k] for k in ("dimension", "degree", "genus", "smooth")},
                seed=int(data["seed"]),
                retries=int(data["retries"]),
                inputs=data.get("inputs", {}),
                checks=data.get("checks", {}),
                config=data.get("config", {}),
                irreducibility_certified=bool(data.get("irreducibility_certified", False)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCertificateError(f"malformed certificate: {exc}") from exc
        if not gens or any(not g.is_homogeneous() for g in gens):
            raise MalformedCertificateError("generators must be nonzero homogeneous forms")
        return cert


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    claimed: dict
    actual: dict
    mismatches: dict

    def diff_lines(self) -> list[str]:
        return [f"{k}: claimed {c!r}, recomputed {a!r}" for k, (c, a) in self.mismatches.items()]


def verify_certificate(cert: CurveCertificate | dict,
                       pair_budget: int = DEFAULT_PAIR_BUDGET) -> VerificationReport:
    """Recompute dimension, degree, genus and smoothness and compare with the claims."""
    if isinstance(cert, dict):
        cert = CurveCertificate.from_json(cert)
    try:
        ideal = cert.ideal()
    except ValueError as exc:
        raise MalformedCertificateError(str(exc)) from exc
    actual = is_smooth_curve(ideal, pair_budget).as_dict()
    claimed = dict(cert.report)
    mismatches = {k: (claimed.get(k), actual[k]) for k in actual if claimed.get(k) != actual[k]}
    return VerificationReport(not mismatches, claimed, actual, mismatches)


# --- builders ----------------------------------------------------------------

Sampler = Callable[[int], "list[Poly] | SkewMatrix | None"]


def _genus_one_ok(rep: SmoothnessReport, degree: int) -> bool:
    return rep.dimension_ok and rep.degree == degree and rep.genus == 1 and rep.smooth


def _embed(p: Poly, ring: Ring) -> Poly:
    """Extend a form to a ring with extra trailing variables."""
    pad = (0,) * (ring.nvars - p.ring.nvars)
    return Poly(ring, {m + pad: c for m, c in p.terms.items()})


def _config(height: int, max_retries: int, pair_budget: int) -> dict:
    return {"height": height, "max_retries": max_retries, "pair_budget": pair_budget}


def _check_bounds(height: int, max_retries: int):
    if height < 1:
        raise InvalidInputError("height must be positive")
    if max_retries < 0:
        raise InvalidInputError("max_retries must be non-negative")


def build_index2(a, b, height: int = DEFAULT_HEIGHT, seed: int = 0,
                 max_retries: int = DEFAULT_MAX_RETRIES,
                 pair_budget: int = DEFAULT_PAIR_BUDGET,
                 sampler: Sampler | None = None) -> CurveCertificate:
    """Double cover of the conic a x^2 + b y^2 = z^2 branched over its meet with a quadric.

    Lives in P^3 as {conic(x, y, z), w^2 - q(x, y, z)}; the branch divisor
    (conic, q) must be a reduced degree-4 scheme, which the smoothness check
    of the total space enforces.
    """
    _check_bounds(height, max_retries)
    try:
        q_pair = QuaternionPair(a, b)
    except ValueError as exc:
        raise InvalidInputError(str(exc)) from exc
    plane = Ring(("x", "y", "z"))
    space = Ring(("x", "y", "z", "w"))
    x, y, z = plane.gens()
    conic = ((x * x).scale(q_pair.a) + (y * y).scale(q_pair.b) - z * z).integer_cleared()
    w = space.var(3)
    genus = riemann_hurwitz_check(0, 2, 4)
    for attempt in range(max_retries + 1):
        forced = sampler(attempt) if sampler else None
        q = forced[0] if forced else random_form(2, plane, height, derive_seed(seed, "index2", attempt))
        branch = hilbert_data(Ideal(plane, (conic, q)), pair_budget)
        if branch.scheme_dimension != 0 or branch.degree != 4:
            continue
        gens = [_embed(conic, space), w * w - _embed(q, space)]
        rep = is_smooth_curve(Ideal(space, tuple(gens)), pair_budget)
        if _genus_one_ok(rep, 4) and rep.genus == genus:
            return CurveCertificate(
                construction="index2",
                variables=space.names,
                generators=gens,
                report=rep.as_dict(),
                seed=seed,
                retries=attempt,
                inputs={"quaternion": q_pair.to_json()},
                checks={
                    "model": "double cover of the conic branched at conic ∩ quadric",
                    "branch_divisor": {"dimension": branch.scheme_dimension,
                                       "degree": branch.degree},
                    "riemann_hurwitz_genus": genus,
                },
                config=_config(height, max_retries, pair_budget),
            )
    raise RetriesExhaustedError(f"index2: no smooth genus one cover in {max_retries + 1} attempts")


def build_index3(mode: str = "split", cyclic: tuple | None = None,
                 height: int = DEFAULT_HEIGHT, seed: int = 0,
                 max_retries: int = DEFAULT_MAX_RETRIES,
                 pair_budget: int = DEFAULT_PAIR_BUDGET,
                 sampler: Sampler | None = None) -> CurveCertificate:
    """Plane cubics: a random anticanonical curve, or the diagonal a x^3 + b y^3 + z^3."""
    _check_bounds(height, max_retries)
    plane = Ring(("x", "y", "z"))
    x, y, z = plane.gens()
    if mode == "cyclic":
        if cyclic is None or len(cyclic) != 2:
            raise InvalidInputError("cyclic mode needs (a, b)")
        a, b = (Fraction(v) for v in cyclic)
        if a.denominator != 1 or b.denominator != 1 or a == 0 or b == 0:
            raise InvalidInputError(f"cyclic mode needs nonzero integers, got {cyclic}")
        if abs(a * b) == 1:
            raise InvalidInputError("cyclic mode needs a*b != ±1")
        cubic = (x ** 3).scale(a) + (y ** 3).scale(b) + z ** 3
        rep = is_smooth_curve(Ideal(plane, (cubic,)), pair_budget)
        if not _genus_one_ok(rep, 3):
            raise InvalidInputError(f"diagonal cubic with a={a}, b={b} is not smooth of genus 1")
        return CurveCertificate(
            construction="index3_cyclic",
            variables=plane.names,
            generators=[cubic],
            report=rep.as_dict(),
            seed=seed,
            retries=0,
            inputs={"cyclic": {"a": int(a), "b": int(b)}},
            checks={"model": "diagonal cubic", "splitting_verified": False},
            config=_config(height, max_retries, pair_budget),
        )
    if mode != "split":
        raise InvalidInputError(f"unknown index-3 mode {mode!r}")
    for attempt in range(max_retries + 1):
        forced = sampler(attempt) if sampler else None
        cubic = forced[0] if forced else random_form(3, plane, height, derive_seed(seed, "index3", attempt))
        rep = is_smooth_curve(Ideal(plane, (cubic,)), pair_budget)
        if _genus_one_ok(rep, 3):
            return CurveCertificate(
                construction="index3_split",
                variables=plane.names,
                generators=[cubic],
                report=rep.as_dict(),
                seed=seed,
                retries=attempt,
                inputs={"mode": "split"},
                checks={"model": "anticanonical plane cubic"},
                config=_config(height, max_retries, pair_budget),
            )
    raise RetriesExhaustedError(f"index3: no smooth cubic in {max_retries + 1} attempts")


def build_index4_split(height: int = DEFAULT_HEIGHT, seed: int = 0,
                       max_retries: int = DEFAULT_MAX_RETRIES,
                       pair_budget: int = DEFAULT_PAIR_BUDGET,
                       alpha: BrauerClassQ | None = None,
                       sampler: Sampler | None = None) -> CurveCertificate:
    """Intersection of two quadrics in P^3, the split model of the index-4 construction."""
    _check_bounds(height, max_retries)
    plan = plan_index4(alpha) if alpha is not None else None
    space = Ring.projective(3)
    for attempt in range(max_retries + 1):
        forced = sampler(attempt) if sampler else None
        if forced:
            quadrics = list(forced)
        else:
            quadrics = [random_form(2, space, height, derive_seed(seed, "index4", attempt, j))
                        for j in range(2)]
        rep = is_smooth_curve(Ideal(space, tuple(quadrics)), pair_budget)
        if _genus_one_ok(rep, 4):
            return CurveCertificate(
                construction="index4_split",
                variables=space.names,
                generators=quadrics,
                report=rep.as_dict(),
                seed=seed,
                retries=attempt,
                inputs={"alpha": alpha.to_json()} if alpha is not None else {},
                plan=plan,
                checks={
                    "model": "complete intersection of two quadrics",
                    "pushforward_rank": pushforward_rank(1, 1),
                    "bidegree_sections": kunneth_h0(2, 1, 3, 1),
                },
                config=_config(height, max_retries, pair_budget),
            )
    raise RetriesExhaustedError(f"index4: no smooth quartic curve in {max_retries + 1} attempts")


def build_index5_pfaffian(height: int = DEFAULT_HEIGHT, seed: int = 0,
                          max_retries: int = DEFAULT_MAX_RETRIES,
                          pair_budget: int = DEFAULT_PAIR_BUDGET,
                          alpha: BrauerClassQ | None = None,
                          sampler: Sampler | None = None) -> CurveCertificate:
    """Elliptic normal quintic in P^4 cut out by the 4x4 Pfaffians of a skew matrix.

    The skew matrix of linear forms plays the role of a section of
    O(1) ⊠ Ω¹(2); purity of codimension 3 is checked before the Jacobian test.
    """
    _check_bounds(height, max_retries)
    plan = plan_index5(alpha) if alpha is not None else None
    space = Ring.projective(4)
    for attempt in range(max_retries + 1):
        forced = sampler(attempt) if sampler else None
        matrix = forced if forced is not None else SkewMatrix.random(
            space, height, derive_seed(seed, "index5", attempt))
        gens = [pfaffian4(matrix, i) for i in range(5)]
        ideal = Ideal(space, tuple(gens))
        if len(ideal.generators) < 3:
            continue
        # height 3 Pfaffian ideals are Gorenstein, so a 1-dimensional locus is pure
        hd = hilbert_data(ideal, pair_budget)
        if hd.scheme_dimension != 1:
            continue
        rep = is_smooth_curve(ideal, pair_budget)
        if _genus_one_ok(rep, 5):
            return CurveCertificate(
                construction="index5_pfaffian",
                variables=space.names,
                generators=list(ideal.generators),
                report=rep.as_dict(),
                seed=seed,
                retries=attempt,
                inputs={"alpha": alpha.to_json()} if alpha is not None else {},
                plan=plan,
                checks={
                    "model": "pfaffian realization",
                    "skew_matrix": [e.to_text() for e in matrix.entries],
                    "bundle_rank": 4,
                    "bundle_sections": kunneth_h0(1, 0, 4, 0) * omega_h0(2, 4),
                },
                config=_config(height, max_retries, pair_budget),
            )
    raise RetriesExhaustedError(f"index5: no smooth Pfaffian quintic in {max_retries + 1} attempts")


def build_curve(case: int, **kwargs) -> CurveCertificate:
    """Dispatch on the index case."""
    builders = {2: build_index2, 3: build_index3, 4: build_index4_split, 5: build_index5_pfaffian}
    if case not in builders:
        raise InvalidInputError(f"case must be 2, 3, 4 or 5, got {case}")
    return builders[case](**kwargs)
