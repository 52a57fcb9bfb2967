import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brauercurves.groebner import (
    CodimensionMismatchError,
    GroebnerBudgetError,
    Ideal,
    buchberger,
    hilbert_data,
    is_empty,
    is_smooth_curve,
    normal_form,
    s_polynomial,
    singular_locus,
)
from brauercurves.polyring import MonomialOrder, Ring, mono_divides, random_form

from oracles import brute_hilbert_function, interpolate

P2 = Ring(("x", "y", "z"))
x, y, z = P2.gens()
P3 = Ring(("x", "y", "z", "w"))
X, Y, Z, W = P3.gens()


def assert_groebner(gb):
    for f, g in itertools.combinations(gb.basis, 2):
        assert normal_form(s_polynomial(f, g, gb.order), gb).is_zero()


def assert_reduced(gb):
    lms = gb.leading_monomials()
    for g, lm in zip(gb.basis, lms):
        assert g.terms[lm] == 1
        for m in g.terms:
            for other in lms:
                if other != lm:
                    assert not mono_divides(other, m)


def test_principal_ideal():
    R1 = Ring(("x",))
    t = R1.var(0)
    gb = buchberger(Ideal.of(t))
    assert gb.basis == (t,)


def test_twisted_cubic_like_pair():
    gb = buchberger(Ideal.of(x * y - z * z, y * y - z * x))
    assert gb.reduced
    assert_groebner(gb)
    assert_reduced(gb)
    for g in (x * y - z * z, y * y - z * x):
        assert normal_form(g, gb).is_zero()


def test_coprime_leading_terms_already_basis():
    f, g = X - Y, Y * Y - Z * W
    # by hand: y^2(x - y) - x(y^2 - zw) = -y^3 + xzw -> yzw - y^3 = -y(y^2 - zw) -> 0
    s = s_polynomial(f, g)
    assert s == -Y ** 3 + X * Z * W
    gb = buchberger(Ideal.of(f, g))
    assert set(gb.basis) == {f, g}


def test_normal_form_examples():
    gb = buchberger(Ideal.of(x - y))
    assert normal_form(x * x, gb) == y * y
    assert normal_form(x - y, gb).is_zero()
    gb2 = buchberger(Ideal.of(x * x + y * y, x * y * z))
    assert normal_form(P2.const(1), gb2) == P2.const(1)


def test_normal_form_keeps_scale():
    gb = buchberger(Ideal.of((x - y).scale(3)))
    assert normal_form((x * x).scale(Fraction(5, 2)), gb) == (y * y).scale(Fraction(5, 2))


def test_lex_order_basis():
    gb = buchberger(Ideal.of(x * x - y * z, x * y - z * z), MonomialOrder.LEX)
    assert_groebner(gb)
    assert_reduced(gb)


def test_budget_is_a_resource_error():
    R = Ring.projective(3)
    ideal = Ideal(R, (random_form(2, R, 3, 1), random_form(2, R, 3, 2), random_form(3, R, 3, 3)))
    with pytest.raises(GroebnerBudgetError):
        buchberger(ideal, pair_budget=1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_zero_ideal_hilbert_polynomial(n):
    R = Ring.projective(n)
    hd = hilbert_data(Ideal(R))
    assert hd.scheme_dimension == n
    for t in range(10):
        assert hd.polynomial_value(t) == math.comb(t + n, n)


def test_zero_ideal_p3_coefficients():
    hd = hilbert_data(Ideal(P3))
    assert hd.hilbert_polynomial == (1, Fraction(11, 6), 1, Fraction(1, 6))


def test_plane_cubic_hilbert_polynomial():
    cubic = x ** 3 + y ** 3 + z ** 3
    # oracle values of dim (S/I)_t for t = 0..8, frozen
    brute = [brute_hilbert_function([cubic], 3, t) for t in range(9)]
    assert brute == [1, 3, 6, 9, 12, 15, 18, 21, 24]
    assert interpolate(list(enumerate(brute))[5:]) == [0, 3]
    hd = hilbert_data(Ideal.of(cubic))
    assert hd.hilbert_polynomial == (0, 3)
    assert (hd.degree, hd.arithmetic_genus, hd.scheme_dimension) == (3, 1, 1)


def test_two_quadrics_hilbert_polynomial():
    q1, q2 = random_form(2, P3, 3, 21), random_form(2, P3, 3, 22)
    brute = [brute_hilbert_function([q1, q2], 4, t) for t in range(9)]
    assert brute == [1, 4, 8, 12, 16, 20, 24, 28, 32]
    hd = hilbert_data(Ideal.of(q1, q2))
    assert hd.hilbert_polynomial == (0, 4)
    assert (hd.degree, hd.arithmetic_genus) == (4, 1)


@pytest.mark.parametrize("d1, d2, degree, genus", [(2, 2, 4, 1), (2, 3, 6, 4)])
def test_complete_intersection_formula(d1, d2, degree, genus):
    f, g = random_form(d1, P3, 3, 31), random_form(d2, P3, 3, 32)
    assert degree == d1 * d2 and genus == d1 * d2 * (d1 + d2 - 4) // 2 + 1
    hd = hilbert_data(Ideal.of(f, g))
    assert (hd.degree, hd.arithmetic_genus) == (degree, genus)
    brute = [brute_hilbert_function([f, g], 4, t) for t in range(6, 9)]
    assert brute == [degree * t + 1 - genus for t in range(6, 9)]


def test_is_empty_examples():
    assert is_empty(Ideal.of(x, y, z))
    assert not is_empty(Ideal(P2))
    assert is_empty(Ideal.of(x * x, y * y, z * z))
    # Hilbert function of (x^2, y^2, z^2) dies in degree 4
    assert [brute_hilbert_function([x * x, y * y, z * z], 3, t) for t in range(6)] == [1, 3, 3, 1, 0, 0]


def test_unit_ideal_is_empty():
    assert is_empty(Ideal.of(P2.const(1)))


def test_singular_locus_smooth_conic():
    sing = singular_locus(Ideal.of(x * x + y * y + z * z), 1)
    assert is_empty(sing)
    assert (x.scale(2)) in sing.generators


def test_singular_locus_nodal_cubic():
    cubic = y * y * z - x * x * (x + z)
    sing = singular_locus(Ideal.of(cubic), 1)
    assert not is_empty(sing)
    # the node (0:0:1) kills every generator
    assert all(g.evaluate((0, 0, 1)) == 0 for g in sing.generators)


def test_singular_locus_two_planes():
    sing = singular_locus(Ideal.of(X * Y), 1)
    hd = hilbert_data(sing)
    assert hd.scheme_dimension == 1 and hd.degree == 1


def test_singular_locus_codimension_mismatch():
    with pytest.raises(CodimensionMismatchError):
        singular_locus(Ideal.of(x * x + y * y + z * z), 2)


def test_fermat_cubic_smooth():
    rep = is_smooth_curve(Ideal.of(x ** 3 + y ** 3 + z ** 3))
    assert (rep.dimension_ok, rep.degree, rep.genus, rep.smooth) == (True, 3, 1, True)


def test_triangle_singular():
    rep = is_smooth_curve(Ideal.of(x * y * z))
    assert (rep.dimension_ok, rep.degree, rep.genus, rep.smooth) == (True, 3, 1, False)


def test_identical_quadrics_wrong_dimension():
    q = random_form(2, P3, 3, 5)
    rep = is_smooth_curve(Ideal.of(q, q))
    assert not rep.dimension_ok and rep.dimension == 2 and not rep.smooth


forms = st.tuples(st.integers(1, 3), st.integers(0, 2**32))


@settings(max_examples=25)
@given(st.lists(forms, min_size=1, max_size=3), st.sampled_from([P2, P3]))
def test_random_ideals_against_oracle(specs, ring):
    gens = [random_form(d, ring, 2, s) for d, s in specs]
    ideal = Ideal(ring, tuple(gens))
    gb = buchberger(ideal)
    if len(gb) <= 12:
        assert_groebner(gb)
    assert_reduced(gb)
    for g in gens:
        assert normal_form(g, gb).is_zero()
    hd = hilbert_data(gb)
    for t in range(6):
        assert hd.hilbert_function(t) == brute_hilbert_function(gens, ring.nvars, t)


@settings(max_examples=25)
@given(st.integers(0, 2**32), st.integers(0, 2**32), st.integers(1, 4))
def test_normal_form_idempotent(s1, s2, d):
    ideal = Ideal(P3, (random_form(2, P3, 3, s1), random_form(2, P3, 3, s1 + 1)))
    gb = buchberger(ideal)
    p = random_form(d, P3, 5, s2)
    r = normal_form(p, gb)
    assert normal_form(r, gb) == r
    lms = gb.leading_monomials()
    assert all(not mono_divides(lm, m) for m in r.terms for lm in lms)
    # p - r lies in the ideal
    assert normal_form(p - r, gb).is_zero()
