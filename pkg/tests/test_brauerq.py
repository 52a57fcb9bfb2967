from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brauercurves.brauerq import (
    INF,
    BrauerClassQ,
    Place,
    QuaternionPair,
    ReciprocityError,
    class_combine,
    conic_model,
    hilbert_symbol,
    index,
    parse_class,
    period,
    quaternion_class,
    random_class,
    sb_dimension,
)
from brauercurves.groebner import is_smooth_curve

from oracles import locally_solvable

F = Fraction
P2, P3, P5, P7 = Place(2), Place(3), Place(5), Place(7)


def test_place_validation():
    with pytest.raises(ValueError):
        Place(9)
    assert str(INF) == "inf" and Place.parse("inf") == INF and Place.parse("13") == Place(13)


def test_symbol_trivial_when_a_square():
    for b in (-7, -1, 2, 3, F(5, 4)):
        for v in (INF, P2, P3, P5, P7):
            assert hilbert_symbol(1, b, v) == 1
            assert hilbert_symbol(F(9, 4), b, v) == 1


def test_symbol_minus_one_minus_one_at_two():
    # frozen from the oracle: x^2 + y^2 + z^2 = 0 has no primitive solution mod 8
    assert not locally_solvable(-1, -1, 2)
    assert hilbert_symbol(-1, -1, 2) == -1


def test_symbol_two_five_at_five():
    # squares mod 5 are {1, 4}, so 2 is a non-residue
    assert not locally_solvable(2, 5, 5)
    assert hilbert_symbol(2, 5, 5) == -1


def test_symbol_real_place():
    assert hilbert_symbol(-1, -1, INF) == -1
    assert hilbert_symbol(-1, 3, INF) == 1


def test_symbol_rejects_zero():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, P3)


def test_quaternion_class_examples():
    assert quaternion_class(QuaternionPair(1, 1)).is_zero()
    assert quaternion_class(QuaternionPair(-1, -1)) == BrauerClassQ({P2: F(1, 2), INF: F(1, 2)})
    assert quaternion_class(QuaternionPair(-1, 3)) == BrauerClassQ({P2: F(1, 2), P3: F(1, 2)})


def test_reciprocity_enforced():
    with pytest.raises(ReciprocityError):
        BrauerClassQ({P2: F(1, 4)})
    with pytest.raises(ValueError):
        BrauerClassQ({INF: F(1, 4), P2: F(3, 4)})


def test_class_combine_examples():
    a = BrauerClassQ({P2: F(1, 4), P3: F(3, 4)})
    assert class_combine(a, a, 1, -1).is_zero()
    assert 2 * a == BrauerClassQ({P2: F(1, 2), P3: F(1, 2)})
    b = BrauerClassQ({P2: F(1, 5), P3: F(4, 5)})
    assert (5 * b).is_zero()


def test_period_index_dimension():
    zero = BrauerClassQ.zero()
    a4 = BrauerClassQ({P2: F(1, 4), P3: F(3, 4)})
    a5 = BrauerClassQ({P2: F(1, 5), P3: F(4, 5)})
    assert period(zero) == 1 and index(zero) == 1 and sb_dimension(zero) == 0
    assert period(a4) == 4 and period(a5) == 5
    assert index(quaternion_class(QuaternionPair(-1, -1))) == 2
    assert index(2 * a4) == 2
    assert sb_dimension(quaternion_class(QuaternionPair(-1, -1))) == 1
    assert sb_dimension(a5) == 4


def test_conic_model():
    ideal = conic_model(QuaternionPair(-1, -1))
    assert ideal.generators[0].to_text() == "-x^2 - y^2 - z^2"
    split = conic_model(QuaternionPair(1, 1)).generators[0]
    assert split.evaluate((1, 0, 1)) == 0
    halves = conic_model(QuaternionPair(F(1, 2), F(-3, 4))).generators[0]
    assert all(c.denominator == 1 for c in halves.terms.values())


@pytest.mark.parametrize("a, b", [(-1, -1), (1, 1), (2, 5), (-3, 7), (F(1, 2), 6)])
def test_conic_model_smooth(a, b):
    rep = is_smooth_curve(conic_model(QuaternionPair(a, b)))
    assert rep.smooth and rep.degree == 2 and rep.genus == 0


def test_random_class_examples():
    c = random_class(5, [2, 3], seed=1)
    k = c.invariant(P2) * 5
    assert k in range(1, 5) and c.invariant(P3) == F(5 - k, 5)
    c4 = random_class(4, [2, 3], seed=2)
    assert period(c4) == 4
    assert random_class(2, ["inf", 2], seed=3) == BrauerClassQ({INF: F(1, 2), P2: F(1, 2)})
    assert random_class(4, [2, 3, 5], seed=9) == random_class(4, [2, 3, 5], seed=9)


@pytest.mark.parametrize("period_, support", [(2, ["inf"]), (3, ["inf", 2]), (4, [2]), (1, [2, 3])])
def test_random_class_infeasible(period_, support):
    with pytest.raises(ValueError):
        random_class(period_, support, seed=0)


def test_json_roundtrip_and_loose_parse():
    c = BrauerClassQ({P2: F(1, 4), P3: F(3, 4)})
    assert c.to_json() == {"invariants": [{"place": "2", "num": 1, "den": 4},
                                          {"place": "3", "num": 3, "den": 4}]}
    assert BrauerClassQ.from_json(c.to_json()) == c
    assert parse_class("{2:1/4,3:3/4}") == c
    assert parse_class('{"2": "1/4", "3": "3/4"}') == c
    assert parse_class("{inf:1/2, 2:1/2}") == BrauerClassQ({INF: F(1, 2), P2: F(1, 2)})
    with pytest.raises(ValueError):
        parse_class("{2:1/4")


nonzero = st.one_of(st.integers(-60, -1), st.integers(1, 60))
places = st.sampled_from([INF, P2, P3, P5, P7, Place(11), Place(13)])


@given(nonzero, nonzero, places)
def test_symbol_symmetric(a, b, v):
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)


@given(nonzero, nonzero, nonzero, places)
def test_symbol_bimultiplicative(a, a2, b, v):
    assert hilbert_symbol(a * a2, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v)


@given(nonzero, nonzero, nonzero, places)
def test_symbol_square_class(a, b, c, v):
    assert hilbert_symbol(a * c * c, b, v) == hilbert_symbol(a, b, v)
    assert hilbert_symbol(F(a, c * c), b, v) == hilbert_symbol(a, b, v)


@given(nonzero, nonzero)
def test_product_formula(a, b):
    q = QuaternionPair(a, b)
    prod = 1
    for v in q.relevant_places():
        prod *= hilbert_symbol(a, b, v)
    assert prod == 1


@given(st.sampled_from([2, 3, 4, 5, 6, 8]), st.lists(st.sampled_from([2, 3, 5, 7, 11]), min_size=2,
                                                     unique=True), st.integers(0, 2**32))
def test_period_minimal(per, support, seed):
    c = random_class(per, support, seed)
    assert period(c) == per
    assert (per * c).is_zero()
    assert all(not (k * c).is_zero() for k in range(1, per))


@given(st.lists(st.sampled_from([2, 3, 5, 7, 11, 13]), min_size=2, unique=True), st.integers(0, 2**32))
def test_pierce_index_two_or_one(support, seed):
    c4 = random_class(4, support, seed)
    assert period(2 * c4) == 2 and index(2 * c4) == 2
    c2 = random_class(2, support, seed)
    assert (2 * c2).is_zero() and index(2 * c2) == 1
