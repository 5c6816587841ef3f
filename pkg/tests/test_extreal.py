import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cat0 import NEG_INF, POS_INF, ExtReal, ext, inf, scale, sup


def test_finite_roundtrip():
    v = ExtReal(Fraction(7, 6))
    assert v.is_finite and not v.is_pos_inf and not v.is_neg_inf
    assert v.value == Fraction(7, 6)
    assert v.raw == Fraction(7, 6)
    assert ext(v) is v or ext(v) == v


def test_infinite_constants():
    assert POS_INF.is_pos_inf and not POS_INF.is_finite
    assert NEG_INF.is_neg_inf and not NEG_INF.is_finite
    with pytest.raises(ValueError):
        POS_INF.value
    with pytest.raises(ValueError):
        NEG_INF.value


def test_nan_rejected():
    with pytest.raises(ValueError):
        ExtReal(float("nan"))


def test_addition_rules():
    assert ExtReal(2) + ExtReal(Fraction(1, 2)) == ExtReal(Fraction(5, 2))
    assert POS_INF + ExtReal(5) == POS_INF
    assert NEG_INF + ExtReal(5) == NEG_INF
    assert POS_INF + POS_INF == POS_INF
    with pytest.raises(ValueError):
        POS_INF + NEG_INF
    with pytest.raises(ValueError):
        NEG_INF + POS_INF


def test_ordering():
    assert NEG_INF < ExtReal(-(10**9)) < ExtReal(0) < ExtReal(10**9) < POS_INF
    assert not (POS_INF < POS_INF)
    assert POS_INF <= POS_INF
    assert ExtReal(1) >= 1 and ExtReal(1) <= 1


def test_scale_zero_times_infinity_is_zero():
    assert scale(0, POS_INF) == ExtReal(0)
    assert scale(0, NEG_INF) == ExtReal(0)
    assert scale(Fraction(1, 2), POS_INF) == POS_INF
    assert scale(-2, POS_INF) == NEG_INF
    assert scale(-2, NEG_INF) == POS_INF
    assert scale(Fraction(1, 2), 3) == ExtReal(Fraction(3, 2))


def test_empty_sup_and_inf_conventions():
    assert sup([]) == NEG_INF
    assert inf([]) == POS_INF


def test_sup_inf_mixed():
    vals = [ExtReal(1), NEG_INF, ExtReal(Fraction(3, 2))]
    assert sup(vals) == ExtReal(Fraction(3, 2))
    assert inf(vals) == NEG_INF
    assert sup([POS_INF, ExtReal(0)]) == POS_INF


def test_hashable_and_equality():
    assert len({ExtReal(1), ExtReal(1), POS_INF, NEG_INF}) == 3
    assert ExtReal(Fraction(1, 2)) == ExtReal(0.5)


@given(st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=8))
def test_sup_bounds_every_element(xs):
    s = sup(xs)
    i = inf(xs)
    assert all(i <= ExtReal(x) <= s for x in xs)
    assert s.value == max(xs) and i.value == min(xs)


@given(
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=-20, max_value=20),
)
def test_addition_matches_plain_arithmetic(a, b):
    assert (ExtReal(a) + ExtReal(b)).value == a + b


def test_float_payloads_survive():
    v = ExtReal(0.25)
    assert v.is_finite and v.value == 0.25
    assert math.isinf(float("inf")) and POS_INF != ExtReal(1e308)
