import math
import random

from hypothesis import given, strategies as st

from hypbuild.weights import WeightVector


def test_log_int_basics():
    assert WeightVector.log_int(1).is_zero()
    assert WeightVector.log_int(4) == WeightVector.log_int(2) + WeightVector.log_int(2)
    assert WeightVector.log_int(6) == WeightVector.log_int(2) + WeightVector.log_int(3)
    assert abs(WeightVector.log_int(12).value() - math.log(12)) < 1e-12


def test_half_unit_flag():
    assert not WeightVector.log_int(2).half_unit
    assert WeightVector.half_log_int(2).half_unit
    assert not WeightVector.half_log_int(4).half_unit  # = log 2


def test_exact_equality_and_zero():
    a = WeightVector.log_int(8)
    b = WeightVector.log_int(2).scale(3)
    assert a == b
    assert (a - b).is_zero()
    assert a - b == WeightVector.zero()


def test_ordering_with_near_values():
    # log 8 vs log 9 - tiny difference handled numerically
    assert WeightVector.log_int(8) < WeightVector.log_int(9)
    # 2^13 = 8192 vs 3^8 * ... make a small but nonzero combination
    x = WeightVector.log_int(2).scale(19)  # 19 log 2 = 13.1697...
    y = WeightVector.log_int(3).scale(12)  # 12 log 3 = 13.1833...
    assert x < y


def test_halve_and_scale():
    g = WeightVector.log_int(4).halve()
    assert g == WeightVector.log_int(2)
    h = WeightVector.log_int(2) + WeightVector.log_int(3)
    assert h.scale(2).halve() == h


def test_multiple_of_half_log():
    half = WeightVector.half_log_int(2)
    assert WeightVector.zero().multiple_of_half_log(2) == 0
    assert half.multiple_of_half_log(2) == 1
    assert (-half).multiple_of_half_log(2) == -1
    assert WeightVector.log_int(2).multiple_of_half_log(2) == 2
    assert WeightVector.log_int(3).multiple_of_half_log(2) is None
    assert (WeightVector.log_int(2) + WeightVector.log_int(3)).multiple_of_half_log(2) is None


small_ints = st.integers(min_value=1, max_value=60)


@given(small_ints, small_ints, small_ints)
def test_additivity_matches_floats(a, b, c):
    va, vb, vc = (WeightVector.log_int(x) for x in (a, b, c))
    total = va + vb - vc
    assert abs(total.value() - (math.log(a) + math.log(b) - math.log(c))) < 1e-9
    # exactness: log a + log b = log(ab)
    assert va + vb == WeightVector.log_int(a * b)


@given(small_ints, small_ints)
def test_ordering_agrees_with_floats(a, b):
    va, vb = WeightVector.log_int(a), WeightVector.log_int(b)
    assert (va < vb) == (a < b)
    assert (va == vb) == (a == b)


def test_json_stable():
    v = WeightVector.half_log_int(2) - WeightVector.log_int(3)
    assert v.to_json() == {"2": "1/2", "3": "-1"}
