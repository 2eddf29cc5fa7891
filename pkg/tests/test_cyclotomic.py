import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fqsums.cyclotomic import (
    CyclotomicValue,
    cv_abs,
    cv_add,
    cv_char,
    cv_norm_squared,
    cv_scale,
    exact_abs_squared,
)
from fqsums.errors import PrimeMismatch
from fqsums.field import make_field


def _complex(v):
    return sum(c * cmath.exp(2j * math.pi * i / v.p) for i, c in enumerate(v.coeffs))


def test_canonical_form():
    v = CyclotomicValue(3, (4, 2, 1))
    assert v.coeffs == (3, 1, 0)
    assert CyclotomicValue(5, (1, 1, 1, 1, 1)) == CyclotomicValue.integer(5, 0)


def test_json_roundtrip():
    v = CyclotomicValue(7, (5, 0, 0, 1, 1, 0, 0))
    assert v.to_json() == {"p": 7, "coeffs": [5, 0, 0, 1, 1, 0, 0]}
    assert CyclotomicValue.from_json(v.to_json()) == v


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        cv_add(CyclotomicValue.integer(3, 1), CyclotomicValue.integer(5, 1))


def test_char_of_trace():
    F = make_field(3, 2)
    x = F.gamma
    assert cv_char(F, x) == CyclotomicValue.zeta(3, F.trace(x))


def test_gauss_sum_norm_is_rational():
    # quadratic Gauss sum over GF(7): 1 + 2 * sum of zeta^(squares)
    v = CyclotomicValue(7, (1, 2, 2, 0, 2, 0, 0))
    assert exact_abs_squared(v) == 7
    mag, err = cv_abs(v)
    assert abs(mag - math.sqrt(7)) <= err


@given(st.sampled_from([2, 3, 5, 7, 13]), st.data())
def test_abs_and_norm_agree_with_complex(p, data):
    coeffs = tuple(data.draw(st.lists(st.integers(-50, 50), min_size=p, max_size=p)))
    v = CyclotomicValue(p, coeffs)
    z = _complex(v)
    mag, err = cv_abs(v)
    assert abs(mag - abs(z)) <= err + 1e-12
    norm = _complex(cv_norm_squared(v))
    assert abs(norm - abs(z) ** 2) < 1e-6 * max(1, abs(z) ** 2)


@given(st.integers(-20, 20), st.integers(0, 12))
def test_rotate_and_scale(n, k):
    v = CyclotomicValue(13, tuple(range(13)))
    assert cv_abs(v.rotate(k))[0] == pytest.approx(cv_abs(v)[0])
    assert _complex(cv_scale(v, n)) == pytest.approx(n * _complex(v), abs=1e-9)
