import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import brute_convolve, gaussian, series, small_complex

from dilation_systems.dirichlet import (
    DirichletSeries,
    NotInvertibleError,
    convolve,
    evaluate,
    from_power_series_along_prime,
    h2_norm,
    invert,
    shift,
)

D = DirichletSeries


def test_convolve_examples():
    assert convolve(D({1: 1, 2: 1}), D({1: 1, 3: 1})) == D({1: 1, 2: 1, 3: 1, 6: 1})
    A = D({1: 2, 5: -1j, 12: 3})
    assert convolve(A, D.unit()) == A
    assert convolve(D({1: 1, 2: -1}), D({1: 1, 2: 1, 4: 1, 8: 1})) == D({1: 1, 16: -1})


@given(series(max_size=12, values=gaussian), series(max_size=12, values=gaussian))
def test_convolve_matches_brute_force(A, B):
    assert dict(convolve(A, B).coefficients) == brute_convolve(A, B)


@given(series(values=gaussian), series(values=gaussian), series(values=gaussian))
def test_ring_laws(A, B, C):
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C


def test_invert_examples():
    assert invert(D.unit(), 50) == D.unit()
    assert invert(D({1: 1, 2: -1}), 8) == D({1: 1, 2: 1, 4: 1, 8: 1})
    assert invert(D({1: 2, 2: 1}), 4) == D({1: 0.5, 2: -0.25, 4: 0.125})


def test_invert_requires_unit_term():
    with pytest.raises(NotInvertibleError):
        invert(D({2: 1}), 10)


@settings(max_examples=60)
@given(series(max_index=40), st.integers(1, 150))
def test_invert_is_right_inverse(A, cutoff):
    A = A + D({1: 2.0})  # keep a_1 well away from zero
    prod = convolve(A, invert(A, cutoff)).truncate(cutoff)
    err = max(abs(prod[n] - (1 if n == 1 else 0)) for n in range(1, cutoff + 1))
    assert err < 1e-9


def test_h2_norm_examples():
    assert h2_norm(D()) == 0
    assert h2_norm(D({2: 1})) == 1
    assert h2_norm(D({1: 3, 5: 4})) == 5


@given(series(), st.integers(1, 500))
def test_shift_preserves_norm(A, n):
    assert h2_norm(shift(A, n)) == h2_norm(A)


def test_evaluate_examples():
    assert evaluate(D({2: 1}), 1) == pytest.approx(0.5)
    assert evaluate(D({1: 1, 3: 1}), 0) == pytest.approx(2)
    assert evaluate(D({1: 1, 2: -1}), 1j * math.pi / math.log(2)) == pytest.approx(2, abs=1e-12)


@given(series(max_size=6), series(max_size=6), small_complex)
def test_evaluation_is_multiplicative(A, B, s):
    lhs = evaluate(convolve(A, B), s)
    rhs = evaluate(A, s) * evaluate(B, s)
    scale = 1 + sum(abs(v) for _, v in A) * sum(abs(v) for _, v in B) * 60 ** (3 * abs(s.real))
    assert abs(lhs - rhs) <= 1e-10 * scale


def test_shift_examples():
    assert shift(D.unit(), 5) == D({5: 1})
    assert shift(D({1: 1, 2: 1}), 3) == D({3: 1, 6: 1})
    A = D({1: 1j, 4: 2})
    assert shift(A, 1) == A


def test_from_power_series_along_prime():
    assert from_power_series_along_prime([1], 2) == D.unit()
    assert from_power_series_along_prime([0, 1], 2) == D({2: 1})
    assert from_power_series_along_prime([0.5, 0.75, 0.375], 2) == D({1: 0.5, 2: 0.75, 4: 0.375})
    assert from_power_series_along_prime([1, 2, 3], 5) == D({1: 1, 5: 2, 25: 3})
    with pytest.raises(ValueError):
        from_power_series_along_prime([1, 1], 4)


def test_zero_threshold_drops_tiny_coefficients():
    A = D({1: 1, 2: 1e-16, 3: 1e-14})
    assert A.support == (1, 3)
    assert D({1: 1, 2: 1e-16}, zero_threshold=0).support == (1, 2)


def test_indices_must_be_positive():
    with pytest.raises(ValueError):
        D({0: 1})


def test_from_list_is_one_based():
    assert D.from_list([1, 0, 2]) == D({1: 1, 3: 2})


def test_value_semantics():
    A = D({1: 1, 2: 2})
    assert hash(A) == hash(D({2: 2, 1: 1}))
    with pytest.raises(TypeError):
        A.coefficients[3] = 1
    assert np.isclose(A(0.5), 1 + 2 * cmath.exp(-0.5 * math.log(2)))
