import math

import numpy as np
import pytest

from dilation_systems.classifier import (
    VERDICT_KEYS,
    ClassifyConfig,
    FrameReport,
    TruncatedFamily,
    Verdict,
    _threshold,
    classify,
)
from dilation_systems.dirichlet import DirichletSeries
from dilation_systems.gallery import linear_factor_product
from dilation_systems.operators import gram_matrix

Y, N, I = Verdict.YES, Verdict.NO, Verdict.INCONCLUSIVE
FAST = ClassifyConfig(sigma_schedule=(8, 16, 32))


def verdicts(report: FrameReport) -> dict:
    return {k: v.value for k, v in report.verdicts.items()}


def test_verdict_conjunction():
    assert Y & Y is Y
    assert Y & N is N and N & I is N
    assert Y & I is I and I & I is I


def test_threshold_three_way():
    assert _threshold(2e-6, 3e-6, 1e-6) is Y
    assert _threshold(0, 5e-7, 1e-6) is N
    assert _threshold(5e-7, 2e-6, 1e-6) is I


def test_e2_is_orthonormal_not_riesz_basis():
    r = classify(DirichletSeries({2: 1}))
    assert r["orthonormal_sequence"] is Y
    assert r["riesz_sequence"] is Y
    assert r["riesz_basis"] is N and r["lower_frame_bound"] is N
    assert r.polydisk_min == 0


def test_linear_factor_report_fields():
    r = classify(linear_factor_product([2, 3]), FAST)
    assert r["riesz_basis"] is Y and r["orthonormal_sequence"] is N
    assert abs(r.lower_riesz_bound - 2) < 1e-3 and abs(r.bessel_constant_upper - 12) < 1e-3
    assert r.polydisk_min == pytest.approx(2, abs=1e-3)
    assert [row.N for row in r.sigma_table] == [8, 16, 32]
    for row in r.sigma_table:
        assert r.lower_riesz_bound - 1e-6 <= row.sigma_min <= row.sigma_max <= r.bessel_constant_upper + 1e-6


def test_boundary_zero_is_bessel_only():
    r = classify(linear_factor_product([1]), FAST)
    assert verdicts(r) == {"bessel": "yes", "lower_frame_bound": "no", "riesz_sequence": "no",
                           "riesz_basis": "no", "orthonormal_sequence": "no"}


def test_invariants_of_verdict_logic():
    for D in (DirichletSeries({1: 1, 2: -0.5}), DirichletSeries({1: 3, 6: 1}), DirichletSeries({3: 1j})):
        r = classify(D, FAST)
        if r["riesz_basis"] is Y:
            assert r["bessel"] is Y and r.polydisk_min > FAST.tolerance
        if r["riesz_sequence"] is Y:
            assert r["bessel"] is Y and r.lower_riesz_bound > FAST.tolerance
        if r["orthonormal_sequence"] is Y:
            assert abs(r.torus.lower_bound_min - 1) <= FAST.tolerance
            assert abs(r.torus.upper_bound_max - 1) <= FAST.tolerance


def test_tail_widens_decision():
    D = linear_factor_product([1.0000002])
    exact = classify(D, FAST)
    assert exact["riesz_sequence"] is N  # min |f| = 2e-7 is below the tolerance
    padded = classify(TruncatedFamily(linear_factor_product([1.5]), tail_l1=0.5), FAST)
    assert padded["riesz_sequence"] is I


def test_straddling_certificate_is_inconclusive():
    cfg = ClassifyConfig(tolerance=1e-6, sigma_schedule=(8,), torus_resolution=8, cell_budget=64)
    r = classify(linear_factor_product([1 + 1e-6]), cfg)
    assert r["riesz_sequence"] in (I, N)
    assert r["riesz_sequence"] is not Y


def test_unbounded_tail_without_divergence_is_inconclusive():
    r = classify(TruncatedFamily(DirichletSeries({1: 1}), tail_l1=math.inf), FAST)
    assert r["bessel"] is I
    assert any("bessel undecided" in n for n in r.notes)


def test_dimension_cap_gives_inconclusive():
    D = DirichletSeries({1: 1, 2 * 3 * 5 * 7 * 11 * 13 * 17: 0.5})
    r = classify(D, FAST)
    assert r.dimension_capped and all(r[k] is I for k in VERDICT_KEYS)
    assert "dimension too large" in r.notes[0]
    assert classify(D, ClassifyConfig(dimension_cap=7, sigma_schedule=(8,)))["bessel"] is Y


def test_config_validation():
    with pytest.raises(ValueError):
        ClassifyConfig(tolerance=0)
    with pytest.raises(ValueError):
        ClassifyConfig(sigma_schedule=(16, 8))
    with pytest.raises(ValueError):
        TruncatedFamily(DirichletSeries.unit(), tail_l1=-1)


def test_determinism():
    D = linear_factor_product([2, 1.5j])
    assert classify(D, FAST).to_dict() == classify(D, FAST).to_dict()


def test_gram_cross_check_when_orthonormal():
    D = DirichletSeries({6: -1j})
    r = classify(D, FAST)
    assert r["orthonormal_sequence"] is Y
    G = gram_matrix(D, 16)
    assert np.abs(G - np.eye(16)).max() <= 2 * r.truncation_tail * D.h2_norm() + FAST.tolerance
