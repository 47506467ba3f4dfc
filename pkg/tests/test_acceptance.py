"""The ten acceptance criteria, each at its stated tolerance.

Each check prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  Run directly (``python tests/test_acceptance.py``) for the
lines alone.
"""

import math
import sys
import time

import numpy as np
import pytest

from dilation_systems import cli
from dilation_systems.bivariate import BivariateDirichletSeries, classify2, convolve2, lift2
from dilation_systems.bohr import lift
from dilation_systems.classifier import ClassifyConfig, Verdict, classify, sigma_table
from dilation_systems.dirichlet import DirichletSeries, convolve, h2_norm, invert
from dilation_systems.gallery import bolu_riesz_sequence_check, Check, linear_factor_product, moebius_product, \
    outer_function
from dilation_systems.operators import gram_matrix, sigma_extremes, truncated_matrix
from dilation_systems.torus import torus_extremes

Y, N = Verdict.YES, Verdict.NO


def _random_series(rng, max_support, max_index, gaussian_ints=False, unit_term=False):
    k = int(rng.integers(1, max_support + 1))
    idx = rng.choice(np.arange(1, max_index + 1), size=k, replace=False)
    if gaussian_ints:
        vals = rng.integers(-9, 10, size=(k, 2))
    else:
        vals = rng.standard_normal((k, 2))
    c = {int(i): complex(*v) for i, v in zip(idx, vals)}
    if unit_term:
        c[1] = complex(*rng.standard_normal(2))
    return DirichletSeries(c)


def _brute(A, B):
    out = {}
    for d, u in A.coefficients.items():
        for m, v in B.coefficients.items():
            out[d * m] = out.get(d * m, 0) + u * v
    return {k: v for k, v in out.items() if v != 0}


def criterion_1():
    rng = np.random.default_rng(1)
    for _ in range(500):
        A = _random_series(rng, 50, 1000, gaussian_ints=True)
        B = _random_series(rng, 50, 1000, gaussian_ints=True)
        assert dict(convolve(A, B).coefficients) == _brute(A, B)
    worst = 0.0
    for _ in range(100):
        A = _random_series(rng, 50, 1000, unit_term=True)
        P = convolve(A, invert(A, 200))
        worst = max(worst, max(abs(P[n] - (1 if n == 1 else 0)) for n in range(1, 201)))
    assert worst < 1e-10, worst
    return f"500 exact convolutions; inverse round-trip max error {worst:.2e}"


def criterion_2():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(200):
        A = _random_series(rng, 30, 500)
        B = _random_series(rng, 30, 500)
        lhs, rhs = lift(convolve(A, B)), lift(A) * lift(B)
        keys = set(lhs.coefficients) | set(rhs.coefficients)
        worst = max(worst, max(abs(lhs[k] - rhs[k]) for k in keys))
        for D in (A, B):
            assert h2_norm(D) == math.sqrt(math.fsum(abs(v) ** 2 for _, v in lift(D)))
    assert worst < 1e-12, worst
    return f"homomorphism max deviation {worst:.2e}; isometry exact"


def criterion_3():
    cases = {
        "1-2^-s": DirichletSeries({1: 1, 2: -1}),
        "-2+2^-s": DirichletSeries({1: -2, 2: 1}),
        "(z1-2)(z2-3)": linear_factor_product([2, 3]),
        "6^-s-4": DirichletSeries({1: -4, 6: 1}),
    }
    for name, D in cases.items():
        tor = torus_extremes(lift(D))
        prev = None
        for Nc in (16, 64, 256):
            s = sigma_extremes(truncated_matrix(D, Nc))
            assert tor.lower_bound_min - 1e-6 <= s.sigma_min, (name, Nc)
            assert s.sigma_max <= tor.upper_bound_max + 1e-6, (name, Nc)
            if prev is not None:
                assert s.sigma_max >= prev.sigma_max and s.sigma_min <= prev.sigma_min, (name, Nc)
            prev = s
    return "4 symbols x N in {16, 64, 256}: sandwich and monotonicity hold"


def criterion_4():
    e2 = DirichletSeries({2: 1})
    assert np.array_equal(gram_matrix(e2, 50), np.eye(50))
    r = classify(e2)
    assert r["orthonormal_sequence"] is Y and r["riesz_basis"] is N
    return "Gram(50) is the identity; orthonormal=yes, riesz_basis=no"


def criterion_5():
    r = classify(linear_factor_product([2, 3]))
    assert r["riesz_basis"] is Y
    assert abs(r.lower_riesz_bound - 2) <= 1e-3 and abs(r.bessel_constant_upper - 12) <= 1e-3
    r1 = classify(linear_factor_product([1]))
    assert r1["bessel"] is Y and r1["lower_frame_bound"] is N
    rh = classify(linear_factor_product([0.5]))
    assert rh["riesz_sequence"] is Y and rh["riesz_basis"] is N
    return f"c=(2,3) bounds ({r.lower_riesz_bound:.7f}, {r.bessel_constant_upper:.7f}); c=1 and c=0.5 as stated"


def criterion_6():
    fam = moebius_product([0.5], 20)
    tor = torus_extremes(lift(fam.series))
    assert abs(tor.lower_bound_min - 1) <= 1e-4 and abs(tor.upper_bound_max - 1) <= 1e-4
    dev = float(np.abs(gram_matrix(fam.series, 16) - np.eye(16)).max())
    assert dev < 1e-3, dev
    return f"torus [{tor.lower_bound_min:.8f}, {tor.upper_bound_max:.8f}]; Gram deviation {dev:.2e}"


def criterion_7():
    o = outer_function(1 / 3, 256)
    target = math.sqrt(3 * math.pi ** (-2 / 3))
    rel = abs(o.h2_norm_estimate - target) / target
    assert rel <= 0.01, rel
    assert o.inv_hinf_estimate <= math.pi ** (1 / 3) + 1e-2
    rows = sigma_table(o.family.series, (64, 128, 256, 512))
    smax = [row.sigma_max for row in rows]
    assert all(b > a for a, b in zip(smax, smax[1:])), smax
    return (f"h2 estimate {o.h2_norm_estimate:.5f} (rel err {rel:.1e}); sup|1/F| {o.inv_hinf_estimate:.4f}; "
            f"sigma_max {', '.join(f'{x:.3f}' for x in smax)}")


def criterion_8():
    rng = np.random.default_rng(8)
    cfg = ClassifyConfig(sigma_schedule=(16, 32, 64))
    contradictions = 0
    for _ in range(50):
        length = int(rng.integers(4, 13))
        a = rng.standard_normal((length, 2)) @ np.array([1, 1j])
        rest = sum(abs(x) for i, x in enumerate(a) if i != 1)
        a[1] = a[1] / abs(a[1]) * rest * (1 + rng.uniform(0.05, 1.0))
        D = DirichletSeries.from_list(a)
        assert bolu_riesz_sequence_check(D) is Check.SATISFIED
        if classify(D, cfg)["riesz_sequence"] is not Y:
            contradictions += 1
    assert contradictions == 0, contradictions
    return "50 vectors satisfying the dominance condition: all riesz_sequence=yes"


def criterion_9():
    rng = np.random.default_rng(9)

    def rand2():
        k = int(rng.integers(1, 8))
        keys = {(int(rng.integers(1, 30)), int(rng.integers(1, 30))) for _ in range(k)}
        return BivariateDirichletSeries({key: complex(*rng.integers(-9, 10, 2)) for key in keys})

    for _ in range(200):
        A, B = rand2(), rand2()
        out = {}
        for (d1, d2), u in A:
            for (e1, e2), v in B:
                out[(d1 * e1, d2 * e2)] = out.get((d1 * e1, d2 * e2), 0) + u * v
        assert dict(convolve2(A, B).coefficients) == {k: v for k, v in out.items() if v != 0}
        assert A.l2_norm() == math.sqrt(math.fsum(abs(v) ** 2 for _, v in lift2(A)))
    factor = DirichletSeries({1: -2, 2: 1})
    r = classify2(BivariateDirichletSeries.tensor(factor, factor))
    assert r["riesz_basis"] is Y
    assert abs(r.lower_riesz_bound - 1) <= 1e-3 and abs(r.bessel_constant_upper - 9) <= 1e-3
    return f"200 exact convolutions; tensor bounds ({r.lower_riesz_bound:.7f}, {r.bessel_constant_upper:.7f})"


def criterion_10(tmp_path):
    src = tmp_path / "lf.txt"
    src.write_text("1 6 0\n2 -3 0\n3 -2 0\n6 1 0\n")
    config = cli.resolve_config(cli.build_parser().parse_args(["classify", str(src)]), environ={})
    first, _ = cli.cmd_classify(str(src), config)
    second, _ = cli.cmd_classify(str(src), config)
    assert first.encode() == second.encode()
    return f"two runs byte-identical ({len(first)} bytes)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _run(k, fn, *args):
    from conftest import ACCEPTANCE_LINES  # noqa: PLC0415

    t0 = time.perf_counter()
    try:
        detail = fn(*args)
    except AssertionError as exc:
        ACCEPTANCE_LINES[k] = f"FAIL criterion {k:2d}: {exc!r} [{time.perf_counter() - t0:.1f}s]"
        print(ACCEPTANCE_LINES[k])
        raise
    ACCEPTANCE_LINES[k] = f"PASS criterion {k:2d}: {detail} [{time.perf_counter() - t0:.1f}s]"
    print(ACCEPTANCE_LINES[k])


@pytest.mark.parametrize("k", range(1, 11))
def test_acceptance(k, tmp_path):
    fn = CRITERIA[k - 1]
    _run(k, fn, tmp_path) if k == 10 else _run(k, fn)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
