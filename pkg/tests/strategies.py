"""Hypothesis strategies shared across test modules."""

from hypothesis import strategies as st

from dilation_systems import DirichletSeries

gaussian = st.builds(complex, st.integers(-5, 5), st.integers(-5, 5))
small_complex = st.builds(complex, st.floats(-3, 3, allow_nan=False), st.floats(-3, 3, allow_nan=False))


def series(max_index=60, max_size=8, values=small_complex):
    return st.dictionaries(st.integers(1, max_index), values, max_size=max_size).map(DirichletSeries)


def brute_convolve(A, B):
    """Double loop over all index pairs, independent of the library code path."""
    out = {}
    for d, u in A.coefficients.items():
        for m, v in B.coefficients.items():
            out[d * m] = out.get(d * m, 0) + u * v
    return {k: v for k, v in out.items() if v != 0}
