"""Double Dirichlet series ``sum a_{m,n} m^{-s} n^{-t}`` and their classification.

The lift interleaves the two prime groups: the exponent of the i-th prime in
``m`` sits at variable position ``2i - 1`` and that of ``n`` at ``2i``
(1-based).  Under this embedding the bivariate pipeline is the univariate one.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from types import MappingProxyType

import numpy as np

from .bohr import MonomialPolynomial, unlift
from .classifier import ClassifyConfig, FrameReport, classify_lift
from .dirichlet import ZERO_THRESHOLD, DirichletSeries
from .integer_arith import MultiIndex, alpha, index, trim

Pair = tuple[int, int]

EXTRAPOLATION_NOTE = ("orthonormal_sequence for double series uses the unimodular-lift test by analogy "
                      "with the single-variable case (extrapolation)")


class BivariateDirichletSeries:
    """Immutable sparse map ``(m, n) -> a_{m,n}`` with no stored zeros."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[Pair, complex] | Iterable = (),
                 zero_threshold: float = ZERO_THRESHOLD):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        c: dict[Pair, complex] = {}
        for key, v in items:
            m, n = (int(k) for k in key)
            if m < 1 or n < 1:
                raise ValueError(f"indices must be >= 1, got {(m, n)}")
            c[(m, n)] = c.get((m, n), 0) + complex(v)
        self._c = {k: v for k, v in sorted(c.items()) if abs(v) >= zero_threshold}

    @classmethod
    def monomial(cls, m: int, n: int, value: complex = 1) -> "BivariateDirichletSeries":
        return cls({(m, n): value})

    @classmethod
    def tensor(cls, B: DirichletSeries, C: DirichletSeries) -> "BivariateDirichletSeries":
        """``a_{m,n} = b_m c_n``."""
        return cls({(m, n): u * v for m, u in B for n, v in C})

    @property
    def coefficients(self) -> Mapping[Pair, complex]:
        return MappingProxyType(self._c)

    @property
    def support(self) -> frozenset[Pair]:
        return frozenset(self._c)

    def __getitem__(self, key: Pair) -> complex:
        return self._c.get(tuple(key), 0j)

    def __iter__(self):
        return iter(self._c.items())

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateDirichletSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(self._c.items()))

    def __repr__(self) -> str:
        return f"BivariateDirichletSeries({self._c!r})"

    def __mul__(self, other):
        if isinstance(other, BivariateDirichletSeries):
            return convolve2(self, other)
        return NotImplemented

    def l2_norm(self) -> float:
        return math.sqrt(math.fsum(abs(v) ** 2 for v in self._c.values()))

    def __call__(self, s: complex, t: complex) -> complex:
        return evaluate2(self, s, t)


def convolve2(A: BivariateDirichletSeries, B: BivariateDirichletSeries) -> BivariateDirichletSeries:
    """Componentwise Dirichlet convolution."""
    out: dict[Pair, complex] = {}
    for (d1, d2), u in A:
        for (e1, e2), v in B:
            key = (d1 * e1, d2 * e2)
            out[key] = out.get(key, 0) + u * v
    return BivariateDirichletSeries(out)


def interleave(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        out.append(a[i] if i < len(a) else 0)
        out.append(b[i] if i < len(b) else 0)
    return trim(tuple(out))


def deinterleave(e: MultiIndex) -> tuple[MultiIndex, MultiIndex]:
    return trim(tuple(e[0::2])), trim(tuple(e[1::2]))


def lift2(A: BivariateDirichletSeries) -> MonomialPolynomial:
    return MonomialPolynomial({interleave(alpha(m), alpha(n)): v for (m, n), v in A})


def unlift2(f: MonomialPolynomial) -> BivariateDirichletSeries:
    out = {}
    for e, v in f:
        a, b = deinterleave(e)
        out[(index(a), index(b))] = v
    return BivariateDirichletSeries(out)


def evaluate2(A: BivariateDirichletSeries, s: complex, t: complex) -> complex:
    """Finite sum ``sum a_{m,n} m^{-s} n^{-t}``."""
    total = 0j
    for (m, n), v in A:
        total += v * np.exp(-s * math.log(m) - t * math.log(n))
    return complex(total)


def classify2(a: BivariateDirichletSeries, config: ClassifyConfig | None = None) -> FrameReport:
    """Classify the two-variable dilation system of ``a``.

    Singular values are computed for the univariate series ``unlift(lift2(a))``,
    whose multiplication operator is unitarily equivalent to the bivariate one.
    """
    config = config or ClassifyConfig()
    f = lift2(a)
    return classify_lift(f, unlift(f), 0.0, config, notes=[EXTRAPOLATION_NOTE])
