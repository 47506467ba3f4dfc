"""Bohr lift between Dirichlet series and polynomials in the prime variables.

``n^{-s}`` corresponds to the monomial ``z^alpha(n)`` where ``alpha(n)`` is the
exponent vector of ``n``; evaluating the lift at ``z = (2^{-s}, 3^{-s}, ...)``
recovers the Dirichlet series.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from functools import cached_property
from types import MappingProxyType

import numpy as np

from .dirichlet import ZERO_THRESHOLD, DirichletSeries
from .integer_arith import MultiIndex, alpha, index, nth_prime, trim


class DimensionMismatchError(ValueError):
    pass


class MonomialPolynomial:
    """Sparse polynomial ``sum c_alpha z^alpha`` keyed by trimmed multi-indices."""

    def __init__(self, coefficients: Mapping[MultiIndex, complex] | Iterable = (),
                 zero_threshold: float = ZERO_THRESHOLD):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        c: dict[MultiIndex, complex] = {}
        for a, v in items:
            if any(e < 0 for e in a):
                raise ValueError(f"negative exponent in {a!r}")
            key = trim(a)
            c[key] = c.get(key, 0) + complex(v)
        self._c = {k: v for k, v in sorted(c.items()) if abs(v) >= zero_threshold}

    @classmethod
    def constant(cls, value: complex = 1) -> "MonomialPolynomial":
        return cls({(): value})

    @classmethod
    def variable(cls, i: int) -> "MonomialPolynomial":
        """``z_i`` with 1-based ``i``."""
        return cls({(0,) * (i - 1) + (1,): 1})

    @property
    def coefficients(self) -> Mapping[MultiIndex, complex]:
        return MappingProxyType(self._c)

    @cached_property
    def dimension(self) -> int:
        return max((len(a) for a in self._c), default=0)

    def __getitem__(self, a: MultiIndex) -> complex:
        return self._c.get(trim(a), 0j)

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialPolynomial):
            return NotImplemented
        return self._c == other._c

    def __repr__(self) -> str:
        return f"MonomialPolynomial({dict(list(self._c.items())[:6])}{'...' if len(self._c) > 6 else ''})"

    def __add__(self, other: "MonomialPolynomial") -> "MonomialPolynomial":
        out = dict(self._c)
        for a, v in other._c.items():
            out[a] = out.get(a, 0) + v
        return MonomialPolynomial(out)

    def __sub__(self, other: "MonomialPolynomial") -> "MonomialPolynomial":
        return self + other.scale(-1)

    def scale(self, s: complex) -> "MonomialPolynomial":
        return MonomialPolynomial({a: v * s for a, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, MonomialPolynomial):
            return multiply(self, other)
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def coefficient_norm(self, p: float = 2) -> float:
        v = np.abs(np.fromiter(self._c.values(), dtype=complex, count=len(self._c)))
        return float(np.linalg.norm(v, ord=p)) if len(v) else 0.0

    def arrays(self, dim: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Exponent matrix ``(K, dim)`` and coefficient vector ``(K,)``."""
        d = self.dimension if dim is None else dim
        if d < self.dimension:
            raise DimensionMismatchError(f"need at least {self.dimension} variables, got {d}")
        E = np.zeros((len(self._c), d), dtype=np.int64)
        for row, a in enumerate(self._c):
            E[row, : len(a)] = a
        c = np.fromiter(self._c.values(), dtype=complex, count=len(self._c))
        return E, c

    def __call__(self, z) -> complex:
        return eval_point(self, z)


def multiply(f: MonomialPolynomial, g: MonomialPolynomial) -> MonomialPolynomial:
    """Polynomial product by adding exponent vectors."""
    out: dict[MultiIndex, complex] = {}
    for a, u in f:
        for b, v in g:
            n = max(len(a), len(b))
            key = trim(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))
            out[key] = out.get(key, 0) + u * v
    return MonomialPolynomial(out)


def lift(D: DirichletSeries) -> MonomialPolynomial:
    """Coefficient of ``z^alpha(n)`` is ``D_n``."""
    return MonomialPolynomial({alpha(n): a for n, a in D})


def unlift(f: MonomialPolynomial) -> DirichletSeries:
    """Inverse of :func:`lift`."""
    return DirichletSeries({index(a): v for a, v in f})


def eval_point(f: MonomialPolynomial, z) -> complex:
    """``sum c_alpha z^alpha`` at a point with ``len(z) >= f.dimension``."""
    z = np.asarray(z, dtype=complex).ravel()
    if len(z) < f.dimension:
        raise DimensionMismatchError(f"point has {len(z)} coordinates, polynomial needs {f.dimension}")
    total = 0j
    for a, v in f:
        term = v
        for i, e in enumerate(a):
            if e:
                term *= z[i] ** e
        total += term
    return complex(total)


def degree_set(f: MonomialPolynomial) -> set[MultiIndex]:
    """Support of ``f``, padded to ``f.dimension`` coordinates."""
    d = f.dimension
    return {a + (0,) * (d - len(a)) for a, _ in f}


def prime_point(s: complex, dim: int) -> np.ndarray:
    """``(p_1^{-s}, ..., p_dim^{-s})``; evaluating a lift here gives the series at ``s``."""
    return np.array([np.exp(-s * np.log(nth_prime(i + 1))) for i in range(dim)], dtype=complex)
