"""Finitely supported Dirichlet series ``sum a_n n^{-s}`` and their ring operations.

The same object holds the sine coefficients of a generator
``phi = sum a_n sqrt(2) sin(pi n x)``, since the map ``e_n -> n^{-s}`` is an
isometry; Dirichlet multiplication is then the coefficient rule of the
operator ``c -> sum c_n phi(n x)``.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Iterable, Mapping
from types import MappingProxyType
from typing import Union

import numpy as np

from .integer_arith import is_prime

ZERO_THRESHOLD = 1e-15

Number = Union[int, float, complex]


class NotInvertibleError(ArithmeticError):
    """Raised when a Dirichlet series with vanishing constant term is inverted."""


class DirichletSeries:
    """Immutable sparse map ``n -> a_n`` (``n >= 1``) with no stored zeros.

    Coefficients with modulus below ``zero_threshold`` are dropped on
    construction.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coefficients: Mapping[int, Number] | Iterable[tuple[int, Number]] = (),
                 zero_threshold: float = ZERO_THRESHOLD):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        c: dict[int, complex] = {}
        for n, a in items:
            if isinstance(n, bool) or int(n) != n or n < 1:
                raise ValueError(f"Dirichlet index must be a positive integer, got {n!r}")
            n = int(n)
            c[n] = c.get(n, 0) + complex(a)
        self._c = {n: a for n, a in sorted(c.items()) if abs(a) >= zero_threshold}
        self._hash = None

    @classmethod
    def from_list(cls, values: Iterable[Number], zero_threshold: float = ZERO_THRESHOLD) -> "DirichletSeries":
        """Coefficients ``a_1, a_2, ...`` given in order."""
        return cls({n: a for n, a in enumerate(values, start=1)}, zero_threshold)

    @classmethod
    def monomial(cls, n: int, a: Number = 1) -> "DirichletSeries":
        return cls({n: a})

    @classmethod
    def unit(cls) -> "DirichletSeries":
        return cls({1: 1})

    @property
    def coefficients(self) -> Mapping[int, complex]:
        return MappingProxyType(self._c)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._c)

    def max_index(self) -> int:
        return max(self._c) if self._c else 0

    def __getitem__(self, n: int) -> complex:
        return self._c.get(n, 0j)

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c.items())

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        terms = ", ".join(f"{n}: {a:g}" for n, a in list(self._c.items())[:8])
        more = ", ..." if len(self._c) > 8 else ""
        return f"DirichletSeries({{{terms}{more}}})"

    def __add__(self, other: "DirichletSeries") -> "DirichletSeries":
        out = dict(self._c)
        for n, b in other._c.items():
            out[n] = out.get(n, 0) + b
        return DirichletSeries(out)

    def __neg__(self) -> "DirichletSeries":
        return DirichletSeries({n: -a for n, a in self._c.items()})

    def __sub__(self, other: "DirichletSeries") -> "DirichletSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DirichletSeries):
            return convolve(self, other)
        if isinstance(other, (int, float, complex, np.number)):
            return DirichletSeries({n: a * other for n, a in self._c.items()})
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def h2_norm(self) -> float:
        return h2_norm(self)

    def __call__(self, s: complex) -> complex:
        return evaluate(self, s)

    def truncate(self, cutoff: int) -> "DirichletSeries":
        """Keep only indices ``<= cutoff``."""
        return DirichletSeries({n: a for n, a in self._c.items() if n <= cutoff})


def convolve(A: DirichletSeries, B: DirichletSeries) -> DirichletSeries:
    """Dirichlet product: ``(A*B)_n = sum_{dm=n} A_d B_m``."""
    out: dict[int, complex] = {}
    for d, a in A:
        for m, b in B:
            k = d * m
            out[k] = out.get(k, 0) + a * b
    return DirichletSeries(out)


def invert(A: DirichletSeries, cutoff: int, zero_threshold: float = ZERO_THRESHOLD) -> DirichletSeries:
    """Coefficients of ``1/A`` on indices ``<= cutoff``.

    Uses ``b_1 = 1/a_1`` and ``b_n = -(1/a_1) sum_{k | n, k > 1} a_k b_{n/k}``.
    """
    a1 = A[1]
    if a1 == 0:
        raise NotInvertibleError("a Dirichlet series is invertible only if a_1 != 0")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    higher = [(k, a) for k, a in A if 1 < k <= cutoff]
    b = [0j] * (cutoff + 1)
    b[1] = 1 / a1
    for n in range(2, cutoff + 1):
        acc = 0j
        for k, a in higher:
            if k > n:
                break
            if n % k == 0:
                acc += a * b[n // k]
        b[n] = -acc / a1
    return DirichletSeries({n: b[n] for n in range(1, cutoff + 1)}, zero_threshold)


def h2_norm(A: DirichletSeries) -> float:
    """``(sum |a_n|^2)^{1/2}``."""
    return math.sqrt(math.fsum(abs(a) ** 2 for _, a in A))


def evaluate(A: DirichletSeries, s: complex) -> complex:
    """Finite sum ``sum a_n exp(-s log n)`` (principal branch)."""
    return sum((a * cmath.exp(-s * math.log(n)) for n, a in A), 0j)


def shift(A: DirichletSeries, n: int) -> DirichletSeries:
    """Multiplication by ``n^{-s}``: coefficient ``k`` becomes ``A_{k/n}``."""
    if n < 1:
        raise ValueError("shift index must be >= 1")
    return DirichletSeries({k * n: a for k, a in A})


def from_power_series_along_prime(b: Iterable[Number], p: int) -> DirichletSeries:
    """``sum_m b_m (p^m)^{-s}``, i.e. a one-variable power series placed on prime ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return DirichletSeries({p**m: bm for m, bm in enumerate(b)})
