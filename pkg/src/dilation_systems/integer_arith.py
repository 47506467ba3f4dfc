"""Prime and factorization utilities behind the Bohr correspondence.

An integer ``n = 2**a1 * 3**a2 * 5**a3 * ...`` is identified with the
multi-index ``(a1, a2, a3, ...)`` (trailing zeros trimmed).  Factorization
uses a smallest-prime-factor sieve up to a configurable cap and falls back
to trial division above it.
"""

from __future__ import annotations

import math
import threading
from typing import Optional

import numpy as np

Factorization = tuple[tuple[int, int], ...]
MultiIndex = tuple[int, ...]

DEFAULT_SIEVE_CAP = 10**6


class _Sieve:
    """Lazily built smallest-prime-factor table plus the ordered prime list."""

    def __init__(self, cap: int = DEFAULT_SIEVE_CAP):
        self.cap = int(cap)
        self._spf: Optional[np.ndarray] = None
        self._primes: Optional[np.ndarray] = None
        self._lock = threading.Lock()

    def _build(self) -> None:
        with self._lock:
            if self._spf is not None:
                return
            n = self.cap
            spf = np.zeros(n + 1, dtype=np.int64)
            for p in range(2, math.isqrt(n) + 1):
                if spf[p] == 0:
                    block = spf[p * p :: p]
                    block[block == 0] = p
            primes = np.flatnonzero(spf == 0)
            primes = primes[primes >= 2]
            spf[primes] = primes
            self._primes = primes
            self._spf = spf

    @property
    def spf(self) -> np.ndarray:
        if self._spf is None:
            self._build()
        return self._spf

    @property
    def primes(self) -> np.ndarray:
        if self._primes is None:
            self._build()
        return self._primes


_sieve = _Sieve()


def set_sieve_cap(cap: int) -> None:
    """Replace the shared sieve by one covering ``1..cap`` (built on first use)."""
    global _sieve
    if cap < 2:
        raise ValueError("sieve cap must be at least 2")
    _sieve = _Sieve(cap)


def sieve_cap() -> int:
    return _sieve.cap


def _check_positive(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"expected a positive integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return n


def is_prime(n: int) -> bool:
    n = int(n)
    if n < 2:
        return False
    if n <= _sieve.cap:
        return int(_sieve.spf[n]) == n
    return _miller_rabin(n)


# these bases make Miller-Rabin deterministic below 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _miller_rabin(n: int) -> bool:
    if any(n % b == 0 for b in _MR_BASES):
        return n in _MR_BASES
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    if n >= 3_317_044_064_679_887_385_961_981:
        # outside the proven range fall back to trial division
        return all(n % q for q in range(43, math.isqrt(n) + 1, 2))
    return True


def factorize(n: int) -> Factorization:
    """Return ``((p1, e1), (p2, e2), ...)`` with ``p1 < p2 < ...`` and product ``n``.

    >>> factorize(12)
    ((2, 2), (3, 1))
    """
    n = _check_positive(n)
    out: list[tuple[int, int]] = []
    # trial division until what is left fits in the sieve
    p = 2
    while n > _sieve.cap:
        if p * p > n:
            out.append((n, 1))
            return tuple(out)
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p = 3 if p == 2 else p + 2
    spf = _sieve.spf
    while n > 1:
        q = int(spf[n])
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        if out and out[-1][0] == q:
            out[-1] = (q, out[-1][1] + e)
        else:
            out.append((q, e))
    return tuple(out)


def prime_position(p: int) -> int:
    """1-based position of the prime ``p`` in 2, 3, 5, 7, ..."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return prime_count(p)


def nth_prime(k: int) -> int:
    """The ``k``-th prime, 1-based (``nth_prime(1) == 2``)."""
    k = _check_positive(k)
    primes = _sieve.primes
    if k <= len(primes):
        return int(primes[k - 1])
    m, count = int(primes[-1]), len(primes)
    while count < k:
        m += 2
        if is_prime(m):
            count += 1
    return m


def alpha(n: int) -> MultiIndex:
    """Exponent vector of ``n`` over the ordered primes.

    >>> alpha(50)
    (1, 0, 2)
    """
    fac = factorize(n)
    if not fac:
        return ()
    exps = [0] * prime_position(fac[-1][0])
    for p, e in fac:
        exps[prime_position(p) - 1] = e
    return tuple(exps)


def trim(m) -> MultiIndex:
    """Drop trailing zeros so the multi-index is in canonical form."""
    m = list(m)
    while m and m[-1] == 0:
        m.pop()
    return tuple(int(x) for x in m)


def index(m: MultiIndex, limit: Optional[int] = None) -> int:
    """Inverse of :func:`alpha`: ``prod(nth_prime(i+1) ** m[i])``.

    Python integers do not wrap; pass ``limit`` to get an ``OverflowError``
    when the result would exceed it (e.g. ``2**64 - 1``).
    """
    n = 1
    for i, e in enumerate(m):
        if e < 0:
            raise ValueError(f"negative exponent in multi-index {m!r}")
        if e:
            n *= nth_prime(i + 1) ** int(e)
            if limit is not None and n > limit:
                raise OverflowError(f"index of {m!r} exceeds {limit}")
    return n


def prime_count(N: int) -> int:
    """Number of primes ``<= N``."""
    N = _check_positive(N)
    if N <= _sieve.cap:
        return int(np.searchsorted(_sieve.primes, N, side="right"))
    flags = np.ones(N + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(N) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return int(flags.sum())


def divisors(n: int) -> list[int]:
    """All divisors of ``n`` in ascending order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def total_degree(n: int) -> int:
    """``|alpha(n)|_1``, the number of prime factors counted with multiplicity."""
    return sum(e for _, e in factorize(n))
