"""Matrix realizations of the dilation operator on truncated bases.

Column ``m`` of the truncated operator holds the coefficients of
``m^{-s} D(s)``, i.e. the sine coefficients of ``phi(m x)``.  Rows are kept
only where some column is nonzero; the nominal row cutoff is
``N * max(supp D)`` so that no column loses mass.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .dirichlet import DirichletSeries, convolve

log = logging.getLogger(__name__)

DENSE_COLUMN_LIMIT = 512
DENSE_ENTRY_LIMIT = 4_000_000


def dilation_expansion(a: DirichletSeries, n: int, cutoff: int | None = None) -> DirichletSeries:
    """Sine coefficients of ``phi(n x)`` up to ``cutoff``: ``a_k`` moves to ``k n``."""
    if n < 1:
        raise ValueError("dilation factor must be >= 1")
    return DirichletSeries({k * n: v for k, v in a if cutoff is None or k * n <= cutoff})


def synthesis_apply(a: DirichletSeries, c: Sequence[complex]) -> DirichletSeries:
    """Sine coefficients of ``sum_d c_d phi(d x)``; ``c`` is indexed from 1."""
    return convolve(DirichletSeries.from_list(c), a)


@dataclass(frozen=True)
class TruncatedOperator:
    """Multiplication by ``symbol`` restricted to the first ``column_cutoff`` basis vectors.

    ``matrix`` is a sparse ``(len(rows), column_cutoff)`` array whose row ``i``
    corresponds to basis index ``rows[i]``.
    """

    symbol: DirichletSeries
    column_cutoff: int
    row_cutoff: int
    rows: tuple[int, ...]
    matrix: sp.csc_matrix

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def entry(self, n: int, m: int) -> complex:
        if not 1 <= m <= self.column_cutoff:
            raise IndexError(f"column {m} outside 1..{self.column_cutoff}")
        if m <= 0 or n % m:
            return 0j
        return self.symbol[n // m]

    def entries(self) -> dict[tuple[int, int], complex]:
        coo = self.matrix.tocoo()
        return {(self.rows[i], int(j) + 1): complex(v) for i, j, v in zip(coo.row, coo.col, coo.data)}

    def column(self, m: int) -> DirichletSeries:
        col = self.matrix.getcol(m - 1).tocoo()
        return DirichletSeries({self.rows[i]: v for i, v in zip(col.row, col.data)})

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def normal_matrix(self) -> np.ndarray:
        """Dense ``T^H T``; entry ``(j, k)`` is ``<phi_k, phi_j>``."""
        M = self.matrix
        return (M.conj().T @ M).toarray()

    def to_text(self) -> str:
        """``row col re im`` triplets (1-based basis indices), column-major."""
        lines = [f"# truncated operator N={self.column_cutoff} R={self.row_cutoff}"]
        for (n, m), v in sorted(self.entries().items(), key=lambda kv: (kv[0][1], kv[0][0])):
            lines.append(f"{n} {m} {v.real!r} {v.imag!r}")
        return "\n".join(lines) + "\n"

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())


def truncated_matrix(D: DirichletSeries, N: int) -> TruncatedOperator:
    if N < 1:
        raise ValueError("N must be >= 1")
    support = sorted(D.support)
    row_set = sorted({m * k for m in range(1, N + 1) for k in support})
    where = {n: i for i, n in enumerate(row_set)}
    ri, ci, vals = [], [], []
    for m in range(1, N + 1):
        for k in support:
            ri.append(where[m * k])
            ci.append(m - 1)
            vals.append(D[k])
    mat = sp.csc_matrix((np.array(vals, dtype=complex), (ri, ci)), shape=(len(row_set), N))
    return TruncatedOperator(D, N, N * (support[-1] if support else 1), tuple(row_set), mat)


@dataclass(frozen=True)
class SigmaExtremes:
    sigma_min: float
    sigma_max: float
    converged: bool = True
    method: str = "dense-svd"
    iterations: int = 0


def sigma_extremes(T: TruncatedOperator, tol: float = 1e-8, max_iter: int = 10_000) -> SigmaExtremes:
    """Smallest and largest singular values of the truncated operator."""
    rows, N = T.shape
    if rows == 0:
        return SigmaExtremes(0.0, 0.0)
    if N <= DENSE_COLUMN_LIMIT:
        if rows * N <= DENSE_ENTRY_LIMIT:
            s = scipy.linalg.svdvals(T.toarray())
            return SigmaExtremes(float(s[-1]) if rows >= N else 0.0, float(s[0]))
        ev = scipy.linalg.eigvalsh(T.normal_matrix())
        return SigmaExtremes(float(np.sqrt(max(ev[0], 0.0))), float(np.sqrt(max(ev[-1], 0.0))),
                             method="dense-normal-eig")
    return _iterative_extremes(T, tol, max_iter)


def _iterative_extremes(T: TruncatedOperator, tol: float, max_iter: int) -> SigmaExtremes:
    M = T.matrix.tocsr()
    G = (M.conj().T @ M).tocsc()
    N = G.shape[0]
    rng = np.random.default_rng(0)
    v = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    v /= np.linalg.norm(v)
    lam, converged, it = 0.0, False, 0
    for it in range(1, max_iter + 1):
        w = G @ v
        new = float(np.real(np.vdot(v, w)))
        nw = np.linalg.norm(w)
        if nw == 0:
            lam, converged = 0.0, True
            break
        v = w / nw
        if abs(new - lam) <= tol * abs(new):
            lam, converged = new, True
            break
        lam = new
    smax = float(np.sqrt(max(lam, 0.0)))

    smin, ok_min = float("nan"), False
    try:
        lu = spla.splu(G)
        op = spla.LinearOperator(G.shape, matvec=lu.solve, dtype=complex)
        vals = spla.eigsh(op, k=1, which="LM", tol=tol, maxiter=max_iter, return_eigenvectors=False)
        smin, ok_min = float(np.sqrt(max(1.0 / vals[0].real, 0.0))), True
    except (RuntimeError, spla.ArpackNoConvergence) as exc:
        log.warning("smallest singular value did not converge: %s", exc)
    return SigmaExtremes(smin, smax, converged and ok_min, method="power+shift-invert", iterations=it)


def sigma_schedule(D: DirichletSeries, schedule: Sequence[int], tol: float = 1e-8) -> list[tuple[int, SigmaExtremes]]:
    return [(N, sigma_extremes(truncated_matrix(D, N), tol)) for N in schedule]


def gram_matrix(a: DirichletSeries, N: int) -> np.ndarray:
    """``G[j-1, k-1] = <phi_j, phi_k> = sum_{j l = k m} a_l conj(a_m)``, the transpose of ``T^H T``."""
    G = np.zeros((N, N), dtype=complex)
    items = list(a)
    coeff = a.coefficients
    for j in range(1, N + 1):
        for k in range(j, N + 1):
            acc = 0j
            for l, al in items:
                jl = j * l
                if jl % k == 0:
                    am = coeff.get(jl // k)
                    if am is not None:
                        acc += al * am.conjugate()
            G[j - 1, k - 1] = acc
            G[k - 1, j - 1] = acc.conjugate()
    return G
