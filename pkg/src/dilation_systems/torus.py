"""Certified extremes of ``|f|`` on the d-torus and zero-freeness on the closed polydisk.

Both routines start from a deterministic tensor grid and tighten the
plain Lipschitz certificate by branch and bound over grid cells:

* on the torus a cell of half-widths ``h`` around angles ``t0`` obeys
  ``|f| >= |f0| - sum_j h_j |Re(u g_j)| - R`` and
  ``|f| <= hypot(|f0| + sum_j h_j |Re(u g_j)|, sum_j h_j |Im(u g_j)|) + R``
  with ``u = conj(f0)/|f0|``, ``g_j = df/dt_j`` at ``t0`` and
  ``R = 1/2 sum_a |c_a| (a . h)^2``;
* on the polydisk cells in polar coordinates obey the first order bound
  ``|f| >= |f0| - sum_j L_j (h_r + r h_t)`` with ``L_j = sum_a |c_a| a_j``.

If every polydisk cell has a positive lower bound, ``f`` has no zeros on the
closed polydisk, hence ``1/f`` is holomorphic there and the minimum of ``|f|``
is attained on the torus.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .bohr import MonomialPolynomial

log = logging.getLogger(__name__)

DEFAULT_DIMENSION_CAP = 6
DEFAULT_CELL_BUDGET = 400_000
INITIAL_GRID_CAP = 65_536
_CHUNK_ENTRIES = 2_000_000
TWO_PI = 2.0 * math.pi


class DimensionCapExceeded(ValueError):
    """The polynomial has more variables than the grid machinery is allowed to handle."""


@dataclass(frozen=True)
class ExtremeCertificate:
    lower_bound_min: float
    upper_bound_min: float
    lower_bound_max: float
    upper_bound_max: float
    grid_resolution: int
    lipschitz_constant: float
    witness_points: dict = field(default_factory=dict)
    grid_min: float = math.nan
    grid_max: float = math.nan
    cells_evaluated: int = 0
    converged: bool = True
    domain: str = "torus"
    zero_free: bool | None = None

    @property
    def min_width(self) -> float:
        return self.upper_bound_min - self.lower_bound_min

    @property
    def max_width(self) -> float:
        return self.upper_bound_max - self.lower_bound_max

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "lower_bound_min": self.lower_bound_min,
            "upper_bound_min": self.upper_bound_min,
            "lower_bound_max": self.lower_bound_max,
            "upper_bound_max": self.upper_bound_max,
            "grid_resolution": self.grid_resolution,
            "lipschitz_constant": self.lipschitz_constant,
            "grid_min": self.grid_min,
            "grid_max": self.grid_max,
            "cells_evaluated": self.cells_evaluated,
            "converged": self.converged,
            "zero_free": self.zero_free,
            "witness_points": self.witness_points,
        }


def lipschitz_bound(f: MonomialPolynomial) -> float:
    """``sum |c_a| |a|_1``: Lipschitz constant of ``f`` on the closed polydisk
    with respect to the max-of-arclength metric."""
    return float(sum(abs(v) * sum(a) for a, v in f))


class _Evaluator:
    """Vectorized evaluation of ``f`` and its partial derivatives."""

    def __init__(self, f: MonomialPolynomial):
        self.dim = f.dimension
        self.E, self.c = f.arrays()
        self.absc = np.abs(self.c)
        self.maxexp = self.E.max(axis=0) if len(self.E) else np.zeros(0, dtype=np.int64)
        # per-variable Lipschitz constants and the coefficient weights for derivatives
        self.Lj = (self.absc[:, None] * self.E).sum(axis=0)
        self.Em1 = np.maximum(self.E - 1, 0)

    def _chunks(self, M: int):
        step = max(1, _CHUNK_ENTRIES // max(1, len(self.c) * max(1, self.dim)))
        for start in range(0, M, step):
            yield slice(start, min(M, start + step))

    def values(self, z: np.ndarray, derivatives: bool = True):
        """``f(z)`` and ``df/dz_j`` for points ``z`` of shape ``(M, dim)``."""
        M = len(z)
        fv = np.empty(M, dtype=complex)
        dv = np.empty((M, self.dim), dtype=complex) if derivatives else None
        for sl in self._chunks(M):
            zz = z[sl]
            powers = [zz[:, j, None] ** np.arange(self.maxexp[j] + 1) for j in range(self.dim)]
            mono = np.ones((len(zz), len(self.c)), dtype=complex)
            for j in range(self.dim):
                mono *= powers[j][:, self.E[:, j]]
            fv[sl] = mono @ self.c
            if derivatives:
                for j in range(self.dim):
                    if self.Lj[j] == 0:
                        dv[sl, j] = 0
                        continue
                    # the j-th factor z_j^a becomes a z_j^(a-1)
                    part = np.ones((len(zz), len(self.c)), dtype=complex)
                    for i in range(self.dim):
                        idx = self.Em1[:, i] if i == j else self.E[:, i]
                        part *= powers[i][:, idx]
                    dv[sl, j] = part @ (self.c * self.E[:, j])
        return fv, dv

    def remainder(self, H: np.ndarray) -> np.ndarray:
        """``1/2 sum_a |c_a| (a . h)^2`` per cell."""
        out = np.empty(len(H))
        Ef = self.E.astype(float)
        for sl in self._chunks(len(H)):
            out[sl] = 0.5 * ((H[sl] @ Ef.T) ** 2) @ self.absc
        return out


def _check_dim(f: MonomialPolynomial, cap: int) -> None:
    if f.dimension > cap:
        raise DimensionCapExceeded(
            f"polynomial has {f.dimension} variables, cap is {cap}; raise the cap (and the "
            f"cell budget) to analyse it"
        )


def _effective_resolution(resolution: int, cells_per_var: int, dim: int) -> int:
    if dim == 0:
        return resolution
    limit = int(math.floor(INITIAL_GRID_CAP ** (1.0 / dim) / cells_per_var))
    return max(2, min(resolution, limit))


def _tensor(axes: list[np.ndarray]) -> np.ndarray:
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _minimize_cells(bounds, split, C, H, gap_abs, gap_rel, budget, incumbent, incumbent_point, floor):
    """Branch and bound for the minimum of a function given cell lower bounds.

    ``bounds(C, H) -> (values_at_centers, cell_lower_bounds)``.  Returns
    ``(best, best_point, certified_lower, evaluated, converged)``.
    """
    vals, lo = bounds(C, H)
    evaluated = len(C)
    i = int(np.argmin(vals))
    best, best_point = incumbent, incumbent_point
    if vals[i] < best:
        best, best_point = float(vals[i]), C[i].copy()
    settled = math.inf
    converged = False
    while True:
        gap = max(gap_abs, gap_rel * abs(best))
        keep = lo < best - gap
        if (~keep).any():
            settled = min(settled, float(lo[~keep].min()))
        C, H, lo = C[keep], H[keep], lo[keep]
        glob = min(settled, float(lo.min())) if len(lo) else settled
        if floor is not None:
            glob = max(glob, floor)
        if len(C) == 0 or best - glob <= gap:
            converged = True
            break
        if evaluated + 2 * len(C) > budget:
            break
        C, H = split(C, H)
        vals, lo = bounds(C, H)
        evaluated += len(C)
        i = int(np.argmin(vals))
        if vals[i] < best:
            best, best_point = float(vals[i]), C[i].copy()
    return best, best_point, glob, evaluated, converged


def _bisect(weights_fn):
    def split(C, H):
        W = weights_fn(C, H)
        j = np.argmax(W, axis=1)
        rows = np.arange(len(C))
        H2 = H.copy()
        H2[rows, j] *= 0.5
        lo_c, hi_c = C.copy(), C.copy()
        lo_c[rows, j] -= H2[rows, j]
        hi_c[rows, j] += H2[rows, j]
        return np.concatenate([lo_c, hi_c]), np.concatenate([H2, H2])

    return split


def _polish_torus(ev: _Evaluator, starts: np.ndarray, sense: str) -> tuple[float, np.ndarray] | None:
    """Local refinement of witnesses; only ever yields genuinely evaluated points."""
    sign = 1.0 if sense == "min" else -1.0

    def obj(t):
        z = np.exp(1j * t)[None, :]
        fv, dv = ev.values(z)
        g = 1j * z[0] * dv[0]
        return sign * abs(fv[0]) ** 2, sign * 2.0 * np.real(np.conj(fv[0]) * g)

    best = None
    for t0 in starts:
        cands = []
        try:
            res = scipy.optimize.minimize(obj, t0, jac=True, method="L-BFGS-B",
                                          options={"maxiter": 200, "ftol": 1e-30, "gtol": 1e-14})
            cands.append(res.x)
        except (ValueError, FloatingPointError):
            pass
        if sense == "min":
            cands.append(_newton_zero(ev, np.exp(1j * t0), project="torus"))
        for t in cands:
            t = np.mod(np.real(t) if np.iscomplexobj(t) else t, TWO_PI)
            val = abs(ev.values(np.exp(1j * t)[None, :], derivatives=False)[0][0])
            if best is None or sign * val < sign * best[0]:
                best = (float(val), t)
    return best


def _newton_zero(ev: _Evaluator, z0: np.ndarray, project: str, steps: int = 60) -> np.ndarray:
    """Minimum-norm Newton steps towards ``f = 0``, projected back onto the domain.

    Returns angles for ``project='torus'`` and polar coordinates ``(r, t)``
    for ``project='polydisk'``.
    """
    z = np.array(z0, dtype=complex)
    for _ in range(steps):
        fv, dv = ev.values(z[None, :])
        g = dv[0]
        if project == "torus":
            g = 1j * z * g  # derivative along the angles
            nrm = float(np.vdot(g, g).real)
            if nrm == 0 or abs(fv[0]) < 1e-300:
                break
            # real angle increments: least-squares solution of Re/Im of f + g.dt = 0
            A = np.stack([g.real, g.imag])
            b = -np.array([fv[0].real, fv[0].imag])
            dt, *_ = np.linalg.lstsq(A, b, rcond=None)
            z = np.exp(1j * (np.angle(z) + dt))
        else:
            nrm = float(np.vdot(g, g).real)
            if nrm == 0 or abs(fv[0]) < 1e-300:
                break
            z = z - fv[0] * np.conj(g) / nrm
            mod = np.abs(z)
            z = np.where(mod > 1, z / np.maximum(mod, 1e-300), z)
    if project == "torus":
        return np.mod(np.angle(z), TWO_PI)
    return np.concatenate([np.abs(z), np.mod(np.angle(z), TWO_PI)])


def _constant_certificate(f: MonomialPolynomial, resolution: int, domain: str) -> ExtremeCertificate:
    """Exact answer when ``|f|`` is constant on the domain (a single term on the torus)."""
    v = max((abs(c) for _, c in f), default=0.0)
    z = [0.0] * f.dimension
    return ExtremeCertificate(v, v, v, v, resolution, 0.0, {"min": z, "max": z}, v, v, 1, True, domain,
                              zero_free=(v > 0))


def torus_extremes(f: MonomialPolynomial, resolution: int = 64, *, dimension_cap: int = DEFAULT_DIMENSION_CAP,
                   gap_abs: float = 1e-7, gap_rel: float = 1e-9, cell_budget: int = DEFAULT_CELL_BUDGET,
                   seed: int = 0) -> ExtremeCertificate:
    """Certified enclosures of ``min |f|`` and ``max |f|`` over the torus ``T^d``."""
    _check_dim(f, dimension_cap)
    if len(f) <= 1:
        return _constant_certificate(f, resolution, "torus")
    ev = _Evaluator(f)
    d = ev.dim
    L = lipschitz_bound(f)
    res = _effective_resolution(resolution, 1, d)
    axis = TWO_PI * np.arange(res) / res
    C0 = _tensor([axis] * d)
    H0 = np.full_like(C0, math.pi / res)

    f0, _ = ev.values(np.exp(1j * C0), derivatives=False)
    a0 = np.abs(f0)
    grid_min, grid_max = float(a0.min()), float(a0.max())
    slack = L * (math.pi / res) * math.sqrt(d)
    plain_lo_min = max(0.0, grid_min - slack)
    plain_up_max = grid_max + slack

    def rotated(C, H):
        fv, dv = ev.values(np.exp(1j * C))
        g = 1j * np.exp(1j * C) * dv
        mod = np.abs(fv)
        u = np.where(mod > 0, np.conj(fv) / np.where(mod > 0, mod, 1), 1.0)
        ug = u[:, None] * g
        lin_re = (np.abs(ug.real) * H).sum(axis=1)
        lin_im = (np.abs(ug.imag) * H).sum(axis=1)
        first = (ev.Lj[None, :] * H).sum(axis=1)
        R = ev.remainder(H)
        lo = np.maximum(mod - lin_re - R, mod - first)
        up = np.minimum(np.hypot(mod + lin_re, lin_im) + R, mod + first)
        return mod, lo, up

    def bounds_min(C, H):
        mod, lo, _ = rotated(C, H)
        return mod, lo

    def bounds_max(C, H):
        mod, _, up = rotated(C, H)
        return -mod, -up

    split = _bisect(lambda C, H: ev.Lj[None, :] * H)

    rng = np.random.default_rng(seed)
    order = np.argsort(a0)
    starts_min = np.concatenate([C0[order[:3]], C0[order[0]] + rng.normal(0, math.pi / res, (2, d))])
    starts_max = np.concatenate([C0[order[-3:]], C0[order[-1]] + rng.normal(0, math.pi / res, (2, d))])
    pmin = _polish_torus(ev, starts_min, "min")
    pmax = _polish_torus(ev, starts_max, "max")

    inc_min, inc_min_pt = (pmin[0], pmin[1]) if pmin else (math.inf, None)
    best_min, pt_min, lo_min, n1, ok1 = _minimize_cells(
        bounds_min, split, C0, H0, gap_abs, gap_rel, cell_budget, inc_min, inc_min_pt, 0.0)
    inc_max, inc_max_pt = (-pmax[0], pmax[1]) if pmax else (math.inf, None)
    neg_best_max, pt_max, neg_up_max, n2, ok2 = _minimize_cells(
        bounds_max, split, C0, H0, gap_abs, gap_rel, cell_budget, inc_max, inc_max_pt, None)

    ub_min = best_min
    lb_max = -neg_best_max
    lb_min = max(plain_lo_min, lo_min)
    ub_max = min(plain_up_max, -neg_up_max)
    witnesses = {"min": [float(x) for x in np.mod(pt_min, TWO_PI)],
                 "max": [float(x) for x in np.mod(pt_max, TWO_PI)]}
    return ExtremeCertificate(
        lower_bound_min=float(min(lb_min, ub_min)), upper_bound_min=float(ub_min),
        lower_bound_max=float(lb_max), upper_bound_max=float(max(ub_max, lb_max)),
        grid_resolution=res, lipschitz_constant=L, witness_points=witnesses,
        grid_min=grid_min, grid_max=grid_max, cells_evaluated=len(C0) + n1 + n2,
        converged=ok1 and ok2, domain="torus",
    )


def polydisk_min(f: MonomialPolynomial, resolution: int = 16, *, torus: ExtremeCertificate | None = None,
                 dimension_cap: int = DEFAULT_DIMENSION_CAP, zero_tol: float = 1e-12,
                 cell_budget: int = DEFAULT_CELL_BUDGET, seed: int = 0) -> ExtremeCertificate:
    """Certified enclosure of ``min |f|`` over the closed unit polydisk.

    ``zero_free`` is ``True`` once every cell is certified nonzero, ``False``
    when a point with ``|f| <= zero_tol`` was found, ``None`` otherwise.
    A positive certified minimum bounds ``sup |1/f|`` by its reciprocal.
    """
    _check_dim(f, dimension_cap)
    if f.dimension == 0:
        return _constant_certificate(f, resolution, "polydisk")
    if torus is None:
        torus = torus_extremes(f, max(resolution, 32), dimension_cap=dimension_cap, seed=seed)
    ev = _Evaluator(f)
    d = ev.dim
    L = lipschitz_bound(f)
    r_res = max(2, resolution // 4)
    a_res = _effective_resolution(resolution, r_res, d)
    r_axis = (np.arange(r_res) + 0.5) / r_res
    t_axis = TWO_PI * np.arange(a_res) / a_res
    C0 = _tensor([r_axis] * d + [t_axis] * d)
    H0 = np.concatenate([np.full((len(C0), d), 0.5 / r_res), np.full((len(C0), d), math.pi / a_res)], axis=1)

    def to_z(C):
        return C[:, :d] * np.exp(1j * C[:, d:])

    def reach(C, H):
        # |dz_j| <= h_r + (r + h_r) h_t inside a polar cell
        return H[:, :d] + np.minimum(1.0, C[:, :d] + H[:, :d]) * H[:, d:]

    def bounds(C, H):
        fv, _ = ev.values(to_z(C), derivatives=False)
        mod = np.abs(fv)
        return mod, mod - (ev.Lj[None, :] * reach(C, H)).sum(axis=1)

    def weights(C, H):
        return np.concatenate([ev.Lj[None, :] * H[:, :d],
                               ev.Lj[None, :] * np.minimum(1.0, C[:, :d] + H[:, :d]) * H[:, d:]], axis=1)

    split = _bisect(weights)
    mod0, lo0 = bounds(C0, H0)
    grid_min = float(mod0.min())
    plain_lo = max(0.0, float(lo0.min()))

    # witnesses: torus minimizer, polar grid minimizers, projected Newton towards a zero
    best = torus.upper_bound_min
    best_pt = np.concatenate([np.ones(d), torus.witness_points.get("min", [0.0] * d)]) if torus.witness_points.get("min") else None
    rng = np.random.default_rng(seed)
    order = np.argsort(mod0)
    starts = to_z(C0[order[:4]])
    starts = np.concatenate([starts, starts[:1] * (1 + rng.normal(0, 0.05, (2, d)))])
    for z0 in starts:
        rt = _newton_zero(ev, z0, project="polydisk")
        val = abs(ev.values(to_z(rt[None, :]), derivatives=False)[0][0])
        if val < best:
            best, best_pt = float(val), rt
    if mod0[order[0]] < best:
        best, best_pt = float(mod0[order[0]]), C0[order[0]].copy()

    evaluated = len(C0)
    zero_free: bool | None = None
    C, H, lo = C0, H0, lo0
    settled = math.inf
    while True:
        if best <= zero_tol:
            zero_free = False
            break
        keep = lo <= 0
        if (~keep).any():
            settled = min(settled, float(lo[~keep].min()))
        C, H = C[keep], H[keep]
        if len(C) == 0:
            zero_free = True
            break
        if evaluated + 2 * len(C) > cell_budget:
            break
        C, H = split(C, H)
        mod, lo = bounds(C, H)
        evaluated += len(C)
        i = int(np.argmin(mod))
        if mod[i] < best:
            best, best_pt = float(mod[i]), C[i].copy()

    if zero_free:
        lb, ub = torus.lower_bound_min, min(torus.upper_bound_min, best)
    elif zero_free is False:
        lb, ub = 0.0, best
    else:
        lb = plain_lo
        ub = min(best, torus.upper_bound_min)
    wp = {"min": [float(x) for x in best_pt] if best_pt is not None else [], "coordinates": "radii then angles"}
    return ExtremeCertificate(
        lower_bound_min=float(lb), upper_bound_min=float(ub),
        lower_bound_max=torus.lower_bound_max, upper_bound_max=torus.upper_bound_max,
        grid_resolution=a_res, lipschitz_constant=L, witness_points=wp,
        grid_min=grid_min, grid_max=torus.grid_max, cells_evaluated=evaluated,
        converged=zero_free is not None, domain="polydisk", zero_free=zero_free,
    )
