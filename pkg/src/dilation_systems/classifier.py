"""End-to-end classification of a dilation system ``{phi(nx)}``.

With ``f`` the Bohr lift of the sine-coefficient series ``D``:

* Bessel            <=> ``sup |f|`` on the torus is finite,
* lower frame bound <=> ``1/f`` is bounded on the polydisk (no zeros there),
* Riesz sequence    <=> Bessel and ``|f|`` bounded below on the torus,
* Riesz basis       <=> Bessel and lower frame bound,
* orthonormal       <=> ``|f| = 1`` on the torus.

Every numeric quantity carries a certificate; a certificate that straddles
the decision tolerance gives ``inconclusive`` instead of a rounded answer.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field

from .bohr import MonomialPolynomial, lift
from .dirichlet import DirichletSeries
from .operators import sigma_extremes, truncated_matrix
from .torus import (DEFAULT_CELL_BUDGET, DEFAULT_DIMENSION_CAP, DimensionCapExceeded, ExtremeCertificate,
                    polydisk_min, torus_extremes)


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"

    def __and__(self, other: "Verdict") -> "Verdict":
        if Verdict.NO in (self, other):
            return Verdict.NO
        if self is Verdict.YES and other is Verdict.YES:
            return Verdict.YES
        return Verdict.INCONCLUSIVE


VERDICT_KEYS = ("bessel", "lower_frame_bound", "riesz_sequence", "riesz_basis", "orthonormal_sequence")


@dataclass(frozen=True)
class ClassifyConfig:
    tolerance: float = 1e-6
    torus_resolution: int = 64
    polydisk_resolution: int = 16
    sigma_schedule: tuple[int, ...] = (16, 32, 64, 128, 256)
    dimension_cap: int = DEFAULT_DIMENSION_CAP
    seed: int = 0
    cell_budget: int = DEFAULT_CELL_BUDGET
    # sigma_max must grow by this relative amount at each step of the window to flag divergence
    divergence_threshold: float = 1e-2
    divergence_window: int = 4
    sigma_tol: float = 1e-8

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        sched = tuple(int(n) for n in self.sigma_schedule)
        if any(b <= a for a, b in zip(sched, sched[1:])) or (sched and sched[0] < 1):
            raise ValueError("sigma schedule must be strictly increasing positive integers")
        object.__setattr__(self, "sigma_schedule", sched)
        if self.torus_resolution < 2 or self.polydisk_resolution < 2:
            raise ValueError("resolutions must be at least 2")

    @property
    def certificate_gap(self) -> float:
        return self.tolerance / 10

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sigma_schedule"] = list(self.sigma_schedule)
        return d


@dataclass(frozen=True)
class TruncatedFamily:
    """A finite truncation of an infinitely supported series.

    ``tail_l1`` bounds the sum of the moduli of the discarded coefficients,
    hence also ``sup |f - f_truncated|`` over the closed polydisk.
    ``inverse_hinf_bound`` (when known) bounds ``sup |1/f|``.
    """

    series: DirichletSeries
    tail_l1: float = 0.0
    inverse_hinf_bound: float | None = None
    label: str = ""

    def __post_init__(self):
        if not self.tail_l1 >= 0:
            raise ValueError("tail bound must be non-negative")


@dataclass
class SigmaRow:
    N: int
    sigma_min: float
    sigma_max: float
    converged: bool
    method: str


@dataclass
class FrameReport:
    verdicts: dict[str, Verdict]
    bessel_constant_upper: float
    lower_riesz_bound: float
    polydisk_min: float
    polydisk_min_upper: float
    sigma_table: list[SigmaRow]
    truncation_tail: float
    torus: ExtremeCertificate | None = None
    polydisk: ExtremeCertificate | None = None
    dimension: int = 0
    support_size: int = 0
    notes: list[str] = field(default_factory=list)
    dimension_capped: bool = False
    numeric_failure: bool = False

    def __getitem__(self, key: str) -> Verdict:
        return self.verdicts[key]

    @property
    def inconclusive(self) -> bool:
        return any(v is Verdict.INCONCLUSIVE for v in self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "verdicts": {k: self.verdicts[k].value for k in VERDICT_KEYS},
            "bessel_constant_upper": self.bessel_constant_upper,
            "lower_riesz_bound": self.lower_riesz_bound,
            "polydisk_min": self.polydisk_min,
            "polydisk_min_upper": self.polydisk_min_upper,
            "truncation_tail": self.truncation_tail,
            "dimension": self.dimension,
            "support_size": self.support_size,
            "sigma_table": [asdict(r) for r in self.sigma_table],
            "torus_certificate": self.torus.to_dict() if self.torus else None,
            "polydisk_certificate": self.polydisk.to_dict() if self.polydisk else None,
            "dimension_capped": self.dimension_capped,
            "numeric_failure": self.numeric_failure,
            "notes": list(self.notes),
        }


def _threshold(lower: float, upper: float, tol: float) -> Verdict:
    """``yes`` if the quantity is certainly above ``tol``, ``no`` if certainly at or below."""
    if lower > tol:
        return Verdict.YES
    if upper <= tol:
        return Verdict.NO
    return Verdict.INCONCLUSIVE


def as_family(a: DirichletSeries | TruncatedFamily) -> TruncatedFamily:
    return a if isinstance(a, TruncatedFamily) else TruncatedFamily(a)


def classify(a: DirichletSeries | TruncatedFamily, config: ClassifyConfig | None = None) -> FrameReport:
    """Classify the dilation system generated by the sine coefficients ``a``."""
    config = config or ClassifyConfig()
    fam = as_family(a)
    return classify_lift(lift(fam.series), fam.series, fam.tail_l1, config,
                         inverse_hinf_bound=fam.inverse_hinf_bound)


def sigma_table(D: DirichletSeries, schedule: Sequence[int], tol: float = 1e-8) -> list[SigmaRow]:
    rows = []
    for N in schedule:
        s = sigma_extremes(truncated_matrix(D, N), tol)
        rows.append(SigmaRow(N, s.sigma_min, s.sigma_max, s.converged, s.method))
    return rows


def _diverging(rows: list[SigmaRow], window: int, threshold: float) -> bool:
    if len(rows) < window or window < 2:
        return False
    tail = rows[-window:]
    return all(b.sigma_max >= a.sigma_max * (1 + threshold) for a, b in zip(tail, tail[1:]))


def classify_lift(f: MonomialPolynomial, sigma_symbol: DirichletSeries, tail: float, config: ClassifyConfig,
                  *, inverse_hinf_bound: float | None = None, notes: Sequence[str] = ()) -> FrameReport:
    """Shared pipeline for ``f`` (the lift) and ``sigma_symbol`` (a series realizing the same operator)."""
    tol = config.tolerance
    notes = list(notes)
    inc = Verdict.INCONCLUSIVE
    try:
        tor = torus_extremes(f, config.torus_resolution, dimension_cap=config.dimension_cap,
                             gap_abs=config.certificate_gap, cell_budget=config.cell_budget, seed=config.seed)
        pd = polydisk_min(f, config.polydisk_resolution, torus=tor, dimension_cap=config.dimension_cap,
                          zero_tol=config.certificate_gap, cell_budget=config.cell_budget, seed=config.seed)
    except DimensionCapExceeded as exc:
        notes.append(f"inconclusive: dimension too large ({exc})")
        return FrameReport({k: inc for k in VERDICT_KEYS}, math.nan, math.nan, math.nan, math.nan, [], tail,
                           dimension=f.dimension, support_size=len(f), notes=notes, dimension_capped=True)

    rows = sigma_table(sigma_symbol, config.sigma_schedule, config.sigma_tol)
    numeric_failure = False
    if not all(r.converged for r in rows):
        numeric_failure = True
        notes.append("singular value iteration did not converge for some N")
    for r in rows:
        if r.sigma_max > tor.upper_bound_max + 1e-9 * max(1.0, tor.upper_bound_max) or \
                r.sigma_min < tor.lower_bound_min - 1e-9 * max(1.0, tor.lower_bound_min):
            numeric_failure = True
            notes.append(f"sandwich violated at N={r.N}: sigma=({r.sigma_min}, {r.sigma_max})")
    if not tor.converged:
        notes.append("torus branch and bound hit the cell budget; certificate is wider than requested")
    if pd.zero_free is None:
        notes.append("polydisk zero exclusion hit the cell budget")

    bessel_upper = tor.upper_bound_max + tail
    if math.isfinite(bessel_upper):
        bessel = Verdict.YES
    elif _diverging(rows, config.divergence_window, config.divergence_threshold):
        bessel = Verdict.NO
        notes.append(f"bessel=no is heuristic: sigma_max grew by >= {config.divergence_threshold:g} (relative) "
                     f"over the last {config.divergence_window} schedule points")
    else:
        bessel = inc
        notes.append("bessel undecided: truncation tail is unbounded and sigma_max shows no clear divergence")

    if inverse_hinf_bound is not None and math.isfinite(inverse_hinf_bound) and inverse_hinf_bound > 0:
        lower_frame = Verdict.YES
        notes.append(f"lower frame bound from sup|1/f| <= {inverse_hinf_bound:.6g}")
    else:
        lower_frame = _threshold(pd.lower_bound_min - tail, pd.upper_bound_min + tail, tol)

    bounded_below = _threshold(tor.lower_bound_min - tail, tor.upper_bound_min + tail, tol)
    riesz_sequence = bessel & bounded_below
    riesz_basis = bessel & lower_frame

    lo_band, hi_band = 1 - tol - tail, 1 + tol + tail
    if tor.lower_bound_min >= lo_band and tor.upper_bound_max <= hi_band:
        unimodular = Verdict.YES
    elif tor.upper_bound_min < lo_band or tor.lower_bound_max > hi_band:
        unimodular = Verdict.NO
    else:
        unimodular = inc
    orthonormal = bessel & unimodular

    verdicts = {
        "bessel": bessel,
        "lower_frame_bound": lower_frame,
        "riesz_sequence": riesz_sequence,
        "riesz_basis": riesz_basis,
        "orthonormal_sequence": orthonormal,
    }
    return FrameReport(
        verdicts=verdicts,
        bessel_constant_upper=bessel_upper,
        lower_riesz_bound=max(0.0, tor.lower_bound_min - tail),
        polydisk_min=max(0.0, pd.lower_bound_min - tail),
        polydisk_min_upper=pd.upper_bound_min + tail,
        sigma_table=rows,
        truncation_tail=tail,
        torus=tor,
        polydisk=pd,
        dimension=f.dimension,
        support_size=len(f),
        notes=notes,
        numeric_failure=numeric_failure,
    )

