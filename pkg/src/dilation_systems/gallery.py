"""Generators for the standard example families and sufficient-condition checks.

Each generator expands the stated holomorphic function ``f`` directly and
returns the corresponding sine-coefficient series (``unlift(f)``).
"""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre, zeta

from .bohr import MonomialPolynomial, multiply, unlift
from .classifier import ClassifyConfig, FrameReport, TruncatedFamily, Verdict, classify
from .dirichlet import DirichletSeries, from_power_series_along_prime
from .integer_arith import prime_count, total_degree


class Check(str, enum.Enum):
    SATISFIED = "satisfied"
    NOT_SATISFIED = "not_satisfied"
    NOT_APPLICABLE = "not_applicable"


def _unit_eq(x: float) -> bool:
    return abs(x - 1.0) <= 1e-12


def linear_factor_product(c: Sequence[complex]) -> DirichletSeries:
    """Series whose lift is ``(z_1 - c_1)(z_2 - c_2)...(z_N - c_N)``."""
    f = MonomialPolynomial.constant(1)
    for i, ci in enumerate(c, start=1):
        f = multiply(f, MonomialPolynomial.variable(i) - MonomialPolynomial.constant(ci))
    return unlift(f)


def monomial_minus_c(N: int, c: complex) -> DirichletSeries:
    """Series whose lift is ``z_1 z_2 ... z_N - c``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return unlift(MonomialPolynomial({(1,) * N: 1, (): -c}))


def bolu_riesz_sequence_check(D: DirichletSeries) -> Check:
    """``|a_2| > sum_{n != 2} |a_n|`` with ``a_1, a_2, a_4`` nonzero."""
    if D[1] == 0 or D[2] == 0 or D[4] == 0:
        return Check.NOT_APPLICABLE
    rest = math.fsum(abs(a) for n, a in D if n != 2)
    return Check.SATISFIED if abs(D[2]) > rest else Check.NOT_SATISFIED


def bolu_riesz_basis_check(D: DirichletSeries, N: int) -> Check:
    """``|a_n| <= (1 - (1 + |a_1|)^(-1/pi(N)))^{|alpha(n)|}`` for ``n = 2..N``."""
    if D and D.max_index() > N:
        raise ValueError(f"support exceeds 1..{N}")
    if D[1] == 0:
        return Check.NOT_APPLICABLE
    k = prime_count(N)
    if k == 0:
        return Check.SATISFIED
    base = 1.0 - (1.0 + abs(D[1])) ** (-1.0 / k)
    ok = all(abs(D[n]) <= base ** total_degree(n) for n in range(2, N + 1))
    return Check.SATISFIED if ok else Check.NOT_SATISFIED


def bolu_basis_bound(a1: complex, N: int, n: int) -> float:
    """Right-hand side of the basis condition for index ``n``."""
    k = prime_count(N)
    return (1.0 - (1.0 + abs(a1)) ** (-1.0 / k)) ** total_degree(n)


def moebius_coefficients(c: complex, cutoff_degree: int) -> np.ndarray:
    """Taylor coefficients of ``(z - c)/(1 - conj(c) z)`` up to ``cutoff_degree``."""
    cb = np.conj(c)
    out = np.empty(cutoff_degree + 1, dtype=complex)
    out[0] = -c
    m = np.arange(1, cutoff_degree + 1)
    out[1:] = cb ** (m - 1) * (1 - abs(c) ** 2)
    return out


def moebius_value(c: Sequence[complex], z) -> complex:
    """Exact product of Blaschke factors at ``z``."""
    z = np.asarray(z, dtype=complex)
    return complex(np.prod([(zi - ci) / (1 - np.conj(ci) * zi) for zi, ci in zip(z, c)]))


def moebius_product(c: Sequence[complex], cutoff_degree: int) -> TruncatedFamily:
    """Product of Blaschke factors in separate variables, each truncated at ``cutoff_degree``.

    The single-factor tail is ``sum_{m > K} |c|^{m-1}(1 - |c|^2) = (1 + |c|)|c|^K``;
    products are bounded through the l1 algebra norm.
    """
    if cutoff_degree < 1:
        raise ValueError("cutoff_degree must be >= 1")
    f = MonomialPolynomial.constant(1)
    kept_norm, full_norm = 1.0, 1.0
    for i, ci in enumerate(c, start=1):
        if not 0 < abs(ci) < 1:
            raise ValueError(f"Moebius parameter must satisfy 0 < |c| < 1, got {ci}")
        coeffs = moebius_coefficients(ci, cutoff_degree)
        factor = MonomialPolynomial({(0,) * (i - 1) + (m,): v for m, v in enumerate(coeffs)})
        f = multiply(f, factor)
        kept = float(np.abs(coeffs).sum())
        tail = (1 + abs(ci)) * abs(ci) ** cutoff_degree
        kept_norm *= kept
        full_norm *= kept + tail
    return TruncatedFamily(unlift(f), tail_l1=full_norm - kept_norm, label="moebius")


@dataclass(frozen=True)
class OuterFunction:
    family: TruncatedFamily
    h2_norm_estimate: float
    h2_norm_truncated: float
    inv_hinf_estimate: float
    log_coefficients: np.ndarray  # Fourier cosine coefficients of log|f|
    power_coefficients: np.ndarray  # Taylor coefficients of F
    quadrature_converged: bool


def _panels(kmax: int, split: float) -> np.ndarray:
    """Panel edges on ``[split, pi]``: geometric near 0, then at most half a period wide."""
    width = math.pi / max(kmax, 1)
    edges = [split]
    while edges[-1] < math.pi:
        step = min(edges[-1], width)
        edges.append(min(math.pi, edges[-1] + step))
    return np.array(edges)


def log_modulus_cosine_coefficients(exponent: float, kmax: int, split: float = 1e-8,
                                    order: int = 20) -> np.ndarray:
    """``(1/2pi) int_{-pi}^{pi} -exponent log|t| cos(k t) dt`` for ``k = 0..kmax``.

    ``[0, split]`` is integrated in closed form from ``log t (1 - k^2 t^2/2)``;
    the rest uses composite Gauss-Legendre panels.
    """
    k = np.arange(kmax + 1, dtype=float)
    d = split
    near = d * (math.log(d) - 1) - 0.5 * k**2 * d**3 * (math.log(d) / 3 - 1 / 9)
    edges = _panels(kmax, split)
    x, w = roots_legendre(order)
    a, b = edges[:-1, None], edges[1:, None]
    nodes = (0.5 * (b - a) * x + 0.5 * (b + a)).ravel()
    weights = (0.5 * (b - a) * w).ravel()
    far = (np.cos(np.outer(k, nodes)) * (weights * np.log(nodes))).sum(axis=1)
    integral = near + far  # int_0^pi log t cos(kt) dt
    return -exponent * integral / math.pi


def exp_power_series(g: np.ndarray) -> np.ndarray:
    """Coefficients of ``exp(sum g_k z^k)`` up to the same degree."""
    K = len(g) - 1
    F = np.zeros(K + 1, dtype=g.dtype)
    F[0] = np.exp(g[0])
    kg = np.arange(K + 1) * g
    for n in range(1, K + 1):
        F[n] = np.dot(kg[1 : n + 1], F[n - 1 :: -1][:n]) / n
    return F


def outer_function(exponent: float = 1 / 3, num_fourier: int = 256, prime: int = 2) -> OuterFunction:
    """Outer function with boundary modulus ``|t|^{-exponent}`` placed on one prime variable.

    ``F`` lies in H^2 but not H^infinity, while ``1/F`` (boundary modulus
    ``|t|^{exponent}``) is bounded.
    """
    if not 0 < exponent < 0.5:
        raise ValueError("exponent must lie in (0, 1/2)")
    chat = log_modulus_cosine_coefficients(exponent, num_fourier)
    check = log_modulus_cosine_coefficients(exponent, num_fourier, order=12)
    converged = bool(np.max(np.abs(chat - check)) < 1e-10)
    g = 2.0 * chat
    g[0] = chat[0]
    F = exp_power_series(g)
    series = from_power_series_along_prime(F, prime)
    h2_trunc = float(np.sqrt(np.sum(np.abs(F) ** 2)))
    # |F_n|^2 decays like n^(2 exponent - 2); fit the constant on the upper half and add the zeta tail
    K = len(F) - 1
    n = np.arange(max(1, K // 2), K + 1)
    C = float(np.mean(np.abs(F[n]) ** 2 * n ** (2 - 2 * exponent)))
    h2 = math.sqrt(h2_trunc**2 + C * float(zeta(2 - 2 * exponent, K + 1)))

    # |1/F| = exp(-Re log F) on circles close to the boundary, where the truncated log series is accurate
    theta = 2 * math.pi * np.arange(8 * num_fourier) / (8 * num_fourier)
    inv_max = 0.0
    for m in (32, 16, 8, 5):
        r = 1 - m / num_fourier
        if r <= 0:
            continue
        z = r * np.exp(1j * theta)
        logF = np.polynomial.polynomial.polyval(z, g)
        inv_max = max(inv_max, float(np.exp(-logF.real).max()))
    fam = TruncatedFamily(series, tail_l1=math.inf, inverse_hinf_bound=inv_max, label="outer")
    return OuterFunction(fam, h2, h2_trunc, inv_max, chat, F, converged)


# expected verdicts as stated for each family

def _expected_linear(c: Sequence[complex]) -> dict[str, Verdict]:
    mods = [abs(x) for x in c]
    yn = lambda b: Verdict.YES if b else Verdict.NO  # noqa: E731
    return {
        "bessel": Verdict.YES,
        "lower_frame_bound": yn(all(m > 1 and not _unit_eq(m) for m in mods)),
        "riesz_sequence": yn(all(not _unit_eq(m) for m in mods)),
        "riesz_basis": yn(all(m > 1 and not _unit_eq(m) for m in mods)),
    }


def _label(expected: dict[str, Verdict]) -> str:
    y = {k for k, v in expected.items() if v is Verdict.YES}
    n = {k for k, v in expected.items() if v is Verdict.NO}
    if "orthonormal_sequence" in y:
        return "orthonormal"
    if "riesz_basis" in y:
        return "riesz-basis"
    if "bessel" in y and "lower_frame_bound" in n:
        return "riesz-sequence" if "riesz_sequence" in y else "bessel-only"
    if "bessel" in n and "lower_frame_bound" in y:
        return "lower-frame-only"
    if "riesz_sequence" in y:
        return "riesz-sequence"
    return "mixed"


@dataclass
class GalleryResult:
    name: str
    parameters: dict
    expected: dict[str, Verdict]
    report: FrameReport
    extras: dict

    @property
    def passed(self) -> bool:
        return all(self.report.verdicts[k] is v for k, v in self.expected.items())

    def observed_label(self) -> str:
        return _label({k: self.report.verdicts[k] for k in self.expected})

    def to_dict(self) -> dict:
        return {
            "gallery": self.name,
            "parameters": self.parameters,
            "expected": {k: v.value for k, v in self.expected.items()},
            "expected_label": _label(self.expected),
            "observed": {k: self.report.verdicts[k].value for k in self.expected},
            "observed_label": self.observed_label(),
            "pass": self.passed,
            "extras": self.extras,
            "report": self.report.to_dict(),
        }


GALLERY_NAMES = ("linear_factors", "monomial_minus_c", "bolu", "moebius", "outer")


def run_gallery(name: str, params: dict, config: ClassifyConfig | None = None) -> GalleryResult:
    """Instantiate a named family, classify it and compare with the stated verdicts."""
    config = config or ClassifyConfig()
    extras: dict = {}
    if name == "linear_factors":
        c = _as_list(params.get("c", [2, 3]))
        target = linear_factor_product(c)
        expected = _expected_linear(c)
        params = {"c": c}
    elif name == "monomial_minus_c":
        N, c = int(params.get("N", 2)), complex(params.get("c", 2))
        target = monomial_minus_c(N, c)
        m = abs(c)
        expected = {
            "bessel": Verdict.YES,
            "riesz_sequence": Verdict.NO if _unit_eq(m) else Verdict.YES,
            "riesz_basis": Verdict.YES if m > 1 and not _unit_eq(m) else Verdict.NO,
        }
        params = {"N": N, "c": c}
    elif name == "bolu":
        a = _as_list(params.get("a", [1, 10, 1, 1, 1, 1]))
        target = DirichletSeries.from_list(a)
        N = int(params.get("N", len(a)))
        seq = bolu_riesz_sequence_check(target)
        basis = bolu_riesz_basis_check(target, N)
        extras = {"riesz_sequence_condition": seq.value, "riesz_basis_condition": basis.value}
        expected = {"bessel": Verdict.YES}
        if seq is Check.SATISFIED:
            expected["riesz_sequence"] = Verdict.YES
        if basis is Check.SATISFIED:
            expected["riesz_basis"] = Verdict.YES
        params = {"a": a, "N": N}
    elif name == "moebius":
        c = _as_list(params.get("c", [0.5]))
        cutoff = int(params.get("cutoff", 20))
        target = moebius_product(c, cutoff)
        expected = {"bessel": Verdict.YES, "riesz_sequence": Verdict.YES, "orthonormal_sequence": Verdict.YES}
        params = {"c": c, "cutoff": cutoff}
    elif name == "outer":
        exponent = float(params.get("exponent", 1 / 3))
        nf = int(params.get("num_fourier", 256))
        prime = int(params.get("prime", 2))
        outer = outer_function(exponent, nf, prime)
        target = outer.family
        extras = {"h2_norm_estimate": outer.h2_norm_estimate, "h2_norm_truncated": outer.h2_norm_truncated,
                  "inv_hinf_estimate": outer.inv_hinf_estimate,
                  "quadrature_converged": outer.quadrature_converged}
        expected = {"bessel": Verdict.NO, "lower_frame_bound": Verdict.YES}
        params = {"exponent": exponent, "num_fourier": nf, "prime": prime}
    else:
        raise ValueError(f"unknown gallery {name!r}; choose from {', '.join(GALLERY_NAMES)}")
    report = classify(target, config)
    return GalleryResult(name, _jsonable(params), expected, report, extras)


def _as_list(v) -> list:
    return list(v) if isinstance(v, (list, tuple)) else [v]


def _jsonable(params: dict) -> dict:
    def conv(v):
        if isinstance(v, complex):
            return v.real if v.imag == 0 else [v.real, v.imag]
        if isinstance(v, (list, tuple)):
            return [conv(x) for x in v]
        return v

    return {k: conv(v) for k, v in params.items()}
