"""Command-line front end.

Settings resolve as: command-line flag, then environment variable
(``DILSYS_TOLERANCE``, ``DILSYS_RESOLUTION``, ``DILSYS_POLYDISK_RESOLUTION``,
``DILSYS_SCHEDULE``, ``DILSYS_CAP``, ``DILSYS_SEED``, ``DILSYS_FORMAT``),
then the library default.

Exit status: 0 success, 1 gallery mismatch, 2 parse error, 3 inconclusive,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .bivariate import BivariateDirichletSeries, classify2, lift2
from .bohr import lift, unlift
from .classifier import ClassifyConfig, FrameReport, Verdict, classify, sigma_table
from .formats import (CoefficientFileError, dumps_json, dumps_key_value_csv, dumps_table_csv, input_digest,
                      read_coefficients)
from .gallery import GALLERY_NAMES, run_gallery
from .operators import truncated_matrix
from .torus import torus_extremes

log = logging.getLogger("dilation_systems")

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_INCONCLUSIVE, EXIT_NUMERIC = 0, 1, 2, 3, 4
ENV_PREFIX = "DILSYS_"


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    classify: ClassifyConfig
    output_format: str = "json"

    def to_dict(self) -> dict:
        return {**self.classify.to_dict(), "output_format": self.output_format}


def parse_schedule(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"bad schedule {text!r}") from None


_SETTINGS = {
    # dest: (env suffix, converter, ClassifyConfig field)
    "tolerance": ("TOLERANCE", float, "tolerance"),
    "resolution": ("RESOLUTION", int, "torus_resolution"),
    "polydisk_resolution": ("POLYDISK_RESOLUTION", int, "polydisk_resolution"),
    "schedule": ("SCHEDULE", parse_schedule, "sigma_schedule"),
    "cap": ("CAP", int, "dimension_cap"),
    "seed": ("SEED", int, "seed"),
}


def resolve_config(args: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    kwargs = {}
    for dest, (suffix, conv, field_name) in _SETTINGS.items():
        value = getattr(args, dest, None)
        if value is None and ENV_PREFIX + suffix in environ:
            raw = environ[ENV_PREFIX + suffix]
            try:
                value = conv(raw)
            except ValueError:
                raise UsageError(f"bad value {raw!r} for {ENV_PREFIX + suffix}") from None
        if value is not None:
            kwargs[field_name] = value
    fmt = getattr(args, "format", None) or environ.get(ENV_PREFIX + "FORMAT", "json")
    if fmt not in ("json", "csv"):
        raise UsageError(f"unknown format {fmt!r}")
    try:
        return RunConfig(ClassifyConfig(**kwargs), fmt)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _status(report: FrameReport) -> int:
    if report.numeric_failure:
        return EXIT_NUMERIC
    if report.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _payload(kind: str, config: RunConfig, body: dict) -> dict:
    return {"command": kind, "version": __version__, "config": config.to_dict(), **body}


def render(payload: dict, fmt: str) -> str:
    return dumps_json(payload) if fmt == "json" else dumps_key_value_csv(payload)


def cmd_classify(input_path: str, config: RunConfig) -> tuple[str, int]:
    series = read_coefficients(input_path)
    if isinstance(series, BivariateDirichletSeries):
        report = classify2(series, config.classify)
    else:
        report = classify(series, config.classify)
    body = {"input": {"kind": type(series).__name__, "records": len(series), "sha256": input_digest(series)},
            "report": report.to_dict()}
    return render(_payload("classify", config, body), config.output_format), _status(report)


CONVERGENCE_HEADER = ["N", "sigma_min", "sigma_max", "torus_min", "torus_max"]


def cmd_convergence(input_path: str, config: RunConfig) -> tuple[str, int]:
    """Singular value extremes per N beside the certified torus enclosure."""
    series = read_coefficients(input_path)
    if isinstance(series, BivariateDirichletSeries):
        f = lift2(series)
        series = unlift(f)
    else:
        f = lift(series)
    cc = config.classify
    tor = torus_extremes(f, cc.torus_resolution, dimension_cap=cc.dimension_cap, gap_abs=cc.certificate_gap,
                         cell_budget=cc.cell_budget, seed=cc.seed)
    rows = sigma_table(series, cc.sigma_schedule, cc.sigma_tol)
    table = [[r.N, r.sigma_min, r.sigma_max, tor.lower_bound_min, tor.upper_bound_max] for r in rows]
    status = EXIT_OK if all(r.converged for r in rows) else EXIT_NUMERIC
    if config.output_format == "csv":
        return dumps_table_csv(CONVERGENCE_HEADER, table), status
    body = {"input": {"sha256": input_digest(series)}, "columns": CONVERGENCE_HEADER, "rows": table,
            "torus_certificate": tor.to_dict()}
    return dumps_json(_payload("convergence", config, body)), status


def parse_number(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def parse_gallery_params(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected key=value, got {item!r}")
        parts = [parse_number(v) for v in value.split(",") if v.strip()]
        if not parts:
            raise UsageError(f"empty value for {key}")
        out[key] = parts if len(parts) > 1 else parts[0]
    return out


def cmd_gallery(name: str, parameters: dict, config: RunConfig) -> tuple[str, int]:
    try:
        result = run_gallery(name, parameters, config.classify)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    payload = _payload("gallery", config, result.to_dict())
    if result.report.numeric_failure:
        status = EXIT_NUMERIC
    elif any(result.report.verdicts[k] is Verdict.INCONCLUSIVE for k in result.expected):
        status = EXIT_INCONCLUSIVE
    else:
        status = EXIT_OK if result.passed else EXIT_MISMATCH
    return render(payload, config.output_format), status


def cmd_matrix(input_path: str, N: int, output: str | None) -> int:
    series = read_coefficients(input_path)
    if isinstance(series, BivariateDirichletSeries):
        series = unlift(lift2(series))
    _emit(truncated_matrix(series, N).to_text(), output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, help="decision tolerance (default 1e-6)")
    common.add_argument("--resolution", type=int, help="torus grid points per angle (default 64)")
    common.add_argument("--polydisk-resolution", type=int, dest="polydisk_resolution",
                        help="polydisk angular resolution (default 16)")
    common.add_argument("--schedule", type=parse_schedule, help="comma-separated N values for sigma extremes")
    common.add_argument("--cap", type=int, help="maximum lift dimension (default 6)")
    common.add_argument("--seed", type=int, help="seed for randomized polishing starts")
    common.add_argument("--format", choices=("json", "csv"), help="output format (default json)")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="dilsys", description="Classify dilation systems from their sine coefficients.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", parents=[common], help="classify a coefficient file")
    c.add_argument("input")
    v = sub.add_parser("convergence", parents=[common], help="sigma extremes per N beside torus bounds")
    v.add_argument("input")
    g = sub.add_parser("gallery", parents=[common], help="run a named example family")
    g.add_argument("name", choices=GALLERY_NAMES)
    g.add_argument("params", nargs="*", metavar="key=value")
    m = sub.add_parser("matrix", parents=[common], help="dump the truncated operator as triplets")
    m.add_argument("input")
    m.add_argument("-N", type=int, default=16, help="column cutoff")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = resolve_config(args)
        if args.command == "classify":
            text, status = cmd_classify(args.input, config)
        elif args.command == "convergence":
            if args.format is None and ENV_PREFIX + "FORMAT" not in os.environ:
                config = RunConfig(config.classify, "csv")
            text, status = cmd_convergence(args.input, config)
        elif args.command == "gallery":
            text, status = cmd_gallery(args.name, parse_gallery_params(args.params), config)
        else:
            if args.N < 1:
                raise UsageError("-N must be >= 1")
            return cmd_matrix(args.input, args.N, args.output)
    except (CoefficientFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(text, args.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
