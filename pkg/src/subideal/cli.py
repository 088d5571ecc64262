"""Command-line front end.

Subcommands: ``freqz``, ``impulse``, ``apply``, ``verify``, ``figures``.
Exit codes: 0 success (all checks pass), 1 numeric failure or failed
check, 2 usage or configuration error.

Relative ``--out`` paths are resolved against ``$SUBIDEAL_OUTPUT_DIR`` when
it is set; without ``--out`` single-file commands write to stdout.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import math
import os
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .complex_core import FilterParams, ReferenceParams, log_gain, phase, reference_gain, transfer_eval
from .csvio import SPECTRUM_HEADER, CSVFormatError, dump_json, read_signal_csv, signal_to_csv, write_table
from .design import matched_alpha
from .filtering import StreamState, convolve_direct, convolve_fft, stream_push
from .quadrature import QuadratureConfig
from .spectral import (
    DEFAULT_RESOLUTION_FACTOR,
    DEFAULT_TAIL_EPS,
    FrequencyGrid,
    SampledSignal,
    auto_grid,
    impulse_response,
)
from .verify import CHECK_NAMES, causality_defect, check_identity_approx, run_battery

logger = logging.getLogger("subideal")

OUTPUT_DIR_ENV = "SUBIDEAL_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    """Invalid command-line configuration."""


# ------------------------------------------------------------------ parsing


def _common(parser: argparse.ArgumentParser, *, filter_args: bool = True) -> None:
    if filter_args:
        parser.add_argument("--alpha", default=None, help="alpha, or 'from-matched' for mu / cos(q pi / 2)")
        parser.add_argument("--beta", type=float, default=None)
        parser.add_argument("--q", type=float, default=None)
    parser.add_argument("--mu", type=float, default=None, help="reference decay rate")
    parser.add_argument("--omega-max", type=float, default=None)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--tail-eps", type=float, default=DEFAULT_TAIL_EPS)
    parser.add_argument("--resolution-factor", type=float, default=DEFAULT_RESOLUTION_FACTOR)
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output path (stdout if omitted)")
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subideal", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("freqz", help="frequency response table")
    _common(p)
    p.add_argument("--omega-min", type=float, default=0.0)
    p.add_argument("--reference", action="store_true", help="add the reference gain column (needs --mu)")

    p = sub.add_parser("impulse", help="impulse response by inverse FFT")
    _common(p)

    p = sub.add_parser("apply", help="filter a sampled signal")
    _common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("direct", "fft", "stream"), default="fft")
    p.add_argument("--chunk", type=int, default=256, help="chunk length for --mode stream")

    p = sub.add_parser("verify", help="run the verification battery")
    _common(p)
    p.add_argument("--check", action="append", default=None, help=f"one of {', '.join(CHECK_NAMES)}, b, c")
    p.add_argument("--omega", type=float, default=100.0, help="frequency for the gain-ratio check")
    p.add_argument("--threshold", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--rel-tol", type=float, default=QuadratureConfig.rel_tol)
    p.add_argument("--max-subdivisions", type=int, default=QuadratureConfig.max_subdivisions)

    p = sub.add_parser("figures", help="write the three figure datasets as CSV")
    _common(p, filter_args=False)
    p.add_argument("--fig1-mu", type=float, default=0.1)
    p.add_argument("--fig1-qs", default="0.99,0.9")
    p.add_argument("--fig1-omega-max", type=float, default=200.0)
    p.add_argument("--fig2-mu", type=float, default=0.05)
    p.add_argument("--fig2-alphas", default="0.1,0.05", help="alpha = beta values")
    p.add_argument("--fig2-q", type=float, default=0.5)
    p.add_argument("--fig2-omega-max", type=float, default=100.0)
    p.add_argument("--fig3-q", type=float, default=0.9)
    p.add_argument("--fig3-beta", type=float, default=0.1)
    p.add_argument("--fig3-alpha", type=float, default=6.3925)
    return parser


# ------------------------------------------------------------ configuration


def _resolve_filter(args) -> FilterParams:
    if args.q is None or args.beta is None or args.alpha is None:
        raise ConfigError("--alpha, --beta and --q are required")
    if args.alpha == "from-matched":
        if args.mu is None:
            raise ConfigError("--alpha from-matched needs --mu")
        if not 0 < args.q < 1 or args.mu <= 0:
            raise ConfigError("need 0 < q < 1 and mu > 0")
        alpha = matched_alpha(args.mu, args.q)
    else:
        try:
            alpha = float(args.alpha)
        except ValueError:
            raise ConfigError(f"--alpha must be a number or 'from-matched', got {args.alpha!r}") from None
    try:
        return FilterParams(alpha, args.beta, args.q)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _resolve_reference(mu) -> ReferenceParams:
    try:
        return ReferenceParams(mu)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None


def _check_common(args) -> None:
    if not 0 < args.tail_eps < 1:
        raise ConfigError("--tail-eps must lie in (0, 1)")
    if args.resolution_factor <= 0:
        raise ConfigError("--resolution-factor must be positive")
    if args.samples is not None and args.samples < 1:
        raise ConfigError("--samples must be positive")


def _grid(args, p: FilterParams) -> FrequencyGrid:
    if args.omega_max is None and args.samples is None:
        return auto_grid(p, args.tail_eps, args.resolution_factor)
    if args.omega_max is not None and args.omega_max <= 0:
        raise ConfigError("--omega-max must be positive")
    omega_max = args.omega_max if args.omega_max is not None else auto_grid(p, args.tail_eps, 1.0).omega_max
    if args.samples is not None:
        n = args.samples
    else:
        n = max(8, 1 << math.ceil(math.log2(max(1.0, args.resolution_factor * p.alpha * omega_max / math.pi))))
    try:
        return FrequencyGrid(omega_max, n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _parse_floats(text: str, name: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"{name} must be a comma-separated list of numbers") from None


def _parse_thresholds(items: Sequence[str]) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or name not in CHECK_NAMES:
            raise ConfigError(f"bad --threshold {item!r}; expected NAME=VALUE with NAME in {', '.join(CHECK_NAMES)}")
        try:
            out[name] = float(value)
        except ValueError:
            raise ConfigError(f"bad threshold value in {item!r}") from None
    return out


def _out_path(path: str | None) -> Path | None:
    if path is None:
        return None
    out = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def _emit(args, text: str) -> None:
    out = _out_path(args.out)
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _meta(command: str, config: dict, **extra: Any) -> dict:
    meta = {"artifact_version": __version__, "command": command, "config": config}
    meta.update(extra)
    return meta


def _table_text(fmt: str, header: Sequence[str], columns, meta: dict) -> str:
    if fmt == "json":
        payload = {"meta": meta, "columns": {h: np.asarray(c, dtype=float) for h, c in zip(header, columns)}}
        return dump_json(payload) + "\n"
    buf = io.StringIO()
    write_table(buf, header, columns, meta)
    return buf.getvalue()


# ----------------------------------------------------------------- commands


def cmd_freqz(args) -> int:
    p = _resolve_filter(args)
    _check_common(args)
    r = _resolve_reference(args.mu) if args.reference else None
    if args.reference and args.mu is None:
        raise ConfigError("--reference needs --mu")
    lo = args.omega_min
    hi = args.omega_max if args.omega_max is not None else 200.0
    if hi < lo:
        raise ConfigError("--omega-max must not be below --omega-min")
    n = 1 if hi == lo else (args.samples if args.samples is not None else 2001)
    if n < 1 or (hi > lo and n < 2):
        raise ConfigError("--samples must be at least 2 for a non-empty range")
    omegas = np.linspace(lo, hi, n)
    values = transfer_eval(p, 1j * omegas)
    header = list(SPECTRUM_HEADER)
    columns = [omegas, values.real, values.imag, np.exp(log_gain(p, omegas)), phase(p, omegas)]
    if r is not None:
        header.append("ref_gain")
        columns.append(reference_gain(r, omegas))
    config = {"filter": p.as_dict(), "mu": args.mu, "omega_min": lo, "omega_max": hi, "samples": n}
    _emit(args, _table_text(args.format, header, columns, _meta("freqz", config)))
    return EXIT_OK


def _impulse_meta(p: FilterParams, grid: FrequencyGrid, h: SampledSignal) -> dict:
    defect = causality_defect(h)
    h0 = math.exp(log_gain(p, 0.0))
    dc_sum = float(np.sum(h.values) * h.dt)
    return {
        "grid": grid.as_dict(),
        "causality_defect": defect,
        "clipped_energy_fraction": defect,
        "imag_residue": h.meta.get("imag_residue"),
        "dc_sum": dc_sum,
        "dc_gain": h0,
        "dc_error": abs(dc_sum - h0),
    }


def cmd_impulse(args) -> int:
    p = _resolve_filter(args)
    _check_common(args)
    grid = _grid(args, p)
    h = impulse_response(p, grid)
    config = {"filter": p.as_dict(), "tail_eps": args.tail_eps, "resolution_factor": args.resolution_factor}
    meta = _meta("impulse", config, **_impulse_meta(p, grid, h))
    if args.format == "json":
        text = _table_text("json", ["t", "value"], [h.times, h.values], meta)
    else:
        text = signal_to_csv(h, meta)
    _emit(args, text)
    return EXIT_OK


def cmd_apply(args) -> int:
    p = _resolve_filter(args)
    _check_common(args)
    if args.chunk < 1:
        raise ConfigError("--chunk must be positive")
    path = Path(args.input)
    if not path.is_file():
        raise ConfigError(f"input file {path} not found")
    x = read_signal_csv(path)
    omega_max = args.omega_max if args.omega_max is not None else math.pi / x.dt
    if args.samples is not None:
        n = args.samples
    else:
        span = max(args.resolution_factor * p.alpha, 2 * len(x) * x.dt)
        n = max(8, 1 << math.ceil(math.log2(span * omega_max / math.pi)))
    try:
        grid = FrequencyGrid(omega_max, n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    h = impulse_response(p, grid)
    if args.mode == "direct":
        y = convolve_direct(h, x)
    elif args.mode == "fft":
        y = convolve_fft(h, x)
    else:
        state = StreamState.from_kernel(h)
        if abs(state.dt - x.dt) > 1e-9 * x.dt:
            from .filtering import SamplingRateMismatch

            raise SamplingRateMismatch(f"kernel dt={state.dt} differs from input dt={x.dt}")
        chunks = [stream_push(state, x.values[i : i + args.chunk]) for i in range(0, len(x), args.chunk)]
        y = SampledSignal(x.t0 + state.kernel.t0, x.dt, np.concatenate(chunks))
    config = {
        "filter": p.as_dict(),
        "input": str(path),
        "mode": args.mode,
        "chunk": args.chunk if args.mode == "stream" else None,
        "grid": grid.as_dict(),
    }
    meta = _meta("apply", config, causality_defect=causality_defect(h))
    if args.format == "json":
        text = _table_text("json", ["t", "value"], [y.times, y.values], meta)
    else:
        text = signal_to_csv(y, meta)
    _emit(args, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _resolve_filter(args)
    _check_common(args)
    if args.mu is None:
        raise ConfigError("verify needs --mu")
    r = _resolve_reference(args.mu)
    thresholds = _parse_thresholds(args.threshold)
    try:
        qc = QuadratureConfig(rel_tol=args.rel_tol, max_subdivisions=args.max_subdivisions)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    checks = args.check
    if checks is not None:
        from .verify import expand_checks

        try:
            expand_checks(checks)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    report = run_battery(p, r, checks, thresholds, args.omega, qc)
    _emit(args, report.to_json())
    for rec in report.checks:
        logger.info("%-12s %s", rec.name, "pass" if rec.verdict else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_figures(args) -> int:
    _check_common(args)
    base = args.out or os.environ.get(OUTPUT_DIR_ENV) or "."
    outdir = Path(base)
    n = args.samples if args.samples is not None else 2001
    if n < 2:
        raise ConfigError("--samples must be at least 2")

    # gain decay against the reference
    qs = _parse_floats(args.fig1_qs, "--fig1-qs")
    ref1 = _resolve_reference(args.fig1_mu)
    try:
        fig1_filters = [FilterParams(matched_alpha(ref1.mu, q), 1 - q, q) for q in qs]
        fig2_filters = [FilterParams(a, a, args.fig2_q) for a in _parse_floats(args.fig2_alphas, "--fig2-alphas")]
        fig3 = FilterParams(args.fig3_alpha, args.fig3_beta, args.fig3_q)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    ref2 = _resolve_reference(args.fig2_mu)

    w1 = np.linspace(0.0, args.fig1_omega_max, n)
    header1 = ["omega", "ref_gain"] + [f"gain_q{p.q:g}" for p in fig1_filters]
    cols1 = [w1, reference_gain(ref1, w1)] + [np.exp(log_gain(p, w1)) for p in fig1_filters]
    meta1 = _meta("figures", {"figure": "fig1_gain", "mu": ref1.mu, "filters": [p.as_dict() for p in fig1_filters]})

    # identity-approximation error curves
    w2 = np.linspace(-args.fig2_omega_max, args.fig2_omega_max, n)
    header2 = ["omega", "ref_error"] + [f"error_a{p.alpha:g}" for p in fig2_filters]
    cols2 = [w2, np.abs(reference_gain(ref2, w2) - 1.0)]
    cols2 += [np.abs(transfer_eval(p, 1j * w2) - 1.0) for p in fig2_filters]
    meta2 = _meta("figures", {"figure": "fig2_identity_error", "mu": ref2.mu, "filters": [p.as_dict() for p in fig2_filters]})

    grid = _grid(args, fig3)
    h = impulse_response(fig3, grid)
    meta3 = _meta("figures", {"figure": "fig3_impulse", "filter": fig3.as_dict()}, **_impulse_meta(fig3, grid, h))

    outdir.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    write_table(buf, header1, cols1, meta1)
    (outdir / "fig1_gain.csv").write_text(buf.getvalue())
    buf = io.StringIO()
    write_table(buf, header2, cols2, meta2)
    (outdir / "fig2_identity_error.csv").write_text(buf.getvalue())
    (outdir / "fig3_impulse.csv").write_text(signal_to_csv(h, meta3))
    return EXIT_OK


COMMANDS = {
    "freqz": cmd_freqz,
    "impulse": cmd_impulse,
    "apply": cmd_apply,
    "verify": cmd_verify,
    "figures": cmd_figures,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, CSVFormatError) as exc:
        print(f"subideal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # numeric failures map to exit code 1
        print(f"subideal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
