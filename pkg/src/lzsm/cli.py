"""Command-line interface.

Subcommands:
  simulate   one method, one delta, amplitudes on a tau grid
  compare    several methods on a shared grid (long/tidy rows)
  sweep      deviation map |P_exact - P_asymptotic| over a delta range
  probe      scalar diagnostics: lzsm-prob, stokes-phase, jump-time, zeta

Outputs are deterministic: identical configuration produces byte-identical
files (floats fixed at 17 significant digits, schema version stamped in every
file).  Exit codes: 0 success, 2 usage/config error, 3 numerical failure,
4 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .core import ConvergenceError, DomainError, Method, OverflowRangeError, Spinor
from .analysis import (
    SCHEMA_VERSION,
    SweepConfig,
    compare_dynamics,
    compare_rows_to_csv,
    deviation_map,
    deviation_map_to_csv,
    format_float,
    jump_time,
)
from .core import lzsm_probability
from .impulse import stokes_phase, zeta

__all__ = ["run_cli", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

_CONFIG_KEYS = {
    "delta_values",
    "tau_start",
    "tau_end",
    "tau_count",
    "init",
    "methods",
    "output_path",
    "format",
}


class UsageError(Exception):
    pass


def _parse_init(text):
    parts = [p.strip() for p in text.split(",")]
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"cannot parse --init {text!r}: {exc}") from None
    if len(vals) == 2:
        return Spinor(complex(vals[0], 0.0), complex(vals[1], 0.0))
    if len(vals) == 4:
        return Spinor(complex(vals[0], vals[1]), complex(vals[2], vals[3]))
    raise UsageError("--init expects 'a,b' (real) or 're_a,im_a,re_b,im_b'")


def _parse_delta_range(text):
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise UsageError(f"cannot parse --delta-range {text!r}: {exc}") from None
    if n < 1:
        raise UsageError("--delta-range count must be >= 1")
    return [float(x) for x in np.linspace(a, b, n)]


def _parse_methods(text):
    out = []
    for name in text.split(","):
        name = name.strip()
        try:
            out.append(Method(name))
        except ValueError:
            raise UsageError(
                f"unknown method {name!r}; choose from "
                f"{', '.join(m.value for m in Method)}"
            ) from None
    return out


def _load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError:
        raise
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path}: top level must be an object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise UsageError(
            f"config {path}: unknown keys {sorted(unknown)}"
        )
    return data


def _build_sweep_config(args, default_methods):
    """Merge --config file values with explicit flags (flags win)."""
    data = _load_config(args.config) if args.config else {}

    if getattr(args, "delta", None) is not None:
        deltas = [args.delta]
    elif getattr(args, "delta_range", None):
        deltas = _parse_delta_range(args.delta_range)
    elif "delta_values" in data:
        deltas = [float(d) for d in data["delta_values"]]
    else:
        raise UsageError("no delta specified (--delta, --delta-range or config)")

    tau_start = args.tau_start if args.tau_start is not None else data.get(
        "tau_start", -10.0
    )
    tau_end = args.tau_end if args.tau_end is not None else data.get("tau_end", 10.0)
    tau_count = (
        args.tau_count if args.tau_count is not None else data.get("tau_count", 201)
    )

    if args.init is not None:
        init = _parse_init(args.init)
    elif "init" in data:
        vals = data["init"]
        if not isinstance(vals, list) or len(vals) not in (2, 4):
            raise UsageError("config init must be a list of 2 or 4 numbers")
        init = _parse_init(",".join(str(v) for v in vals))
    else:
        init = Spinor(0j, 1.0 + 0j)

    if getattr(args, "method", None):
        methods = _parse_methods(args.method)
    elif getattr(args, "methods", None):
        methods = _parse_methods(args.methods)
    elif "methods" in data:
        methods = _parse_methods(",".join(data["methods"]))
    else:
        methods = list(default_methods)

    out = args.out if args.out is not None else data.get("output_path")
    fmt = args.format if args.format is not None else data.get("format", "csv")

    try:
        return SweepConfig(
            delta_values=deltas,
            tau_start=float(tau_start),
            tau_end=float(tau_end),
            tau_count=int(tau_count),
            init=init,
            methods=tuple(methods),
            output_path=out,
            format=fmt,
        )
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _rows_to_json(rows):
    body = ",\n".join(
        "    {"
        + ", ".join(
            [
                f'"tau": {format_float(r["tau"])}',
                f'"method": "{r["method"]}"',
                f'"re_alpha": {format_float(r["re_alpha"])}',
                f'"im_alpha": {format_float(r["im_alpha"])}',
                f'"re_beta": {format_float(r["re_beta"])}',
                f'"im_beta": {format_float(r["im_beta"])}',
                f'"p_alpha": {format_float(r["p_alpha"])}',
                f'"p_beta": {format_float(r["p_beta"])}',
                f'"norm": {format_float(r["norm"])}',
                f'"in_jump_window": {r["in_jump_window"]}',
            ]
        ).replace("nan", "null")
        + "}"
        for r in rows
    )
    return (
        '{\n  "schema": "%s",\n  "table": "compare",\n  "rows": [\n%s\n  ]\n}\n'
        % (SCHEMA_VERSION, body)
    )


def _deviation_to_json(dm):
    rows = []
    diff = dm.grid
    for i, d in enumerate(dm.delta_values):
        for j, t in enumerate(dm.tau_values):
            cells = [
                f'"tau": {format_float(float(t))}',
                f'"delta": {format_float(float(d))}',
                f'"p_zener": {format_float(float(dm.p_zener[i, j]))}',
                f'"p_majorana": {format_float(float(dm.p_majorana[i, j]))}',
                f'"abs_diff": {format_float(float(diff[i, j]))}',
                f'"tau_jump": {format_float(float(dm.jump_curve[i]))}',
            ]
            rows.append(("    {" + ", ".join(cells) + "}").replace("nan", "null"))
    return (
        '{\n  "schema": "%s",\n  "table": "deviation",\n  "rows": [\n%s\n  ]\n}\n'
        % (SCHEMA_VERSION, ",\n".join(rows))
    )


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_simulate(args):
    cfg = _build_sweep_config(args, default_methods=(Method.ODE,))
    if len(cfg.methods) != 1:
        raise UsageError("simulate expects exactly one --method")
    if len(cfg.delta_values) != 1:
        raise UsageError("simulate expects exactly one delta")
    rows = compare_dynamics(cfg)
    text = compare_rows_to_csv(rows) if cfg.format == "csv" else _rows_to_json(rows)
    _emit(text, cfg.output_path)
    return EXIT_OK


def _cmd_compare(args):
    cfg = _build_sweep_config(args, default_methods=tuple(Method))
    if len(cfg.delta_values) != 1:
        raise UsageError("compare expects exactly one delta")
    rows = compare_dynamics(cfg)
    text = compare_rows_to_csv(rows) if cfg.format == "csv" else _rows_to_json(rows)
    _emit(text, cfg.output_path)
    return EXIT_OK


def _cmd_sweep(args):
    cfg = _build_sweep_config(args, default_methods=(Method.ZENER, Method.MAJORANA))
    grid = cfg.tau_grid
    # independent delta rows evaluated concurrently, output order fixed by index
    def one(d):
        return deviation_map([d], grid, cfg.init)

    with ThreadPoolExecutor() as pool:
        maps = list(pool.map(one, cfg.delta_values))
    full = maps[0]
    if len(maps) > 1:
        from .analysis import DeviationMap

        full = DeviationMap(
            delta_values=np.array(cfg.delta_values, dtype=float),
            tau_values=grid,
            p_zener=np.vstack([m.p_zener for m in maps]),
            p_majorana=np.vstack([m.p_majorana for m in maps]),
            jump_curve=np.concatenate([m.jump_curve for m in maps]),
            threshold=maps[0].threshold,
            flagged=np.vstack([m.flagged for m in maps]),
        )
    text = (
        deviation_map_to_csv(full)
        if cfg.format == "csv"
        else _deviation_to_json(full)
    )
    _emit(text, cfg.output_path)
    return EXIT_OK


def _cmd_probe(args):
    delta = args.delta
    if delta is None:
        raise UsageError("probe requires --delta")
    what = args.what
    if what == "lzsm-prob":
        value = lzsm_probability(delta)
    elif what == "stokes-phase":
        value = stokes_phase(delta)
    elif what == "jump-time":
        value = jump_time(delta)
    elif what == "zeta":
        value = zeta(args.tau_a, delta)
    else:  # argparse choices make this unreachable
        raise UsageError(f"unknown probe {what!r}")
    payload = (
        '{"schema": "%s", "what": "%s", "delta": %s, "value": %s}\n'
        % (SCHEMA_VERSION, what, format_float(delta), format_float(value))
    )
    _emit(payload, args.out)
    return EXIT_OK


def _add_grid_flags(p, multi_delta=False):
    p.add_argument("--delta", type=float, default=None)
    if multi_delta:
        p.add_argument("--delta-range", default=None, metavar="A:B:N")
    p.add_argument("--tau-start", type=float, default=None)
    p.add_argument("--tau-end", type=float, default=None)
    p.add_argument("--tau-count", type=int, default=None)
    p.add_argument("--init", default=None,
                   help="'a,b' (real) or 're_a,im_a,re_b,im_b'")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--config", default=None, help="JSON config file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lzsm",
        description="Single-passage driven two-level dynamics, four ways.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one method on a tau grid")
    _add_grid_flags(p)
    p.add_argument("--method", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="run several methods on a shared grid")
    _add_grid_flags(p)
    p.add_argument("--methods", default=None,
                   help="comma-separated subset of: "
                        + ",".join(m.value for m in Method))
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("sweep", help="deviation map over a delta range")
    _add_grid_flags(p, multi_delta=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("probe", help="print a scalar diagnostic")
    p.add_argument("--what", required=True,
                   choices=("lzsm-prob", "stokes-phase", "jump-time", "zeta"))
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--tau-a", type=float, default=100.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_probe)
    return parser


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ConvergenceError, OverflowRangeError, FloatingPointError) as exc:
        diag = {"schema": SCHEMA_VERSION, "error": type(exc).__name__,
                "message": str(exc)}
        sys.stderr.write(json.dumps(diag) + "\n")
        return EXIT_NUMERIC
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
