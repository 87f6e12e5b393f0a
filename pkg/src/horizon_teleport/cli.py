"""Command-line interface.

Subcommands:
  fef              evaluate one parameter point
  sweep            run a sweep described by a JSON spec (file or stdin)
  figure N         run one of the six built-in figure presets
  optimize-filter  find the filter strength maximizing the fraction

Exit codes: 0 success, 2 configuration error, 3 physics-domain error
(dilaton parameter at or above the mass, every grid point failing),
4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .dilaton import DilatonParams, UnruhMode
from .errors import (
    ConditionError,
    ConfigError,
    ConventionError,
    DimensionError,
    DomainError,
    EmptyInputError,
    PositivityError,
    RangeError,
    ShapeError,
    TraceError,
    ZeroProbabilityError,
)
from .sweep import (
    AlphaGrid,
    ResultRow,
    SweepSpec,
    emit_plot,
    figure_preset,
    run_sweep,
    spec_from_json,
    write_csv,
    write_json,
)
from .teleport import optimize_filter

_CONFIG_ERRORS = (
    ConfigError,
    RangeError,
    TraceError,
    PositivityError,
    ShapeError,
    ConventionError,
    DimensionError,
    json.JSONDecodeError,
)
_PHYSICS_ERRORS = (DomainError, ZeroProbabilityError, ConditionError)


def _add_point_args(sub, with_filter=True):
    sub.add_argument(
        "--state",
        required=True,
        metavar="R11,R22,R33,R44,R14,R23",
        help="six comma-separated X-state parameters",
    )
    sub.add_argument("--mass", type=float, default=1.0)
    sub.add_argument("--omega", type=float, default=1.0)
    sub.add_argument("--alpha", type=float, default=0.0)
    sub.add_argument("--q-r", dest="q_r", type=float, default=1.0)
    sub.add_argument("--damping", dest="p", type=float, default=0.0)
    if with_filter:
        sub.add_argument("--filter", dest="ft", type=float, default=None)


def _add_common_args(sub, formats, default_format):
    sub.add_argument("--out", metavar="PATH", default=None)
    sub.add_argument("--format", choices=formats, default=default_format)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--restarts", type=int, default=None)
    sub.add_argument("--numeric-fallback", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horizon-teleport",
        description="Teleportation fidelity near a dilaton black hole "
        "under amplitude damping and local filtering.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    fef = subs.add_parser("fef", help="evaluate a single parameter point")
    _add_point_args(fef)
    _add_common_args(fef, ("text", "csv", "json", "svg"), "text")

    sweep = subs.add_parser("sweep", help="run a sweep from a JSON spec")
    sweep.add_argument(
        "--spec", required=True, metavar="PATH", help="spec file, or - for stdin"
    )
    _add_common_args(sweep, ("csv", "json", "svg"), None)

    figure = subs.add_parser("figure", help="run a built-in figure preset")
    figure.add_argument("n", type=int, help="preset number, 1..6")
    _add_common_args(figure, ("csv", "json", "svg"), "csv")

    opt = subs.add_parser(
        "optimize-filter", help="maximize the fraction over the filter strength"
    )
    _add_point_args(opt, with_filter=False)
    opt.add_argument("--grid", type=int, default=64)
    opt.add_argument("--refine-tol", type=float, default=1e-10)
    _add_common_args(opt, ("text", "json"), "text")
    return parser


def _parse_state(raw: str) -> tuple[float, ...]:
    parts = raw.split(",")
    if len(parts) != 6:
        raise ConfigError(f"--state needs six comma-separated values, got {len(parts)}")
    try:
        return tuple(float(v) for v in parts)
    except ValueError as exc:
        raise ConfigError(f"--state values must be numbers: {exc}") from exc


def _apply_overrides(spec: SweepSpec, args) -> SweepSpec:
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if getattr(args, "restarts", None) is not None:
        changes["restarts"] = args.restarts
    return dataclasses.replace(spec, **changes) if changes else spec


def _write_output(data: bytes, out_path) -> None:
    if out_path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out_path, "wb") as handle:
            handle.write(data)


def _render_rows(rows, fmt: str) -> bytes:
    if fmt == "csv":
        return write_csv(rows)
    if fmt == "json":
        return write_json(rows)
    if fmt == "svg":
        return emit_plot(rows)
    raise ConfigError(f"unsupported format {fmt!r}")


def _check_not_all_failed(rows) -> None:
    if all(r.method.startswith("error:") for r in rows):
        raise ZeroProbabilityError(
            "every grid point failed; rerun with --numeric-fallback or "
            "adjust the spec"
        )


def _fmt_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _row_text(row: ResultRow) -> bytes:
    pairs = [
        ("alpha", row.alpha),
        ("p", row.p),
        ("q_R", row.q_r),
        ("ft", row.ft),
        ("cos2_r", row.cos2_r),
        ("f", row.f),
        ("F", row.fidelity),
        ("z1", row.z1),
        ("delta_alpha", row.delta_alpha),
        ("method", row.method),
    ]
    return ("".join(f"{k}={_fmt_value(v)}\n" for k, v in pairs)).encode("utf-8")


def _cmd_fef(args) -> int:
    state = _parse_state(args.state)
    spec = SweepSpec(
        x_state=state,
        mass=args.mass,
        omega=args.omega,
        alpha_grid=AlphaGrid(args.alpha, args.alpha, 1),
        q_r_list=(args.q_r,),
        p_list=(args.p,),
        ft_list=(args.ft if args.ft is not None else 0.0,),
    )
    spec = _apply_overrides(spec, args)
    rows = run_sweep(spec, numeric_fallback=args.numeric_fallback)
    _check_not_all_failed(rows)
    if args.format == "text":
        _write_output(_row_text(rows[0]), args.out)
    else:
        _write_output(_render_rows(rows, args.format), args.out)
    return 0


def _cmd_sweep(args) -> int:
    if args.spec == "-":
        raw = sys.stdin.read()
    else:
        with open(args.spec, "r", encoding="utf-8") as handle:
            raw = handle.read()
    spec = spec_from_json(json.loads(raw))
    spec = _apply_overrides(spec, args)
    fmt = args.format or (spec.outputs[0] if spec.outputs else "csv")
    rows = run_sweep(spec, numeric_fallback=args.numeric_fallback)
    _check_not_all_failed(rows)
    _write_output(_render_rows(rows, fmt), args.out)
    return 0


def _cmd_figure(args) -> int:
    spec = _apply_overrides(figure_preset(args.n), args)
    rows = run_sweep(spec, numeric_fallback=args.numeric_fallback)
    _check_not_all_failed(rows)
    _write_output(_render_rows(rows, args.format), args.out)
    return 0


def _cmd_optimize(args) -> int:
    state = _parse_state(args.state)
    from .qstate import make_x_state

    x = make_x_state(*state)
    dp = DilatonParams(args.mass, args.alpha, args.omega)
    um = UnruhMode(args.q_r)
    kwargs = {}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.restarts is not None:
        kwargs["restarts"] = args.restarts
    best = optimize_filter(
        x, dp, um, args.p, grid=args.grid, refine_tol=args.refine_tol, **kwargs
    )
    if args.format == "json":
        payload = {
            "ft_star": best.ft_star,
            "f_star": best.f_star,
            "z1_star": best.z1_star,
        }
        _write_output((json.dumps(payload, indent=2) + "\n").encode(), args.out)
    else:
        text = (
            f"ft_star={_fmt_value(best.ft_star)}\n"
            f"f_star={_fmt_value(best.f_star)}\n"
            f"z1_star={_fmt_value(best.z1_star)}\n"
        )
        _write_output(text.encode(), args.out)
    return 0


_COMMANDS = {
    "fef": _cmd_fef,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "optimize-filter": _cmd_optimize,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _PHYSICS_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except EmptyInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
