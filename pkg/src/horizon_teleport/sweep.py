"""Parameter sweeps, figure presets, and CSV/JSON/SVG emission.

A sweep evaluates the fully entangled fraction and teleportation fidelity
over a Cartesian grid of dilaton parameters, damping magnitudes, mode
weights and filter strengths.  Within ``ft_list`` the value 0 means "no
filter applied": the strength-zero filter is a projector onto the sender's
ground level, a physically different operation, so absence is encoded as
absence (empty ``ft`` column in CSV, ``null`` in JSON).

Rows are plain records sorted by (q_r desc, p asc, ft asc, alpha asc) and
the whole pipeline is a deterministic function of the spec, so repeated
runs are byte-identical.  Evaluation parallelism is capped by the
``HT_THREADS`` environment variable; unset means serial.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .dilaton import DilatonParams, UnruhMode, mode_coefficients
from .errors import (
    ConditionError,
    ConfigError,
    DomainError,
    EmptyInputError,
    HorizonTeleportError,
    RangeError,
    ZeroProbabilityError,
)
from .qstate import make_x_state
from .teleport import fef_after_filter, fef_after_horizon

CSV_HEADER = "alpha,p,q_R,ft,cos2_r,f,F,z1,delta_alpha,method"

ERROR_CONDITION = "error:condition-not-met"
ERROR_ZERO_PROBABILITY = "error:zero-probability"


@dataclass(frozen=True)
class AlphaGrid:
    """Inclusive, linearly spaced grid of dilaton parameters."""

    start: float
    stop: float
    steps: int

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """Full description of one sweep.

    ``ft_list`` uses 0 to mean "no filter"; ``q_r_ft_pairs``, when given,
    replaces the q_r x ft cross product with explicit pairs (same 0-means-
    none convention) so presets can bind a filter strength to a mode weight.
    """

    x_state: tuple[float, float, float, float, float, float]
    mass: float = 1.0
    omega: float = 1.0
    alpha_grid: AlphaGrid = AlphaGrid(0.0, 0.99, 100)
    q_r_list: tuple[float, ...] = (1.0,)
    p_list: tuple[float, ...] = (0.0,)
    ft_list: tuple[float, ...] = (0.0,)
    q_r_ft_pairs: Optional[tuple[tuple[float, float], ...]] = None
    seed: int = 0
    restarts: int = 20
    outputs: tuple[str, ...] = ("csv",)


@dataclass(frozen=True)
class ResultRow:
    """One evaluated grid point.

    ``ft`` is None for unfiltered rows; numeric fields are None on rows
    whose evaluation failed, with the failure named in ``method``.
    """

    alpha: float
    p: float
    q_r: float
    ft: Optional[float]
    cos2_r: float
    f: Optional[float]
    fidelity: Optional[float]
    z1: Optional[float]
    delta_alpha: Optional[float]
    method: str


def validate_spec(spec: SweepSpec) -> None:
    """Raise ConfigError / DomainError if the spec cannot be evaluated."""
    if len(spec.x_state) != 6:
        raise ConfigError(f"x_state needs six entries, got {len(spec.x_state)}")
    try:
        make_x_state(*spec.x_state)
    except HorizonTeleportError as exc:
        raise ConfigError(f"x_state is not a valid X-state: {exc}") from exc
    if spec.mass <= 0 or spec.omega <= 0:
        raise DomainError("mass and omega must be positive")
    grid = spec.alpha_grid
    if grid.steps < 1:
        raise ConfigError(f"alpha grid needs at least one step, got {grid.steps}")
    if grid.start < 0 or grid.stop < grid.start:
        raise ConfigError(f"alpha grid [{grid.start}, {grid.stop}] is not increasing")
    if grid.stop >= spec.mass:
        raise DomainError(
            f"alpha grid stop {grid.stop} must stay below the mass {spec.mass}"
        )
    if not spec.q_r_list or not spec.p_list or not spec.ft_list:
        raise ConfigError("q_r_list, p_list and ft_list must be non-empty")
    for q in spec.q_r_list:
        if not 0.0 <= q <= 1.0:
            raise DomainError(f"q_r {q} outside [0, 1]")
    for p in spec.p_list:
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"damping magnitude {p} outside [0, 1]")
    for ft in spec.ft_list:
        if not 0.0 <= ft <= 1.0:
            raise DomainError(f"filter strength {ft} outside [0, 1]")
    if spec.q_r_ft_pairs is not None:
        for q, ft in spec.q_r_ft_pairs:
            if not 0.0 <= q <= 1.0 or not 0.0 <= ft <= 1.0:
                raise DomainError(f"pair ({q}, {ft}) outside [0, 1]^2")
    if spec.restarts < 1:
        raise ConfigError(f"restarts must be >= 1, got {spec.restarts}")
    unknown = set(spec.outputs) - {"csv", "json", "svg"}
    if unknown:
        raise ConfigError(f"unknown output formats: {sorted(unknown)}")


_SPEC_KEYS = {
    "x_state",
    "mass",
    "omega",
    "alpha_grid",
    "q_r_list",
    "p_list",
    "ft_list",
    "q_r_ft_pairs",
    "seed",
    "restarts",
    "outputs",
}


def spec_from_json(doc: dict) -> SweepSpec:
    """Build a SweepSpec from its JSON mirror; unknown keys are errors."""
    if not isinstance(doc, dict):
        raise ConfigError("sweep config must be a JSON object")
    unknown = set(doc) - _SPEC_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "x_state" not in doc:
        raise ConfigError("config is missing required key 'x_state'")
    try:
        kwargs = {"x_state": tuple(float(v) for v in doc["x_state"])}
        if "alpha_grid" in doc:
            grid = doc["alpha_grid"]
            extra = set(grid) - {"start", "stop", "steps"}
            if extra:
                raise ConfigError(f"unknown alpha_grid keys: {sorted(extra)}")
            kwargs["alpha_grid"] = AlphaGrid(
                float(grid["start"]), float(grid["stop"]), int(grid["steps"])
            )
        for key in ("mass", "omega"):
            if key in doc:
                kwargs[key] = float(doc[key])
        for key in ("q_r_list", "p_list", "ft_list"):
            if key in doc:
                kwargs[key] = tuple(float(v) for v in doc[key])
        if doc.get("q_r_ft_pairs") is not None:
            kwargs["q_r_ft_pairs"] = tuple(
                (float(q), float(ft)) for q, ft in doc["q_r_ft_pairs"]
            )
        for key in ("seed", "restarts"):
            if key in doc:
                kwargs[key] = int(doc[key])
        if "outputs" in doc:
            kwargs["outputs"] = tuple(str(v) for v in doc["outputs"])
    except ConfigError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"malformed sweep config: {exc}") from exc
    spec = SweepSpec(**kwargs)
    validate_spec(spec)
    return spec


_SQRT2 = math.sqrt(2.0)
_FIG_STATES = {
    1: (0.0, 0.5, 0.5, 0.0, 0.0, 0.5),
    2: (_SQRT2 - 1.0, 0.5, (3.0 - 2.0 * _SQRT2) / 2.0, 0.0, 0.0, (_SQRT2 - 1.0) / 2.0),
    3: (
        (_SQRT2 - 1.0) / 2.0,
        _SQRT2 / 2.0,
        (3.0 - 2.0 * _SQRT2) / 2.0,
        0.0,
        0.0,
        (_SQRT2 - 1.0) / 4.0,
    ),
}


def figure_preset(n: int) -> SweepSpec:
    """Canonical sweep for one of the six reference figures.

    Presets 1-3 sweep the three initial states over p in {0, 0.4, 0.9} and
    q_r in {1, 0.8} without filtering; presets 4-6 fix p = 0.4 and compare
    filtered against unfiltered rows, with the filter strength bound to the
    mode weight where the two differ.  Defaults: mass = omega = 1 and a
    100-point alpha grid on [0, 0.99].
    """
    if n not in range(1, 7):
        raise RangeError(f"figure preset must be 1..6, got {n}")
    if n in (1, 2, 3):
        return SweepSpec(
            x_state=_FIG_STATES[n],
            p_list=(0.0, 0.4, 0.9),
            q_r_list=(1.0, 0.8),
            ft_list=(0.0,),
        )
    if n == 4:
        return SweepSpec(
            x_state=_FIG_STATES[1],
            p_list=(0.4,),
            q_r_ft_pairs=((1.0, 0.0), (1.0, 0.7), (0.8, 0.0), (0.8, 0.75)),
        )
    if n == 5:
        return SweepSpec(
            x_state=_FIG_STATES[2],
            p_list=(0.4,),
            q_r_list=(1.0, 0.8),
            ft_list=(0.0, 0.9),
        )
    return SweepSpec(
        x_state=_FIG_STATES[3],
        p_list=(0.4,),
        q_r_ft_pairs=((1.0, 0.0), (1.0, 0.9), (0.8, 0.0), (0.8, 0.98)),
    )


def _thread_cap() -> int:
    raw = os.environ.get("HT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ConfigError(f"HT_THREADS must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ConfigError(f"HT_THREADS must be >= 1, got {cap}")
    return cap


def _evaluate(x, spec, q_r, ft, p, alpha, numeric_fallback):
    """One grid point -> (cos2_r, f, z1, method)."""
    dp = DilatonParams(spec.mass, alpha, spec.omega)
    um = UnruhMode(q_r)
    cos2_r = mode_coefficients(dp).cos_r ** 2
    try:
        if ft is None:
            res = fef_after_horizon(
                x, dp, um, p, restarts=spec.restarts, seed=spec.seed
            )
            z1 = 1.0
        else:
            res = fef_after_filter(
                x, dp, um, p, ft, restarts=spec.restarts, seed=spec.seed
            )
            z1 = res.success_probability
        return cos2_r, res.f, z1, "closed_form"
    except ConditionError as exc:
        z1 = exc.fallback.success_probability if ft is not None else 1.0
        if numeric_fallback:
            return cos2_r, exc.fallback.f, z1, "numeric_fallback"
        return cos2_r, None, z1, ERROR_CONDITION
    except ZeroProbabilityError:
        return cos2_r, None, None, ERROR_ZERO_PROBABILITY


def run_sweep(spec: SweepSpec, numeric_fallback: bool = False) -> list[ResultRow]:
    """Evaluate the full grid described by the spec.

    Rows whose closed-form conditions fail either fall back to the numeric
    maximization (``numeric_fallback=True``) or carry an error marker in
    the ``method`` field; rows whose filter annihilates the state always
    carry an error marker.  The ``delta_alpha`` column is the row's
    fraction minus the fraction at alpha = 0 for the same (q_r, ft, p).
    """
    validate_spec(spec)
    x = make_x_state(*spec.x_state)
    if spec.q_r_ft_pairs is not None:
        combos = [(q, ft if ft > 0.0 else None) for q, ft in spec.q_r_ft_pairs]
    else:
        combos = [
            (q, ft if ft > 0.0 else None)
            for q in spec.q_r_list
            for ft in spec.ft_list
        ]
    alphas = [float(a) for a in spec.alpha_grid.points()]

    points = [
        (q_r, ft, p, alpha)
        for (q_r, ft) in combos
        for p in spec.p_list
        for alpha in alphas
    ]

    def job(point):
        q_r, ft, p, alpha = point
        return _evaluate(x, spec, q_r, ft, p, alpha, numeric_fallback)

    workers = _thread_cap()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, points))
    else:
        results = [job(point) for point in points]

    # Reference fraction at alpha = 0 for each (q_r, ft, p) group.
    reference: dict[tuple, Optional[float]] = {}
    for q_r, ft in combos:
        for p in spec.p_list:
            _, f0, _, _ = _evaluate(x, spec, q_r, ft, p, 0.0, numeric_fallback)
            reference[(q_r, ft, p)] = f0

    rows = []
    for (q_r, ft, p, alpha), (cos2_r, f, z1, method) in zip(points, results):
        f0 = reference[(q_r, ft, p)]
        delta = None if f is None or f0 is None else f - f0
        fidelity = None if f is None else (2.0 * f + 1.0) / 3.0
        rows.append(
            ResultRow(
                alpha=float(alpha),
                p=float(p),
                q_r=float(q_r),
                ft=None if ft is None else float(ft),
                cos2_r=float(cos2_r),
                f=None if f is None else float(f),
                fidelity=fidelity,
                z1=None if z1 is None else float(z1),
                delta_alpha=None if delta is None else float(delta),
                method=method,
            )
        )
    rows.sort(
        key=lambda r: (-r.q_r, r.p, -1.0 if r.ft is None else r.ft, r.alpha)
    )
    return rows


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else format(value, ".17g")


def write_csv(rows: Sequence[ResultRow]) -> bytes:
    """Serialize rows as UTF-8 CSV, 17 significant digits, LF endings."""
    if not rows:
        raise EmptyInputError("no rows to write")
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    _fmt(r.alpha),
                    _fmt(r.p),
                    _fmt(r.q_r),
                    _fmt(r.ft),
                    _fmt(r.cos2_r),
                    _fmt(r.f),
                    _fmt(r.fidelity),
                    _fmt(r.z1),
                    _fmt(r.delta_alpha),
                    r.method,
                ]
            )
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_csv(data: bytes) -> list[ResultRow]:
    """Inverse of :func:`write_csv`; bit-exact at 17 significant digits."""
    text = data.decode("utf-8")
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != CSV_HEADER:
        raise ConfigError("missing or unexpected CSV header")

    def num(sv: str) -> Optional[float]:
        return None if sv == "" else float(sv)

    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 10:
            raise ConfigError(f"expected 10 columns, got {len(parts)}")
        rows.append(
            ResultRow(
                alpha=float(parts[0]),
                p=float(parts[1]),
                q_r=float(parts[2]),
                ft=num(parts[3]),
                cos2_r=float(parts[4]),
                f=num(parts[5]),
                fidelity=num(parts[6]),
                z1=num(parts[7]),
                delta_alpha=num(parts[8]),
                method=parts[9],
            )
        )
    return rows


def write_json(rows: Sequence[ResultRow]) -> bytes:
    """Serialize rows as a JSON array mirroring the CSV columns."""
    if not rows:
        raise EmptyInputError("no rows to write")
    payload = [
        {
            "alpha": r.alpha,
            "p": r.p,
            "q_R": r.q_r,
            "ft": r.ft,
            "cos2_r": r.cos2_r,
            "f": r.f,
            "F": r.fidelity,
            "z1": r.z1,
            "delta_alpha": r.delta_alpha,
            "method": r.method,
        }
        for r in rows
    ]
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


_PALETTE = ("#2ca02c", "#1f77b4", "#d62728", "#9467bd", "#ff7f0e", "#17becf",
            "#8c564b", "#e377c2")
_FIELD_LABELS = {"p": "p", "q_r": "qR", "ft": "ft"}

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 70, 24, 24, 52


def _group_key(row: ResultRow, fields) -> tuple:
    return tuple(getattr(row, f) for f in fields)


def _group_label(key: tuple, fields) -> str:
    parts = []
    for f, v in zip(fields, key):
        name = _FIELD_LABELS.get(f, f)
        parts.append(f"{name}=none" if v is None else f"{name}={v:g}")
    return " ".join(parts)


def emit_plot(
    rows: Sequence[ResultRow],
    group_by: Sequence[str] = ("p", "q_r", "ft"),
    y: str = "f",
) -> bytes:
    """Render rows as a standalone SVG: one polyline per group vs alpha.

    Unfiltered groups render dashed when any group is filtered (otherwise
    the groups with the smaller mode weight do), a labeled reference line
    marks the classical bound at 0.5, and the y-range always contains
    [0.4, 1.0] so that line stays visible.  Output bytes are a pure
    function of the rows.
    """
    if not rows:
        raise EmptyInputError("no rows to plot")
    fields = tuple(group_by)
    groups: dict[tuple, list[tuple[float, float]]] = {}
    for r in rows:
        val = getattr(r, y)
        if val is None:
            continue
        groups.setdefault(_group_key(r, fields), []).append((r.alpha, val))
    if not groups:
        raise EmptyInputError("no numeric data to plot")

    def sort_key(key: tuple) -> tuple:
        return tuple(-math.inf if v is None else v for v in key)

    keys = sorted(groups, key=sort_key)
    any_filtered = "ft" in fields and any(
        key[fields.index("ft")] is not None for key in keys
    )
    max_qr = max((r.q_r for r in rows), default=1.0)

    xs = [a for pts in groups.values() for a, _ in pts]
    ys = [v for pts in groups.values() for _, v in pts]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    y0 = min(0.4, min(ys) - 0.02)
    y1 = max(1.0, max(ys) + 0.02)

    def px(x: float) -> float:
        return _ML + (x - x0) / (x1 - x0) * (_W - _ML - _MR)

    def py(v: float) -> float:
        return _H - _MB - (v - y0) / (y1 - y0) * (_H - _MT - _MB)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="#ffffff"/>',
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
        f'height="{_H - _MT - _MB}" fill="none" stroke="#000000"/>',
    ]
    for i in range(5):
        x = x0 + i * (x1 - x0) / 4
        out.append(
            f'<line x1="{px(x):.2f}" y1="{_H - _MB}" x2="{px(x):.2f}" '
            f'y2="{_H - _MB + 5}" stroke="#000000"/>'
        )
        out.append(
            f'<text x="{px(x):.2f}" y="{_H - _MB + 18}" font-size="11" '
            f'text-anchor="middle" font-family="sans-serif">{x:.2f}</text>'
        )
    for i in range(7):
        v = y0 + i * (y1 - y0) / 6
        out.append(
            f'<line x1="{_ML - 5}" y1="{py(v):.2f}" x2="{_ML}" '
            f'y2="{py(v):.2f}" stroke="#000000"/>'
        )
        out.append(
            f'<text x="{_ML - 8}" y="{py(v):.2f}" font-size="11" '
            f'text-anchor="end" dominant-baseline="middle" '
            f'font-family="sans-serif">{v:.2f}</text>'
        )
    out.append(
        f'<text x="{(_ML + _W - _MR) / 2:.2f}" y="{_H - 12}" font-size="13" '
        f'text-anchor="middle" font-family="sans-serif">dilaton parameter alpha</text>'
    )
    ylabel = "teleportation fidelity F" if y == "fidelity" else "fully entangled fraction f"
    out.append(
        f'<text x="16" y="{(_MT + _H - _MB) / 2:.2f}" font-size="13" '
        f'text-anchor="middle" font-family="sans-serif" '
        f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2:.2f})">{ylabel}</text>'
    )
    out.append(
        f'<line x1="{_ML}" y1="{py(0.5):.2f}" x2="{_W - _MR}" y2="{py(0.5):.2f}" '
        f'stroke="#888888" stroke-dasharray="2,3"/>'
    )
    out.append(
        f'<text x="{_ML + 6}" y="{py(0.5) - 4:.2f}" font-size="11" '
        f'fill="#888888" font-family="sans-serif">classical bound</text>'
    )

    for i, key in enumerate(keys):
        pts = sorted(groups[key])
        color = _PALETTE[i % len(_PALETTE)]
        if any_filtered:
            secondary = key[fields.index("ft")] is None
        elif "q_r" in fields:
            secondary = key[fields.index("q_r")] < max_qr
        else:
            secondary = False
        dash = ' stroke-dasharray="6,4"' if secondary else ""
        if len(pts) == 1:
            a, v = pts[0]
            out.append(
                f'<circle cx="{px(a):.2f}" cy="{py(v):.2f}" r="3" fill="{color}"/>'
            )
        else:
            coords = " ".join(f"{px(a):.2f},{py(v):.2f}" for a, v in pts)
            out.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"{dash}/>'
            )
        ly = _MT + 16 + 16 * i
        out.append(
            f'<line x1="{_W - _MR - 150}" y1="{ly}" x2="{_W - _MR - 126}" '
            f'y2="{ly}" stroke="{color}" stroke-width="1.5"{dash}/>'
        )
        out.append(
            f'<text x="{_W - _MR - 120}" y="{ly + 4}" font-size="11" '
            f'font-family="sans-serif">{_group_label(key, fields)}</text>'
        )
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
