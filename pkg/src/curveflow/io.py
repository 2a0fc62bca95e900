"""Run configuration, snapshot CSV files and SVG plots.

Config files are flat ``key = value`` lines; ``#`` starts a comment. Lists
(snapshot times, ladders) are comma separated, a ladder level is ``J:N``.
"""
import csv
import math
import os
from dataclasses import dataclass
from xml.sax.saxutils import quoteattr

import numpy as np

from .eoc import LADDER_PRESETS
from .errors import ConfigError
from .scenarios import SCENARIOS, get_scenario

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def parse_config_text(text):
    """Parse ``key = value`` lines into a dict of strings."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def read_config(path):
    try:
        with open(path) as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None


def _bool(key, s):
    v = str(s).strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ConfigError(f"{key}: expected a boolean, got {s!r}")


def _int(key, s):
    try:
        v = float(s)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected an integer, got {s!r}") from None
    if not v.is_integer():
        raise ConfigError(f"{key}: expected an integer, got {s!r}")
    return int(v)


def _float(key, s):
    try:
        v = float(s)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {s!r}") from None
    if not math.isfinite(v):
        raise ConfigError(f"{key}: expected a finite number, got {s!r}")
    return v


def _floats(key, s):
    return tuple(_float(key, p) for p in str(s).split(",") if p.strip())


def _ladder(key, s):
    levels = []
    for part in str(s).split(","):
        if not part.strip():
            continue
        if ":" not in part:
            raise ConfigError(f"{key}: level {part.strip()!r} is not of the form J:N")
        J, N = part.split(":", 1)
        levels.append((_int(key, J), _int(key, N)))
    return tuple(levels)


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    J: int
    N: int
    T: float
    alpha: float
    out: str = "out"
    snapshots: tuple = ()
    project_endpoints: bool = False
    normalize_tangent: bool = True

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"unknown scenario {self.scenario!r}; choose from {', '.join(sorted(SCENARIOS))}")
        if self.J < 2:
            raise ConfigError(f"J must be at least 2, got {self.J}")
        if self.N < 1:
            raise ConfigError(f"N must be at least 1, got {self.N}")
        if not self.T > 0:
            raise ConfigError(f"T must be positive, got {self.T}")
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in (0, 1], got {self.alpha}")
        for t in self.snapshots:
            if not 0.0 <= t <= self.T:
                raise ConfigError(f"snapshot time {t} outside [0, {self.T}]")
        return self


_RUN_PARSERS = {
    "scenario": lambda k, s: str(s).strip(),
    "J": _int,
    "N": _int,
    "T": _float,
    "alpha": _float,
    "out": lambda k, s: str(s).strip(),
    "snapshots": _floats,
    "project_endpoints": _bool,
    "normalize_tangent": _bool,
}


def run_config(values, overrides=None):
    """Build a validated :class:`RunConfig` from config values and overrides.

    ``overrides`` entries that are ``None`` are ignored. ``T`` and ``alpha``
    default to the scenario's own values; snapshots default to t = 0 and T.
    """
    merged = dict(values)
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    unknown = set(merged) - set(_RUN_PARSERS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in ("scenario", "J", "N"):
        if key not in merged:
            raise ConfigError(f"missing required key {key!r}")
    parsed = {k: _RUN_PARSERS[k](k, v) for k, v in merged.items()}
    scen = get_scenario(parsed["scenario"])
    parsed.setdefault("T", scen.T_default)
    parsed.setdefault("alpha", scen.alpha_default)
    if "snapshots" not in parsed:
        parsed["snapshots"] = (0.0, parsed["T"])
    return RunConfig(**parsed).validate()


@dataclass(frozen=True)
class EocConfig:
    scenario: str
    levels: tuple
    T: float
    alpha: float
    skip_final: bool = False
    caption: str = ""
    out: str = "out"
    jobs: int = 1
    normalize_tangent: bool = True

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if len(self.levels) < 2:
            raise ConfigError("an eoc ladder needs at least two levels")
        for J, N in self.levels:
            if J < 2 or N < 1:
                raise ConfigError(f"invalid level {J}:{N}; need J >= 2 and N >= 1")
        hs = [1.0 / J for J, _ in self.levels]
        if any(b >= a for a, b in zip(hs, hs[1:])):
            raise ConfigError("J must strictly increase along the ladder")
        if not self.T > 0:
            raise ConfigError(f"T must be positive, got {self.T}")
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        return self


_EOC_PARSERS = {
    "scenario": lambda k, s: str(s).strip(),
    "preset": lambda k, s: str(s).strip(),
    "ladder": _ladder,
    "T": _float,
    "alpha": _float,
    "skip_final": _bool,
    "caption": lambda k, s: str(s).strip(),
    "out": lambda k, s: str(s).strip(),
    "jobs": _int,
    "normalize_tangent": _bool,
}


def eoc_config(values, overrides=None):
    """Build a validated :class:`EocConfig`.

    ``preset = name`` starts from a built-in ladder of
    :data:`~curveflow.eoc.LADDER_PRESETS`; any other key overrides it.
    Without a preset, ``ladder`` is required.
    """
    merged = dict(values)
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    unknown = set(merged) - set(_EOC_PARSERS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    parsed = {k: _EOC_PARSERS[k](k, v) for k, v in merged.items()}
    base = {}
    if "preset" in parsed:
        name = parsed.pop("preset")
        if name not in LADDER_PRESETS:
            raise ConfigError(f"preset must be one of {', '.join(LADDER_PRESETS)}, got {name!r}")
        p = LADDER_PRESETS[name]
        base = dict(scenario=p.scenario, levels=p.levels, T=p.T, alpha=p.alpha,
                    skip_final=p.skip_final, caption=p.caption)
    if "ladder" in parsed:
        base["levels"] = parsed.pop("ladder")
    base.update(parsed)
    if "levels" not in base:
        raise ConfigError("give either 'preset' or 'ladder'")
    base.setdefault("scenario", "example1")
    scen = get_scenario(base["scenario"])
    base.setdefault("T", scen.T_default)
    base.setdefault("alpha", scen.alpha_default)
    return EocConfig(**base).validate()


def snapshot_name(t):
    return f"snapshot_{t:g}.csv"


def write_snapshot(path, rho, X, W):
    """Write one row per node with columns ``rho,x0,x1,w`` at 17 significant digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["rho", "x0", "x1", "w"])
        for r, (a, b), c in zip(rho, X, W):
            w.writerow([f"{r:.17g}", f"{a:.17g}", f"{b:.17g}", f"{c:.17g}"])


def read_snapshot(path):
    """Inverse of :func:`write_snapshot`: returns ``(rho, X, W)`` arrays."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["rho", "x0", "x1", "w"]:
        raise ValueError(f"{path}: not a snapshot file")
    data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float).reshape(-1, 4)
    return data[:, 0], data[:, 1:3], data[:, 3]


class _Canvas:
    """Affine map from data coordinates to an SVG viewport (y up)."""

    def __init__(self, box, width=640, margin=40, aspect=None):
        xmin, xmax, ymin, ymax = box
        self.box = box
        sx = xmax - xmin or 1.0
        sy = ymax - ymin or 1.0
        self.width = width
        inner = width - 2 * margin
        self.kx = inner / sx
        # equal axis scaling unless a fixed aspect ratio is requested
        self.ky = self.kx if aspect is None else inner * aspect / sy
        self.height = int(round(sy * self.ky + 2 * margin))
        self.margin = margin

    def points(self, P):
        xmin, _, _, ymax = self.box
        px = self.margin + (P[:, 0] - xmin) * self.kx
        py = self.margin + (ymax - P[:, 1]) * self.ky
        return " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(px, py))


_COLOURS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _svg(canvas, body, title):
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{canvas.width}" height="{canvas.height}" '
            f'viewBox="0 0 {canvas.width} {canvas.height}">\n'
            f'<title>{title}</title>\n'
            f'<rect x="0" y="0" width="{canvas.width}" height="{canvas.height}" fill="white"/>\n')
    return head + "".join(body) + "</svg>\n"


def _polyline(canvas, P, colour, label):
    return (f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" '
            f'data-label={quoteattr(label)} points="{canvas.points(P)}"/>\n')


def _path(canvas, P, colour):
    # walls are paths so that polylines stay one-per-snapshot
    pts = canvas.points(P).split(" ")
    d = "M " + " L ".join(pts)
    return f'<path fill="none" stroke="{colour}" stroke-width="2" d="{d}"/>\n'


def interface_svg(path, snapshots, boundaries):
    """Overlay the curve at every snapshot together with the walls."""
    pts = np.concatenate([X for _, X, _ in snapshots])
    xmin, ymin = pts.min(axis=0)
    xmax, ymax = pts.max(axis=0)
    pad = 0.1 * max(xmax - xmin, ymax - ymin, 1e-3)
    box = (xmin - pad, xmax + pad, ymin - pad, ymax + pad)
    canvas = _Canvas(box)
    body = []
    X0 = snapshots[0][1]
    for bmap, p in ((boundaries.left, X0[0]), (boundaries.right, X0[-1])):
        if bmap.trace is not None:
            body.append(_path(canvas, np.asarray(bmap.trace(p, box), dtype=float), "#000000"))
    for k, (t, X, _) in enumerate(snapshots):
        body.append(_polyline(canvas, X, _COLOURS[k % len(_COLOURS)], f"t={t:g}"))
    with open(path, "w") as fh:
        fh.write(_svg(canvas, body, "interface"))


def solute_svg(path, snapshots, rho):
    """Plot W against rho for every snapshot."""
    ws = np.concatenate([W for _, _, W in snapshots])
    lo, hi = float(ws.min()), float(ws.max())
    pad = 0.05 * max(hi - lo, 1e-3)
    box = (0.0, 1.0, lo - pad, hi + pad)
    canvas = _Canvas(box, aspect=0.6)
    axes = np.array([[0.0, box[2]], [1.0, box[2]]]), np.array([[0.0, box[2]], [0.0, box[3]]])
    body = [_path(canvas, a, "#888888") for a in axes]
    for k, (t, _, W) in enumerate(snapshots):
        body.append(_polyline(canvas, np.column_stack([rho, W]),
                              _COLOURS[k % len(_COLOURS)], f"t={t:g}"))
    with open(path, "w") as fh:
        fh.write(_svg(canvas, body, "solute"))


def prepare_out_dir(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {path}: {exc.strerror}") from None
    if not os.access(path, os.W_OK):
        raise ConfigError(f"output directory {path} is not writable")
    return path
