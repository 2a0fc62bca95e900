"""Error accumulators against an exact solution, and convergence tables.

Errors are measured against the nodal interpolant of the exact solution,
``E^n = I^h x(t_n) - X^n`` and ``Z^n = I^h w(t_n) - W^n``:

* Er1 = max_n |E^n|_1^2
* Er2 = sum_n dt |D_t E^n|_0^2
* Er3 = max_n |Z^n|_0^2
* Er4 = sum_n dt |Z^n|_1^2

with the exact piecewise-linear norms from :mod:`curveflow.mesh`.
"""
import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .evolve import time_steps
from .mesh import h1_seminorm_sq_values, l2_norm_sq_values, make_uniform_mesh
from .scenarios import Scenario, get_scenario

ERROR_NAMES = ("Er1", "Er2", "Er3", "Er4")


@dataclass
class ErrorAccumulators:
    er1: float = 0.0
    er2: float = 0.0
    er3: float = 0.0
    er4: float = 0.0

    def as_tuple(self):
        return (self.er1, self.er2, self.er3, self.er4)


@dataclass(frozen=True)
class LadderPreset:
    """A convergence ladder together with its time-stepping protocol.

    ``dt = T / N`` for every level. With ``skip_final`` set, the run stops
    at time level N-1, so errors are monitored on t_0, ..., t_{N-1}.
    """

    alpha: float
    levels: tuple
    T: float = 0.8
    skip_final: bool = True
    caption: str = ""
    scenario: str = "example1"


# ladders for the manufactured semicircle; dt = h^2 or dt = 0.4 h at T = 0.8
_H2 = ((10, 80), (20, 320), (40, 1280), (80, 5120), (160, 20480))
_H1 = ((40, 80), (80, 160), (160, 320), (320, 640), (640, 1280))
LADDER_PRESETS = {
    "h2-alpha1": LadderPreset(1.0, _H2, caption="alpha = 1, dt = h^2"),
    "h2-alpha0.1": LadderPreset(0.1, _H2, caption="alpha = 0.1, dt = h^2"),
    "0.4h-alpha1": LadderPreset(1.0, _H1, caption="alpha = 1, dt = 0.4 h"),
    "0.4h-alpha0.1": LadderPreset(0.1, _H1, caption="alpha = 0.1, dt = 0.4 h"),
}


def run_with_errors(scenario, J, N, T, alpha, skip_final=False, **step_kwargs):
    """Run ``scenario`` with J elements and step ``T/N``; accumulate Er1..Er4.

    ``skip_final`` stops one step short of T (levels 0..N-1).
    """
    if not scenario.has_exact:
        raise InvalidArgumentError(f"scenario {scenario.name!r} has no exact solution")
    acc = ErrorAccumulators()
    if N == 0:
        return acc
    mesh = make_uniform_mesh(J)
    h = mesh.h
    dt = T / N
    n_steps = N - 1 if skip_final else N
    E_prev = None
    for n, t, X, W in time_steps(scenario, mesh, dt, n_steps, alpha, **step_kwargs):
        E = scenario.exact_x(mesh.nodes, t) - X.values
        Z = scenario.exact_w(mesh.nodes, t) - W.values
        acc.er1 = max(acc.er1, h1_seminorm_sq_values(h, E))
        acc.er3 = max(acc.er3, l2_norm_sq_values(h, Z))
        if n > 0:
            acc.er2 += dt * l2_norm_sq_values(h, (E - E_prev) / dt)
            acc.er4 += dt * h1_seminorm_sq_values(h, Z)
        E_prev = E
    return acc


def eoc(errors, hs):
    """Orders between consecutive levels: ln(e_{j+1}/e_j) / ln(h_{j+1}/h_j)."""
    return [(math.log(errors[j + 1]) - math.log(errors[j])) / (math.log(hs[j + 1]) - math.log(hs[j]))
            for j in range(len(errors) - 1)]


@dataclass
class EocRow:
    J: int
    N: int
    errors: tuple
    orders: tuple = None  # None on the first row


@dataclass
class EocTable:
    rows: list
    alpha: float
    T: float
    caption: str = ""
    skip_final: bool = False
    scenario: str = ""
    meta: dict = field(default_factory=dict)

    def column(self, i):
        """Error column i (0-based: Er1 -> 0)."""
        return [r.errors[i] for r in self.rows]

    def eoc_column(self, i):
        return [r.orders[i] for r in self.rows[1:]]


def _level(args):
    name, J, N, T, alpha, skip_final, kwargs = args
    return run_with_errors(get_scenario(name), J, N, T, alpha, skip_final, **kwargs).as_tuple()


def eoc_study(scenario, levels, T, alpha, skip_final=False, jobs=1, caption="", **step_kwargs):
    """Run every (J, N) level and tabulate errors and orders.

    ``scenario`` may be a :class:`Scenario` or a registered name; running
    levels in parallel (``jobs > 1``) needs a name.
    """
    levels = [(int(J), int(N)) for J, N in levels]
    if len(levels) < 2:
        raise InvalidArgumentError("an eoc study needs at least two levels")
    hs = [1.0 / J for J, _ in levels]
    if any(b >= a for a, b in zip(hs, hs[1:])):
        raise InvalidArgumentError("mesh sizes must strictly decrease along the ladder")
    if isinstance(scenario, Scenario):
        name = scenario.name
        if jobs > 1:
            raise InvalidArgumentError("parallel studies need a registered scenario name")
        results = [run_with_errors(scenario, J, N, T, alpha, skip_final, **step_kwargs).as_tuple()
                   for J, N in levels]
    else:
        name = scenario
        tasks = [(name, J, N, T, alpha, skip_final, step_kwargs) for J, N in levels]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_level, tasks))
        else:
            results = [_level(t) for t in tasks]
    orders = [eoc([r[i] for r in results], hs) for i in range(4)]
    rows = []
    for j, ((J, N), errs) in enumerate(zip(levels, results)):
        rows.append(EocRow(J, N, errs, None if j == 0 else tuple(o[j - 1] for o in orders)))
    return EocTable(rows, alpha, T, caption=caption, skip_final=skip_final, scenario=name)


def run_preset(name, jobs=1, **step_kwargs):
    """Run the built-in ladder ``name`` (a key of :data:`LADDER_PRESETS`)."""
    p = LADDER_PRESETS[name]
    return eoc_study(p.scenario, p.levels, p.T, p.alpha, skip_final=p.skip_final, jobs=jobs,
                     caption=p.caption, **step_kwargs)


def _header(table):
    lines = [f"# scenario = {table.scenario}, alpha = {table.alpha:g}, T = {table.T:g}"
             + (", levels 0..N-1" if table.skip_final else "")]
    if table.caption:
        lines.append(f"# {table.caption}")
    return lines


def format_table(table):
    """Aligned plain-text rendering."""
    cols = ["J", "N"]
    for i in range(4):
        cols += [ERROR_NAMES[i], f"eoc{i + 1}"]
    body = []
    for r in table.rows:
        cells = [str(r.J), str(r.N)]
        for i in range(4):
            cells.append(f"{r.errors[i]:.4e}")
            cells.append("-" if r.orders is None else f"{r.orders[i]:.2f}")
        body.append(cells)
    widths = [max(len(c), *(len(b[k]) for b in body)) for k, c in enumerate(cols)]
    fmt = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths))  # noqa: E731
    return "\n".join(_header(table) + [fmt(cols)] + [fmt(b) for b in body]) + "\n"


def write_csv(table, path):
    with open(path, "w", newline="") as fh:
        for line in _header(table):
            fh.write(line + "\n")
        w = csv.writer(fh)
        w.writerow(["J", "N", "Er1", "eoc1", "Er2", "eoc2", "Er3", "eoc3", "Er4", "eoc4"])
        for r in table.rows:
            row = [r.J, r.N]
            for i in range(4):
                row += [repr(r.errors[i]), "" if r.orders is None else repr(r.orders[i])]
            w.writerow(row)
