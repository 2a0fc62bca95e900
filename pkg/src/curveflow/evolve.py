"""Time loop shared by the simulation command and the convergence harness."""
import logging

import numpy as np

from .curve import curve_step
from .errors import CurveFlowError, InvalidArgumentError
from .mesh import ScalarField, VectorField, make_uniform_mesh
from .solute import solute_step

log = logging.getLogger(__name__)


class StepFailure(CurveFlowError):
    """A solver error, tagged with the step and time level where it happened."""

    def __init__(self, part, n, t, cause):
        self.part = part
        self.n = n
        self.t = t
        self.cause = cause
        super().__init__(f"{part} failed at time level n={n} (t={t:.6g}): {cause}")


def initial_state(scenario, mesh):
    X = VectorField(mesh, scenario.x0(mesh.nodes))
    W = ScalarField(mesh, scenario.w0(mesh.nodes))
    return X, W


def time_steps(scenario, mesh, dt, n_steps, alpha, normalize_tangent=True,
               project_endpoints=False, backend=None):
    """Yield ``(n, t_n, X^n, W^n)`` for n = 0, ..., n_steps."""
    if dt <= 0:
        raise InvalidArgumentError("dt must be positive")
    X, W = initial_state(scenario, mesh)
    yield 0, 0.0, X, W
    for n in range(1, n_steps + 1):
        t_prev = (n - 1) * dt
        try:
            X_new = curve_step(X, W, dt, alpha, t_prev, scenario.boundaries, scenario.f,
                               normalize_tangent=normalize_tangent,
                               project_endpoints=project_endpoints, backend=backend)
        except CurveFlowError as exc:
            raise StepFailure("curve step", n, n * dt, exc) from exc
        if not np.all(np.isfinite(X_new.values)):
            raise StepFailure("curve step", n, n * dt, "positions are no longer finite")
        try:
            W = solute_step(X_new, X, W, dt, t_prev, scenario.w_b, scenario.g, backend=backend)
        except CurveFlowError as exc:
            raise StepFailure("solute step", n, n * dt, exc) from exc
        if not np.all(np.isfinite(W.values)):
            raise StepFailure("solute step", n, n * dt, "concentration is no longer finite")
        X = X_new
        yield n, n * dt, X, W


def snapshot_levels(times, dt, n_steps):
    """Map requested times to the nearest time levels."""
    levels = {}
    for t in times:
        n = int(round(t / dt))
        if n < 0 or n > n_steps:
            raise InvalidArgumentError(f"snapshot time {t} outside [0, {n_steps * dt}]")
        levels.setdefault(n, t)
    return levels


def simulate(scenario, J, N, T, alpha, snapshot_times=(), **kwargs):
    """Run to time ``T`` with ``N`` steps; return the final state and snapshots.

    Snapshots are ``(t, X, W)`` tuples at the time levels nearest to the
    requested times, in time order.
    """
    mesh = make_uniform_mesh(J)
    dt = T / N
    wanted = snapshot_levels(snapshot_times, dt, N)
    snaps = []
    for n, t, X, W in time_steps(scenario, mesh, dt, N, alpha, **kwargs):
        if n in wanted:
            snaps.append((t, X, W))
    log.debug("finished %s: J=%d N=%d T=%g", scenario.name, J, N, T)
    return X, W, snaps
