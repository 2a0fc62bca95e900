"""Level-set descriptions of the domain walls.

Each curve endpoint carries its own :class:`BoundaryMap` F with the wall
given by ``F(p) = 0``. The time step only ever evaluates F and its gradient
near the endpoint it belongs to, so a map need not describe the whole of
the domain boundary.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ProjectionFailedError, SingularBoundaryError

_GRAD_TOL = 1e-12


@dataclass(frozen=True)
class BoundaryMap:
    value: Callable
    gradient: Callable
    label: str = "boundary"
    # trace(p, box) -> (n, 2) points of the wall near p inside box=(xmin, xmax, ymin, ymax);
    # used only for plotting
    trace: Callable = None

    def __call__(self, p):
        return self.value(np.asarray(p, dtype=float))

    def grad(self, p):
        return np.asarray(self.gradient(np.asarray(p, dtype=float)), dtype=float)


@dataclass(frozen=True)
class EndpointBoundaries:
    left: BoundaryMap
    right: BoundaryMap


def tangent_direction(bmap, p, normalize=True):
    """Wall tangent grad(F)^perp at ``p``, unit length unless ``normalize`` is off."""
    g = bmap.grad(p)
    norm = float(np.hypot(g[0], g[1]))
    if norm <= _GRAD_TOL:
        raise SingularBoundaryError(f"{bmap.label}: vanishing gradient at {tuple(p)}")
    d = np.array([-g[1], g[0]])
    return d / norm if normalize else d


def project_to_boundary(bmap, p, tol=1e-12, maxiter=50):
    """Newton projection of ``p`` onto ``F = 0`` along the gradient."""
    q = np.array(p, dtype=float)
    for _ in range(maxiter):
        val = float(bmap(q))
        if abs(val) <= tol:
            return q
        g = bmap.grad(q)
        gg = float(g @ g)
        if gg <= _GRAD_TOL**2:
            raise SingularBoundaryError(f"{bmap.label}: vanishing gradient at {tuple(q)}")
        q = q - val * g / gg
    if abs(float(bmap(q))) <= tol:
        return q
    raise ProjectionFailedError(
        f"{bmap.label}: no convergence after {maxiter} Newton steps from {tuple(p)}")


def _graph_x(x_of_y, box, n=400):
    y = np.linspace(box[2], box[3], n)
    return np.column_stack([x_of_y(y), y])


def half_plane():
    """Wall p1 = 0 of the upper half-plane."""
    return BoundaryMap(
        value=lambda p: p[..., 1],
        gradient=lambda p: np.array([0.0, 1.0]),
        label="half_plane",
        trace=lambda p, box: np.array([[box[0], 0.0], [box[1], 0.0]]),
    )


def _vertical_lines_gradient(p):
    if p[0] == 0.0:
        raise SingularBoundaryError("vertical_lines: gradient undefined at p0 = 0")
    return np.array([np.sign(p[0]), 0.0])


def vertical_lines():
    """Walls |p0| = 1 of the strip -1 < p0 < 1."""
    return BoundaryMap(
        value=lambda p: np.abs(p[..., 0]) - 1.0,
        gradient=_vertical_lines_gradient,
        label="vertical_lines",
        trace=lambda p, box: np.array([[np.sign(p[0]), box[2]], [np.sign(p[0]), box[3]]]),
    )


def cosine_channel_right():
    """Right wall p0 = 0.05 cos(20 p1) + 0.95, with F > 0 inside."""
    return BoundaryMap(
        value=lambda p: 0.05 * np.cos(20.0 * p[..., 1]) + 0.95 - p[..., 0],
        gradient=lambda p: np.array([-1.0, -np.sin(20.0 * p[1])]),
        label="cosine_channel_right",
        trace=lambda p, box: _graph_x(lambda y: 0.05 * np.cos(20.0 * y) + 0.95, box),
    )


def cosine_channel_left():
    """Left wall p0 = -0.05 cos(12 p1) - 0.5, with F > 0 inside."""
    return BoundaryMap(
        value=lambda p: p[..., 0] + 0.05 * np.cos(12.0 * p[..., 1]) + 0.5,
        gradient=lambda p: np.array([1.0, -0.6 * np.sin(12.0 * p[1])]),
        label="cosine_channel_left",
        trace=lambda p, box: _graph_x(lambda y: -0.05 * np.cos(12.0 * y) - 0.5, box),
    )
