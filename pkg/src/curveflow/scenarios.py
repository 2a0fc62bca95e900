"""Problem data for the built-in runs.

All callables are vectorised: ``x0(rho)`` returns points of shape
``rho.shape + (2,)``, forcings take arrays and return arrays or scalars.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .boundary import (EndpointBoundaries, cosine_channel_left, cosine_channel_right,
                       half_plane, vertical_lines)
from .errors import ConfigError


@dataclass(frozen=True)
class Scenario:
    name: str
    x0: Callable
    w0: Callable
    w_b: float
    f: Callable
    g: Callable
    boundaries: EndpointBoundaries
    T_default: float
    alpha_default: float = 1.0
    exact_x: Optional[Callable] = None
    exact_w: Optional[Callable] = None

    @property
    def has_exact(self):
        return self.exact_x is not None and self.exact_w is not None


def _points(a, b):
    return np.stack(np.broadcast_arrays(a, b), axis=-1)


def example1():
    """Shrinking semicircle in the upper half-plane with a manufactured solute."""

    def exact_x(rho, t):
        rho = np.asarray(rho, dtype=float)
        return np.sqrt(1.0 - t) * _points(np.cos(np.pi * rho), np.sin(np.pi * rho))

    def exact_w(rho, t):
        return (1.0 - t) * np.sin(np.pi * np.asarray(rho, dtype=float))

    def f(w, rho, t):
        return -w**2 / (2.0 * (1.0 - t) ** 2.5) - np.cos(np.pi * rho) ** 2 / (2.0 * np.sqrt(1.0 - t))

    def g(v, w, rho, t):
        return -w / (2.0 * (1.0 - t))

    wall = half_plane()
    return Scenario(
        name="example1",
        x0=lambda rho: exact_x(rho, 0.0),
        w0=lambda rho: exact_w(rho, 0.0),
        w_b=0.0,
        f=f,
        g=g,
        boundaries=EndpointBoundaries(wall, wall),
        T_default=0.4,
        alpha_default=1.0,
        exact_x=exact_x,
        exact_w=exact_w,
    )


def _digm(name, x0, boundaries, T):
    # the interface is pushed along +normal at speed w^2 and sheds solute at
    # rate v*w, so the swept region keeps what the boundary leaves behind
    return Scenario(
        name=name,
        x0=x0,
        w0=lambda rho: np.zeros_like(np.asarray(rho, dtype=float)),
        w_b=1.0,
        f=lambda w, rho, t: w**2,
        g=lambda v, w, rho, t: -v * w,
        boundaries=boundaries,
        T_default=T,
        alpha_default=1.0,
    )


def example2():
    """Grain boundary between the straight walls |p0| = 1."""
    walls = vertical_lines()
    x0 = lambda rho: _points(2.0 * np.asarray(rho, dtype=float) - 1.0, 0.0)  # noqa: E731
    return _digm("example2", x0, EndpointBoundaries(walls, walls), 2.5)


def example3():
    """Grain boundary in the channel with cosine-modulated walls.

    The initial segment spans the channel at height 0, from (-0.55, 0) on
    the left wall to (1, 0) on the right wall.
    """
    x0 = lambda rho: _points(-0.55 + 1.55 * np.asarray(rho, dtype=float), 0.0)  # noqa: E731
    bounds = EndpointBoundaries(cosine_channel_left(), cosine_channel_right())
    return _digm("example3", x0, bounds, 7.5)


SCENARIOS = {"example1": example1, "example2": example2, "example3": example3}


def get_scenario(name):
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise ConfigError(
            f"unknown scenario {name!r}; choose from {', '.join(sorted(SCENARIOS))}") from None
