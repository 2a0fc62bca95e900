"""Implicit time step for the reaction-diffusion equation on the moving curve."""
import numpy as np

from . import kernels
from .errors import InvalidArgumentError
from .linalg import Tridiag, solve_tridiag
from .mesh import ScalarField, _velocities, chords, perp


def solute_forcing(g, v, W_prev, nodes, t_prev):
    """Element-local reaction values, shape (J, 2): (left node, right node)."""
    J = nodes.size - 1
    left = np.broadcast_to(np.asarray(g(v[:, 0], W_prev[:-1], nodes[:-1], t_prev), dtype=float), (J,))
    right = np.broadcast_to(np.asarray(g(v[:, 1], W_prev[1:], nodes[1:], t_prev), dtype=float), (J,))
    return np.ascontiguousarray(np.stack([left, right], axis=1))


def assemble_solute_system(X_new, X_prev, W_prev, dt, t_prev, w_b, g, backend=None):
    if dt <= 0:
        raise InvalidArgumentError("dt must be positive")
    mesh = W_prev.mesh
    e_new, l_new = chords(X_new.values)
    _, l_old = chords(X_prev.values)
    tangent = e_new / l_new[:, None]
    psi, v = _velocities(X_new.values, X_prev.values, dt, tangent, perp(tangent))
    gvals = solute_forcing(g, v, W_prev.values, mesh.nodes, t_prev)
    sub, diag, sup, rhs = kernels.get(backend).solute_system(
        l_new, l_old, np.ascontiguousarray(psi), np.ascontiguousarray(W_prev.values),
        gvals, float(dt), float(w_b))
    return Tridiag(sub, diag, sup), rhs


def solute_step(X_new, X_prev, W_prev, dt, t_prev, w_b, g, backend=None):
    """Advance the solute by one step, given the curve at both time levels.

    Diffusion and tangential advection are implicit in the new solute;
    the reaction ``g(v, w, rho, t)`` takes the new normal velocity and the
    old solute. Returns the new :class:`ScalarField` with ``W = w_b`` at both
    ends.
    """
    system, rhs = assemble_solute_system(X_new, X_prev, W_prev, dt, t_prev, w_b, g, backend)
    return ScalarField(W_prev.mesh, solve_tridiag(system, rhs, backend=backend))
