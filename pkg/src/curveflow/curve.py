"""Linearly implicit time step for the curve position.

Geometric coefficients (element speeds and normals) are frozen at the old
time level, the stiffness term is implicit, and the forcing is lagged.
Each endpoint is restricted to move along the wall tangent evaluated at its
old position, so the discrete contact condition
``<X^n - X^{n-1}, grad F(X^{n-1})> = 0`` holds by construction. The
endpoint equation is the Galerkin equation tested with that same tangent,
for which the boundary bracket of the weak form vanishes.
"""
import numpy as np

from . import kernels
from .boundary import project_to_boundary, tangent_direction
from .linalg import BlockTridiag, solve_block_tridiag
from .mesh import VectorField, chords, perp
from .errors import InvalidArgumentError


def nodal(fn_values, n):
    """Broadcast a forcing evaluation to one value per node (constants allowed)."""
    return np.ascontiguousarray(np.broadcast_to(np.asarray(fn_values, dtype=float), (n,)))


def assemble_curve_system(X_prev, W_prev, dt, alpha, t_prev, boundaries, f,
                          normalize_tangent=True, backend=None):
    """Return ``(system, rhs, d0, dJ)`` for one step; see :func:`curve_step`."""
    if dt <= 0:
        raise InvalidArgumentError("dt must be positive")
    if not 0.0 < alpha <= 1.0:
        raise InvalidArgumentError(f"alpha must lie in (0, 1], got {alpha}")
    mesh = X_prev.mesh
    X = X_prev.values
    e, length = chords(X)
    normal = perp(e / length[:, None])
    fvals = nodal(f(W_prev.values, mesh.nodes, t_prev), mesh.num_nodes)
    d0 = tangent_direction(boundaries.left, X[0], normalize_tangent)
    dJ = tangent_direction(boundaries.right, X[-1], normalize_tangent)
    sub, diag, sup, rhs = kernels.get(backend).curve_system(
        np.ascontiguousarray(X), mesh.h, length, np.ascontiguousarray(normal), fvals,
        float(alpha), float(dt), d0, dJ)
    system = BlockTridiag(sub, diag, sup, scalar_rows=(0, mesh.J))
    return system, rhs, d0, dJ


def curve_step(X_prev, W_prev, dt, alpha, t_prev, boundaries, f,
               normalize_tangent=True, project_endpoints=False, backend=None):
    """Advance the curve by one step of size ``dt``.

    Parameters
    ----------
    X_prev : VectorField
        Curve at the old time level.
    W_prev : ScalarField
        Solute at the old time level, fed to the forcing.
    alpha : float
        Weight in (0, 1] of the full velocity against its normal part.
    t_prev : float
        Old time level, passed to ``f(w, rho, t)``.
    boundaries : EndpointBoundaries
        Wall maps for rho = 0 and rho = 1.
    project_endpoints : bool
        Newton-project the new endpoints back onto their walls. Off by
        default: the scheme itself only enforces the linearised contact
        condition.

    Returns
    -------
    VectorField
    """
    system, rhs, d0, dJ = assemble_curve_system(
        X_prev, W_prev, dt, alpha, t_prev, boundaries, f, normalize_tangent, backend)
    z = solve_block_tridiag(system, rhs, backend=backend)
    X = X_prev.values
    Xn = z.copy()
    Xn[0] = X[0] + z[0, 0] * d0
    Xn[-1] = X[-1] + z[-1, 0] * dJ
    if project_endpoints:
        Xn[0] = project_to_boundary(boundaries.left, Xn[0])
        Xn[-1] = project_to_boundary(boundaries.right, Xn[-1])
    return VectorField(X_prev.mesh, Xn)
