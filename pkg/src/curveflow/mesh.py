"""Meshes on [0, 1] and piecewise-linear finite element fields.

A field is stored by its nodal values. Scalar fields hold an array of shape
``(J+1,)``, vector fields (curve positions) an array of shape ``(J+1, 2)``.
All norms below are evaluated exactly for piecewise-linear functions, so
they carry no quadrature error.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMeshError, InvalidArgumentError

# chord length below which an element counts as collapsed
DEGENERATE_TOL = 1e-14


def perp(v):
    """Rotate plane vectors by +90 degrees: (p0, p1) -> (-p1, p0)."""
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Mesh:
    """Partition 0 = rho_0 < rho_1 < ... < rho_J = 1 of the parameter interval."""

    nodes: np.ndarray

    def __post_init__(self):
        nodes = _frozen(self.nodes)
        if nodes.ndim != 1 or nodes.size < 3:
            raise InvalidArgumentError("a mesh needs at least two elements")
        if nodes[0] != 0.0 or nodes[-1] != 1.0:
            raise InvalidArgumentError("mesh must start at 0 and end at 1")
        if np.any(np.diff(nodes) <= 0.0):
            raise InvalidArgumentError("mesh nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "h", _frozen(np.diff(nodes)))

    @property
    def J(self):
        return self.nodes.size - 1

    @property
    def num_nodes(self):
        return self.nodes.size

    @property
    def hmax(self):
        return float(self.h.max())


def make_uniform_mesh(J):
    """Uniform mesh with J elements of length 1/J."""
    if int(J) != J or J < 2:
        raise InvalidArgumentError(f"need an integer J >= 2, got {J!r}")
    J = int(J)
    nodes = np.arange(J + 1, dtype=float) / J
    return Mesh(nodes)


@dataclass(frozen=True, eq=False)
class ScalarField:
    mesh: Mesh
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values)
        if values.shape != (self.mesh.num_nodes,):
            raise InvalidArgumentError(
                f"expected {self.mesh.num_nodes} nodal values, got shape {values.shape}")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True, eq=False)
class VectorField:
    mesh: Mesh
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values)
        if values.shape != (self.mesh.num_nodes, 2):
            raise InvalidArgumentError(
                f"expected {self.mesh.num_nodes} nodal points, got shape {values.shape}")
        object.__setattr__(self, "values", values)


def interpolate_scalar(fn, mesh):
    """Lagrange interpolant of ``fn`` (called once per node)."""
    return ScalarField(mesh, [fn(r) for r in mesh.nodes])


def interpolate_vector(fn, mesh):
    return VectorField(mesh, [fn(r) for r in mesh.nodes])


def _check_same_mesh(u, v):
    if u.mesh is not v.mesh and not np.array_equal(u.mesh.nodes, v.mesh.nodes):
        raise InvalidArgumentError("fields live on different meshes")


def lumped_inner(u, v):
    """Mass-lumped inner product: the exact integral of I^h(u v).

    Works for scalar and vector fields alike (vector products are dotted).
    """
    _check_same_mesh(u, v)
    uv = u.values * v.values
    if uv.ndim == 2:
        uv = uv.sum(axis=1)
    h = u.mesh.h
    return float(np.sum(0.5 * h * (uv[:-1] + uv[1:])))


def l2_norm_sq(u):
    return l2_norm_sq_values(u.mesh.h, u.values)


def h1_seminorm_sq(u):
    return h1_seminorm_sq_values(u.mesh.h, u.values)


def l2_norm_sq_values(h, values):
    """Exact squared L2 norm of the piecewise-linear function with these nodal values."""
    a = values[:-1]
    b = values[1:]
    per_node = a * a + a * b + b * b
    if per_node.ndim == 2:
        per_node = per_node.sum(axis=1)
    return float(np.sum(h / 3.0 * per_node))


def h1_seminorm_sq_values(h, values):
    d = np.diff(values, axis=0)
    d2 = d * d
    if d2.ndim == 2:
        d2 = d2.sum(axis=1)
    return float(np.sum(d2 / h))


@dataclass(frozen=True, eq=False)
class ElementGeometry:
    """Per-element speed |X_rho|, unit tangent and unit normal of a polygonal curve."""

    speed: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    chord: np.ndarray


def chords(X):
    """Element chord vectors and lengths of nodal positions ``X``; raises on collapse."""
    e = np.diff(X, axis=0)
    length = np.hypot(e[:, 0], e[:, 1])
    bad = np.flatnonzero(length < DEGENERATE_TOL)
    if bad.size:
        j = int(bad[0])
        # elements are numbered 1..J
        raise DegenerateMeshError(j + 1, float(length[j]))
    return e, length


def element_geometry(X):
    e, length = chords(X.values)
    tangent = e / length[:, None]
    return ElementGeometry(
        speed=_frozen(length / X.mesh.h),
        tangent=_frozen(tangent),
        normal=_frozen(perp(tangent)),
        chord=_frozen(length),
    )


@dataclass(frozen=True, eq=False)
class ElementVelocities:
    """Element-local nodal velocities; index ``[j, 0]`` is the left node of element j+1."""

    tangential: np.ndarray
    normal: np.ndarray


def element_velocities(X_new, X_prev, dt):
    """Tangential and normal velocity of D_t X, projected on the new element frames.

    The values are discontinuous across nodes because the frame jumps, so each
    element stores its own pair (left node, right node).
    """
    if dt <= 0:
        raise InvalidArgumentError("dt must be positive")
    _check_same_mesh(X_new, X_prev)
    geo = element_geometry(X_new)
    psi, v = _velocities(X_new.values, X_prev.values, dt, geo.tangent, geo.normal)
    return ElementVelocities(_frozen(psi), _frozen(v))


def _velocities(Xn, Xp, dt, tangent, normal):
    DX = (Xn - Xp) / dt
    left, right = DX[:-1], DX[1:]
    psi = np.stack([np.einsum("ij,ij->i", left, tangent),
                    np.einsum("ij,ij->i", right, tangent)], axis=1)
    v = np.stack([np.einsum("ij,ij->i", left, normal),
                  np.einsum("ij,ij->i", right, normal)], axis=1)
    return psi, v
