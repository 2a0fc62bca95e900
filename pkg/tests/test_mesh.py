import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curveflow import (ScalarField, VectorField, element_geometry, element_velocities,
                       example1, h1_seminorm_sq, interpolate_scalar, interpolate_vector,
                       l2_norm_sq, lumped_inner, make_uniform_mesh)
from curveflow.errors import DegenerateMeshError, InvalidArgumentError
from curveflow.mesh import Mesh, perp


def test_uniform_mesh_nodes():
    assert np.allclose(make_uniform_mesh(4).nodes, [0, 0.25, 0.5, 0.75, 1])
    assert np.allclose(make_uniform_mesh(2).nodes, [0, 0.5, 1])
    m = make_uniform_mesh(160)
    assert m.num_nodes == 161 and m.J == 160
    assert np.allclose(m.h, 1 / 160)


@pytest.mark.parametrize("J", [1, 0, -3, 2.5])
def test_uniform_mesh_rejects_bad_J(J):
    with pytest.raises(InvalidArgumentError):
        make_uniform_mesh(J)


@pytest.mark.parametrize("nodes", [[0, 0.5, 0.5, 1], [0, 1], [0.1, 0.5, 1], [0, 0.6, 0.4, 1]])
def test_mesh_rejects_bad_nodes(nodes):
    with pytest.raises(InvalidArgumentError):
        Mesh(nodes)


def test_fields_are_read_only():
    m = make_uniform_mesh(3)
    u = ScalarField(m, np.zeros(4))
    with pytest.raises(ValueError):
        u.values[0] = 1.0
    with pytest.raises(InvalidArgumentError):
        ScalarField(m, np.zeros(5))
    with pytest.raises(InvalidArgumentError):
        VectorField(m, np.zeros((4, 3)))


def test_interpolation_examples():
    m = make_uniform_mesh(7)
    assert np.all(interpolate_scalar(lambda r: 1.0, m).values == 1.0)
    s = interpolate_scalar(lambda r: math.sin(math.pi * r), make_uniform_mesh(2)).values
    assert np.allclose(s, [0, 1, 0], atol=1e-15)
    w0 = interpolate_scalar(lambda r: example1().exact_w(r, 0.0), m).values
    assert np.allclose(w0, np.sin(np.pi * m.nodes), rtol=0, atol=1e-15)


def test_lumped_inner_examples():
    m = make_uniform_mesh(8)
    for j in range(1, 8):
        hat = np.zeros(9)
        hat[j] = 1.0
        u = ScalarField(m, hat)
        assert lumped_inner(u, u) == pytest.approx(1 / 8, rel=1e-15)
    one = ScalarField(m, np.ones(9))
    assert lumped_inner(one, one) == pytest.approx(1.0, rel=1e-15)
    # independent summation: interior nodes carry weight h, ends h/2
    s = np.sin(np.pi * m.nodes)
    u = ScalarField(m, s)
    expected = math.fsum([s[j] ** 2 / 8 for j in range(1, 8)] + [s[0] ** 2 / 16, s[8] ** 2 / 16])
    assert lumped_inner(u, u) == pytest.approx(expected, rel=1e-14)


def test_lumped_inner_rejects_mesh_mismatch():
    a = ScalarField(make_uniform_mesh(3), np.ones(4))
    b = ScalarField(make_uniform_mesh(4), np.ones(5))
    with pytest.raises(InvalidArgumentError):
        lumped_inner(a, b)


def test_norm_examples():
    m = make_uniform_mesh(5)
    one = ScalarField(m, np.ones(6))
    assert l2_norm_sq(one) == pytest.approx(1.0)
    assert h1_seminorm_sq(one) == 0.0
    nonuniform = Mesh([0, 0.1, 0.35, 0.8, 1])
    lin = ScalarField(nonuniform, nonuniform.nodes)
    assert l2_norm_sq(lin) == pytest.approx(1 / 3, rel=1e-14)
    assert h1_seminorm_sq(lin) == pytest.approx(1.0, rel=1e-14)
    m = make_uniform_mesh(64)
    s = interpolate_scalar(lambda r: math.sin(math.pi * r), m)
    assert abs(h1_seminorm_sq(s) - math.pi**2 / 2) <= 1e-3


@st.composite
def field_on_random_mesh(draw):
    J = draw(st.integers(2, 30))
    cuts = draw(st.lists(st.floats(0.01, 1.0), min_size=J, max_size=J))
    nodes = np.concatenate([[0.0], np.cumsum(cuts)])
    nodes /= nodes[-1]
    nodes[-1] = 1.0
    values = draw(st.lists(st.floats(-10, 10), min_size=J + 1, max_size=J + 1))
    return ScalarField(Mesh(nodes), values)


@given(field_on_random_mesh())
def test_lumped_norm_equivalence(u):
    lumped = lumped_inner(u, u)
    exact = l2_norm_sq(u)
    if exact < 1e-12:
        assert lumped <= 1e-10
        return
    ratio = lumped / exact
    assert 1.0 - 1e-12 <= ratio <= 3.0 + 1e-12


def test_perp_convention():
    assert np.allclose(perp([1.0, 0.0]), [0.0, 1.0])
    assert np.allclose(perp([[0.0, 1.0]]), [[-1.0, 0.0]])


def test_geometry_of_straight_segment():
    m = make_uniform_mesh(6)
    X = interpolate_vector(lambda r: (2 * r - 1, 0.0), m)
    geo = element_geometry(X)
    assert np.allclose(geo.speed, 2.0)
    assert np.allclose(geo.tangent, [1, 0])
    assert np.allclose(geo.normal, [0, 1])


def test_geometry_of_semicircle_chord():
    m = make_uniform_mesh(2)
    X = interpolate_vector(lambda r: (math.cos(math.pi * r), math.sin(math.pi * r)), m)
    geo = element_geometry(X)
    s = 1 / math.sqrt(2)
    assert np.allclose(geo.tangent[0], [-s, s])
    assert np.allclose(geo.normal[0], [-s, -s])
    assert geo.speed[0] == pytest.approx(2 * math.sqrt(2))


def test_repeated_node_is_degenerate():
    m = make_uniform_mesh(3)
    X = VectorField(m, [[0, 0], [1, 0], [1, 0], [2, 0]])
    with pytest.raises(DegenerateMeshError) as exc:
        element_geometry(X)
    assert exc.value.element == 2


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=3, max_size=20))
def test_frames_are_orthonormal(points):
    P = np.array(points)
    if np.any(np.hypot(*np.diff(P, axis=0).T) < 1e-6):
        return
    X = VectorField(make_uniform_mesh(len(points) - 1), P)
    geo = element_geometry(X)
    T, N = geo.tangent, geo.normal
    assert np.allclose(np.einsum("ij,ij->i", T, T), 1.0, atol=1e-12)
    assert np.allclose(np.einsum("ij,ij->i", N, N), 1.0, atol=1e-12)
    assert np.allclose(np.einsum("ij,ij->i", T, N), 0.0, atol=1e-12)
    # N is T turned counterclockwise
    assert np.allclose(T[:, 0] * N[:, 1] - T[:, 1] * N[:, 0], 1.0, atol=1e-12)


def test_velocities_examples():
    m = make_uniform_mesh(5)
    X = interpolate_vector(lambda r: (2 * r - 1, 0.0), m)
    zero = element_velocities(X, X, 0.1)
    assert np.all(zero.tangential == 0) and np.all(zero.normal == 0)
    dt = 0.01
    moved = VectorField(m, X.values + dt * np.array([1.0, 0.0]))
    vel = element_velocities(moved, X, dt)
    assert np.allclose(vel.tangential, 1.0)
    assert np.allclose(vel.normal, 0.0)


def test_shrinking_semicircle_moves_along_the_normal():
    # the counterclockwise perp of the tangent points to the centre here,
    # so inward motion has positive normal velocity
    sc = example1()
    m = make_uniform_mesh(8)
    dt = 0.01
    X0 = VectorField(m, sc.exact_x(m.nodes, 0.0))
    X1 = VectorField(m, sc.exact_x(m.nodes, dt))
    vel = element_velocities(X1, X0, dt)
    assert np.all(vel.normal > 0)
    assert np.allclose(vel.normal, 0.5, atol=0.03)


def test_velocities_reject_bad_dt():
    m = make_uniform_mesh(3)
    X = interpolate_vector(lambda r: (r, 0.0), m)
    with pytest.raises(InvalidArgumentError):
        element_velocities(X, X, 0.0)
