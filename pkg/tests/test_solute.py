import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curveflow import (ScalarField, VectorField, curve_step, example1, example3,
                       make_uniform_mesh, solute_step)
from curveflow.errors import InvalidArgumentError
from curveflow.linalg import solve_tridiag
from curveflow.solute import assemble_solute_system

from oracles import random_state, solute_step_dense

ZERO = lambda v, w, rho, t: 0.0 * w  # noqa: E731


def flat(J, y=0.0):
    m = make_uniform_mesh(J)
    return VectorField(m, np.column_stack([2 * m.nodes - 1, np.full(J + 1, y)]))


def test_frozen_flat_curve_keeps_zero(backend):
    X = flat(8)
    W = ScalarField(X.mesh, np.zeros(9))
    Wn = solute_step(X, X, W, 0.01, 0.0, 0.0, ZERO, backend=backend)
    assert np.all(Wn.values == 0.0)


def test_frozen_flat_curve_keeps_constant(backend):
    X = flat(8)
    W = ScalarField(X.mesh, np.ones(9))
    Wn = solute_step(X, X, W, 0.3, 0.0, 1.0, ZERO, backend=backend)
    assert np.allclose(Wn.values, 1.0, rtol=0, atol=1e-14)


def test_first_step_of_semicircle_matches_dense_oracle(backend):
    sc = example1()
    J, dt = 4, 0.01
    m = make_uniform_mesh(J)
    X = VectorField(m, sc.x0(m.nodes))
    W = ScalarField(m, sc.w0(m.nodes))
    Xn = curve_step(X, W, dt, 1.0, 0.0, sc.boundaries, sc.f, backend=backend)
    Wn = solute_step(Xn, X, W, dt, 0.0, sc.w_b, sc.g, backend=backend).values
    ref = solute_step_dense(Xn.values, X.values, W.values, m.nodes, dt, 0.0, sc.w_b, sc.g)
    assert np.max(np.abs(Wn - ref)) <= 1e-10


def test_random_inputs_match_dense_oracle(backend, rng):
    sc = example3()
    for _ in range(30):
        J = int(rng.integers(2, 7))
        X, W = random_state(rng, J, sc.boundaries)
        Xn = X + rng.uniform(-0.02, 0.02, X.shape)
        dt = rng.uniform(1e-3, 0.05)
        m = make_uniform_mesh(J)
        Wn = solute_step(VectorField(m, Xn), VectorField(m, X), ScalarField(m, W), dt, 0.0,
                         sc.w_b, sc.g, backend=backend).values
        ref = solute_step_dense(Xn, X, W, m.nodes, dt, 0.0, sc.w_b, sc.g)
        assert np.max(np.abs(Wn - ref)) <= 1e-10
        assert Wn[0] == sc.w_b and Wn[-1] == sc.w_b


def test_assembled_system_residual(backend, rng):
    sc = example3()
    X, W = random_state(rng, 50, sc.boundaries)
    Xn = X + rng.uniform(-0.01, 0.01, X.shape)
    m = make_uniform_mesh(50)
    A, rhs = assemble_solute_system(VectorField(m, Xn), VectorField(m, X), ScalarField(m, W),
                                    0.01, 0.0, 1.0, sc.g, backend=backend)
    x = solve_tridiag(A, rhs, backend=backend)
    assert np.max(np.abs(A.matvec(x) - rhs)) <= 1e-9 * np.max(np.abs(rhs))


def test_reduces_to_lumped_heat_matrix():
    J, dt = 7, 0.02
    X = flat(J)
    L = 2.0 / J
    A, _ = assemble_solute_system(X, X, ScalarField(X.mesh, np.zeros(J + 1)), dt, 0.0, 0.0, ZERO)
    D = A.dense()
    for i in range(1, J):
        assert D[i, i] == pytest.approx(L / dt + 2.0 / L, rel=1e-12)
        assert D[i, i - 1] == pytest.approx(-1.0 / L, rel=1e-12)
        assert D[i, i + 1] == pytest.approx(-1.0 / L, rel=1e-12)
    assert D[0, 0] == 1.0 and D[0, 1] == 0.0
    assert D[J, J] == 1.0 and D[J, J - 1] == 0.0


@given(st.integers(2, 40), st.integers(0, 2**32 - 1))
def test_lumped_mass_decays_without_sources(J, seed):
    rng = np.random.default_rng(seed)
    m = make_uniform_mesh(J)
    X = VectorField(m, np.column_stack([np.cumsum(rng.uniform(0.1, 1.0, J + 1)),
                                        rng.uniform(-0.3, 0.3, J + 1)]))
    L = np.hypot(*np.diff(X.values, axis=0).T)
    M = np.zeros(J + 1)
    M[:-1] += L / 2
    M[1:] += L / 2
    W = rng.uniform(0.0, 5.0, J + 1)
    W[0] = W[-1] = 0.0
    mass = M @ W
    for _ in range(5):
        W = solute_step(X, X, ScalarField(m, W), 0.05, 0.0, 0.0, ZERO).values
        assert M @ W <= mass + 1e-12
        mass = M @ W


def test_reaction_sees_new_normal_velocity():
    seen = []

    def g(v, w, rho, t):
        seen.append(np.array(v, dtype=float))
        return 0.0 * w

    X = flat(4)
    dt = 0.1
    Xn = VectorField(X.mesh, X.values + dt * np.array([0.0, 2.0]))
    solute_step(Xn, X, ScalarField(X.mesh, np.zeros(5)), dt, 0.0, 0.0, g)
    assert all(np.allclose(v, 2.0) for v in seen)


def test_bad_dt_rejected():
    X = flat(4)
    with pytest.raises(InvalidArgumentError):
        solute_step(X, X, ScalarField(X.mesh, np.zeros(5)), 0.0, 0.0, 0.0, ZERO)
