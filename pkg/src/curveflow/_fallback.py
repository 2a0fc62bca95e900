"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Assembly is vectorised with numpy; the banded sweeps are plain loops over
Python floats, which is the slow part this module exists to replace.
"""
import numpy as np

PIVOT_TOL = 1e-14


def solve_tridiag(sub, diag, sup, rhs):
    n = len(diag)
    sub = [float(v) for v in sub]
    diag = [float(v) for v in diag]
    sup = [float(v) for v in sup]
    rhs = [float(v) for v in rhs]
    cp = [0.0] * n
    x = [0.0] * n
    for i in range(n):
        lo = sub[i - 1] if i > 0 else 0.0
        up = sup[i] if i < n - 1 else 0.0
        m = diag[i] - lo * cp[i - 1] if i > 0 else diag[i]
        scale = max(abs(lo), abs(diag[i]), abs(up))
        if scale == 0.0 or abs(m) <= PIVOT_TOL * scale:
            return np.array(x), i
        cp[i] = up / m
        x[i] = (rhs[i] - lo * x[i - 1]) / m if i > 0 else rhs[i] / m
    for i in range(n - 2, -1, -1):
        x[i] -= cp[i] * x[i + 1]
    return np.array(x), -1


def _inv2(a, b, c, d):
    det = a * d - b * c
    s = max(abs(a), abs(b), abs(c), abs(d))
    if s == 0.0 or abs(det) <= PIVOT_TOL * s * s:
        return None
    return d / det, -b / det, -c / det, a / det


def solve_block_tridiag(sub, diag, sup, rhs):
    n = len(diag)
    sub = np.asarray(sub, dtype=float).tolist()
    diag = np.asarray(diag, dtype=float).tolist()
    sup = np.asarray(sup, dtype=float).tolist()
    rhs = np.asarray(rhs, dtype=float).tolist()
    cp = [None] * n
    y = [None] * n
    for i in range(n):
        (m00, m01), (m10, m11) = diag[i]
        r0, r1 = rhs[i]
        if i > 0:
            (l00, l01), (l10, l11) = sub[i - 1]
            (c00, c01), (c10, c11) = cp[i - 1]
            y0, y1 = y[i - 1]
            m00 -= l00 * c00 + l01 * c10
            m01 -= l00 * c01 + l01 * c11
            m10 -= l10 * c00 + l11 * c10
            m11 -= l10 * c01 + l11 * c11
            r0 -= l00 * y0 + l01 * y1
            r1 -= l10 * y0 + l11 * y1
        inv = _inv2(m00, m01, m10, m11)
        if inv is None:
            return np.zeros((n, 2)), i
        i00, i01, i10, i11 = inv
        if i < n - 1:
            (u00, u01), (u10, u11) = sup[i]
            cp[i] = ((i00 * u00 + i01 * u10, i00 * u01 + i01 * u11),
                     (i10 * u00 + i11 * u10, i10 * u01 + i11 * u11))
        y[i] = (i00 * r0 + i01 * r1, i10 * r0 + i11 * r1)
    x = [None] * n
    x[n - 1] = y[n - 1]
    for i in range(n - 2, -1, -1):
        (c00, c01), (c10, c11) = cp[i]
        x0, x1 = x[i + 1]
        x[i] = (y[i][0] - c00 * x0 - c01 * x1, y[i][1] - c10 * x0 - c11 * x1)
    return np.array(x), -1


def curve_system(X, h, length, normal, fvals, alpha, dt, d0, dJ):
    J = len(h)
    n = J + 1
    w = 0.5 * length**2 / h
    A = alpha * np.eye(2) + (1.0 - alpha) * np.einsum("ei,ej->eij", normal, normal)
    wA = w[:, None, None] * A
    B = np.zeros((n, 2, 2))
    B[:-1] += wA
    B[1:] += wA
    force = np.zeros((n, 2))
    wn = w[:, None] * normal
    force[:-1] += wn * fvals[:-1, None]
    force[1:] += wn * fvals[1:, None]
    Kd = np.zeros(n)
    Kd[:-1] += 1.0 / h
    Kd[1:] += 1.0 / h

    diag = B + dt * Kd[:, None, None] * np.eye(2)
    rhs = dt * force + np.einsum("kab,kb->ka", B, X)
    off = -dt / h
    sub = off[:, None, None] * np.eye(2)
    sup = sub.copy()

    d0 = np.asarray(d0, dtype=float)
    dJ = np.asarray(dJ, dtype=float)
    R0 = dt * force[0] - dt * Kd[0] * X[0]
    RJ = dt * force[J] - dt * Kd[J] * X[J]
    diag[0] = [[d0 @ B[0] @ d0 + dt * Kd[0] * (d0 @ d0), 0.0], [0.0, 1.0]]
    diag[J] = [[dJ @ B[J] @ dJ + dt * Kd[J] * (dJ @ dJ), 0.0], [0.0, 1.0]]
    rhs[0] = [d0 @ R0, 0.0]
    rhs[J] = [dJ @ RJ, 0.0]
    sup[0] = [[off[0] * d0[0], off[0] * d0[1]], [0.0, 0.0]]
    sub[0] = [[off[0] * d0[0], 0.0], [off[0] * d0[1], 0.0]]
    rhs[1] -= off[0] * X[0]
    sub[J - 1] = [[off[J - 1] * dJ[0], off[J - 1] * dJ[1]], [0.0, 0.0]]
    sup[J - 1] = [[off[J - 1] * dJ[0], 0.0], [off[J - 1] * dJ[1], 0.0]]
    rhs[J - 1] -= off[J - 1] * X[J]
    return sub, diag, sup, rhs


def solute_system(length_new, length_old, psi, W_old, gvals, dt, wb):
    J = len(length_new)
    mn = 0.5 * length_new
    mo = 0.5 * length_old
    s = 1.0 / length_new
    diag = np.zeros(J + 1)
    rhs = np.zeros(J + 1)
    diag[:-1] += mn / dt + s - 0.5 * psi[:, 0]
    diag[1:] += mn / dt + s + 0.5 * psi[:, 1]
    sub = -s + 0.5 * psi[:, 0]
    sup = -s - 0.5 * psi[:, 1]
    rhs[:-1] += mo / dt * W_old[:-1] + mn * gvals[:, 0]
    rhs[1:] += mo / dt * W_old[1:] + mn * gvals[:, 1]
    diag[0] = diag[J] = 1.0
    sup[0] = 0.0
    sub[J - 1] = 0.0
    rhs[0] = rhs[J] = wb
    return sub, diag, sup, rhs
