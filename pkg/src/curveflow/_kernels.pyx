# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: system assembly and banded direct solves.

Must stay call-compatible with ``_fallback.py``; the test-suite runs both.
"""
import numpy as np

from libc.math cimport fabs

cdef double PIVOT_TOL = 1e-14


cdef inline double _max3(double a, double b, double c) nogil:
    a = fabs(a)
    b = fabs(b)
    c = fabs(c)
    if b > a:
        a = b
    if c > a:
        a = c
    return a


def solve_tridiag(const double[::1] sub, const double[::1] diag,
                  const double[::1] sup, const double[::1] rhs):
    """Thomas sweep. Returns ``(x, bad_row)`` with ``bad_row = -1`` on success."""
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double m, scale, lo, up
    cp_arr = np.empty(n)
    x_arr = np.empty(n)
    cdef double[::1] cp = cp_arr
    cdef double[::1] x = x_arr
    for i in range(n):
        lo = sub[i - 1] if i > 0 else 0.0
        up = sup[i] if i < n - 1 else 0.0
        m = diag[i]
        if i > 0:
            m = m - lo * cp[i - 1]
        scale = _max3(lo, diag[i], up)
        if scale == 0.0 or fabs(m) <= PIVOT_TOL * scale:
            return x_arr, i
        cp[i] = up / m
        if i > 0:
            x[i] = (rhs[i] - lo * x[i - 1]) / m
        else:
            x[i] = rhs[i] / m
    for i in range(n - 2, -1, -1):
        x[i] = x[i] - cp[i] * x[i + 1]
    return x_arr, -1


cdef inline bint _inv2(double a, double b, double c, double d, double[4] out) nogil:
    cdef double det = a * d - b * c
    cdef double s = fabs(a)
    if fabs(b) > s:
        s = fabs(b)
    if fabs(c) > s:
        s = fabs(c)
    if fabs(d) > s:
        s = fabs(d)
    if s == 0.0 or fabs(det) <= PIVOT_TOL * s * s:
        return False
    out[0] = d / det
    out[1] = -b / det
    out[2] = -c / det
    out[3] = a / det
    return True


def solve_block_tridiag(const double[:, :, ::1] sub, const double[:, :, ::1] diag,
                        const double[:, :, ::1] sup, const double[:, ::1] rhs):
    """Block Thomas sweep for 2x2 blocks. Returns ``(x, bad_row)``."""
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double m00, m01, m10, m11, r0, r1
    cdef double[4] inv
    cp_arr = np.zeros((n, 2, 2))
    x_arr = np.empty((n, 2))
    cdef double[:, :, ::1] cp = cp_arr
    cdef double[:, ::1] x = x_arr
    for i in range(n):
        m00 = diag[i, 0, 0]
        m01 = diag[i, 0, 1]
        m10 = diag[i, 1, 0]
        m11 = diag[i, 1, 1]
        r0 = rhs[i, 0]
        r1 = rhs[i, 1]
        if i > 0:
            # M -= L C'_{i-1};  r -= L y_{i-1}
            m00 -= sub[i - 1, 0, 0] * cp[i - 1, 0, 0] + sub[i - 1, 0, 1] * cp[i - 1, 1, 0]
            m01 -= sub[i - 1, 0, 0] * cp[i - 1, 0, 1] + sub[i - 1, 0, 1] * cp[i - 1, 1, 1]
            m10 -= sub[i - 1, 1, 0] * cp[i - 1, 0, 0] + sub[i - 1, 1, 1] * cp[i - 1, 1, 0]
            m11 -= sub[i - 1, 1, 0] * cp[i - 1, 0, 1] + sub[i - 1, 1, 1] * cp[i - 1, 1, 1]
            r0 -= sub[i - 1, 0, 0] * x[i - 1, 0] + sub[i - 1, 0, 1] * x[i - 1, 1]
            r1 -= sub[i - 1, 1, 0] * x[i - 1, 0] + sub[i - 1, 1, 1] * x[i - 1, 1]
        if not _inv2(m00, m01, m10, m11, inv):
            return x_arr, i
        if i < n - 1:
            cp[i, 0, 0] = inv[0] * sup[i, 0, 0] + inv[1] * sup[i, 1, 0]
            cp[i, 0, 1] = inv[0] * sup[i, 0, 1] + inv[1] * sup[i, 1, 1]
            cp[i, 1, 0] = inv[2] * sup[i, 0, 0] + inv[3] * sup[i, 1, 0]
            cp[i, 1, 1] = inv[2] * sup[i, 0, 1] + inv[3] * sup[i, 1, 1]
        x[i, 0] = inv[0] * r0 + inv[1] * r1
        x[i, 1] = inv[2] * r0 + inv[3] * r1
    for i in range(n - 2, -1, -1):
        r0 = cp[i, 0, 0] * x[i + 1, 0] + cp[i, 0, 1] * x[i + 1, 1]
        r1 = cp[i, 1, 0] * x[i + 1, 0] + cp[i, 1, 1] * x[i + 1, 1]
        x[i, 0] -= r0
        x[i, 1] -= r1
    return x_arr, -1


def curve_system(const double[:, ::1] X, const double[::1] h, const double[::1] length,
                 const double[:, ::1] normal, const double[::1] fvals,
                 double alpha, double dt, const double[::1] d0, const double[::1] dJ):
    """Assemble the dt-scaled, endpoint-reduced curve system.

    Unknowns: endpoint displacements along d0, dJ (rows 0 and J, padded to
    2x2 with an identity dummy) and interior nodal positions.
    """
    cdef Py_ssize_t J = h.shape[0]
    cdef Py_ssize_t n = J + 1
    cdef Py_ssize_t e, k, a, b
    cdef double w, kk, nx, ny, A00, A01, A11, fk
    sub_arr = np.zeros((J, 2, 2))
    diag_arr = np.zeros((n, 2, 2))
    sup_arr = np.zeros((J, 2, 2))
    rhs_arr = np.zeros((n, 2))
    B_arr = np.zeros((n, 2, 2))
    K_arr = np.zeros(n)
    cdef double[:, :, ::1] sub = sub_arr
    cdef double[:, :, ::1] diag = diag_arr
    cdef double[:, :, ::1] sup = sup_arr
    cdef double[:, ::1] rhs = rhs_arr
    cdef double[:, :, ::1] B = B_arr
    cdef double[::1] Kd = K_arr
    cdef double[2] R0, RJ

    for e in range(J):
        # lumped weight (h/2)|X_rho|^2 = L^2 / (2h)
        w = 0.5 * length[e] * length[e] / h[e]
        nx = normal[e, 0]
        ny = normal[e, 1]
        A00 = alpha + (1.0 - alpha) * nx * nx
        A01 = (1.0 - alpha) * nx * ny
        A11 = alpha + (1.0 - alpha) * ny * ny
        kk = 1.0 / h[e]
        for k in range(e, e + 2):
            B[k, 0, 0] += w * A00
            B[k, 0, 1] += w * A01
            B[k, 1, 0] += w * A01
            B[k, 1, 1] += w * A11
            fk = w * fvals[k] * dt
            rhs[k, 0] += fk * nx
            rhs[k, 1] += fk * ny
            Kd[k] += kk
        sub[e, 0, 0] = -dt * kk
        sub[e, 1, 1] = -dt * kk
        sup[e, 0, 0] = -dt * kk
        sup[e, 1, 1] = -dt * kk

    for k in range(1, J):
        for a in range(2):
            for b in range(2):
                diag[k, a, b] = B[k, a, b]
            diag[k, a, a] += dt * Kd[k]
            rhs[k, a] += B[k, a, 0] * X[k, 0] + B[k, a, 1] * X[k, 1]

    # endpoint rows: tested with d, unknown displacement along d
    R0[0] = rhs[0, 0] - dt * Kd[0] * X[0, 0]
    R0[1] = rhs[0, 1] - dt * Kd[0] * X[0, 1]
    RJ[0] = rhs[J, 0] - dt * Kd[J] * X[J, 0]
    RJ[1] = rhs[J, 1] - dt * Kd[J] * X[J, 1]
    diag[0, 0, 0] = (d0[0] * (B[0, 0, 0] * d0[0] + B[0, 0, 1] * d0[1])
                     + d0[1] * (B[0, 1, 0] * d0[0] + B[0, 1, 1] * d0[1])
                     + dt * Kd[0] * (d0[0] * d0[0] + d0[1] * d0[1]))
    diag[0, 1, 1] = 1.0
    rhs[0, 0] = d0[0] * R0[0] + d0[1] * R0[1]
    rhs[0, 1] = 0.0
    kk = sup[0, 0, 0]
    sup[0, 0, 0] = kk * d0[0]
    sup[0, 0, 1] = kk * d0[1]
    sup[0, 1, 1] = 0.0
    kk = sub[0, 0, 0]
    sub[0, 0, 0] = kk * d0[0]
    sub[0, 1, 0] = kk * d0[1]
    sub[0, 1, 1] = 0.0
    rhs[1, 0] -= kk * X[0, 0]
    rhs[1, 1] -= kk * X[0, 1]

    diag[J, 0, 0] = (dJ[0] * (B[J, 0, 0] * dJ[0] + B[J, 0, 1] * dJ[1])
                     + dJ[1] * (B[J, 1, 0] * dJ[0] + B[J, 1, 1] * dJ[1])
                     + dt * Kd[J] * (dJ[0] * dJ[0] + dJ[1] * dJ[1]))
    diag[J, 1, 1] = 1.0
    rhs[J, 0] = dJ[0] * RJ[0] + dJ[1] * RJ[1]
    rhs[J, 1] = 0.0
    # row J couples back to node J-1 (sub[J-1]); node J-1 couples forward to J (sup[J-1])
    kk = -dt / h[J - 1]
    sub[J - 1, 0, 0] = kk * dJ[0]
    sub[J - 1, 0, 1] = kk * dJ[1]
    sub[J - 1, 1, 0] = 0.0
    sub[J - 1, 1, 1] = 0.0
    sup[J - 1, 0, 0] = kk * dJ[0]
    sup[J - 1, 1, 0] = kk * dJ[1]
    sup[J - 1, 0, 1] = 0.0
    sup[J - 1, 1, 1] = 0.0
    rhs[J - 1, 0] -= kk * X[J, 0]
    rhs[J - 1, 1] -= kk * X[J, 1]
    return sub_arr, diag_arr, sup_arr, rhs_arr


def solute_system(const double[::1] length_new, const double[::1] length_old,
                  const double[:, ::1] psi, const double[::1] W_old,
                  const double[:, ::1] gvals, double dt, double wb):
    """Assemble the tridiagonal solute system with Dirichlet end rows.

    ``psi`` and ``gvals`` are element-local (left node, right node) values.
    """
    cdef Py_ssize_t J = length_new.shape[0]
    cdef Py_ssize_t n = J + 1
    cdef Py_ssize_t e, k
    cdef double mn, mo, s
    sub_arr = np.zeros(J)
    diag_arr = np.zeros(n)
    sup_arr = np.zeros(J)
    rhs_arr = np.zeros(n)
    cdef double[::1] sub = sub_arr
    cdef double[::1] diag = diag_arr
    cdef double[::1] sup = sup_arr
    cdef double[::1] rhs = rhs_arr
    for e in range(J):
        # lumped mass (h/2)|X_rho| = L/2 at each end of the element
        mn = 0.5 * length_new[e]
        mo = 0.5 * length_old[e]
        s = 1.0 / length_new[e]
        diag[e] += mn / dt + s
        diag[e + 1] += mn / dt + s
        sub[e] -= s
        sup[e] -= s
        rhs[e] += mo / dt * W_old[e] + mn * gvals[e, 0]
        rhs[e + 1] += mo / dt * W_old[e + 1] + mn * gvals[e, 1]
        # advection (Psi W, phi')^h; phi_e' = -1/h and phi_{e+1}' = +1/h on this element
        diag[e] -= 0.5 * psi[e, 0]
        sup[e] -= 0.5 * psi[e, 1]
        sub[e] += 0.5 * psi[e, 0]
        diag[e + 1] += 0.5 * psi[e, 1]
    diag[0] = 1.0
    sup[0] = 0.0
    rhs[0] = wb
    diag[J] = 1.0
    sub[J - 1] = 0.0
    rhs[J] = wb
    return sub_arr, diag_arr, sup_arr, rhs_arr
