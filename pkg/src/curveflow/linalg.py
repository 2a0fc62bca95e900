"""Direct solvers for the tridiagonal and 2x2 block-tridiagonal step systems."""
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvalidArgumentError, SingularSystemError


@dataclass(frozen=True, eq=False)
class Tridiag:
    """``sub[i]`` couples row i+1 to column i, ``sup[i]`` row i to column i+1."""

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray

    def __post_init__(self):
        for name in ("sub", "diag", "sup"):
            object.__setattr__(self, name, np.ascontiguousarray(getattr(self, name), dtype=float))
        n = self.diag.shape[0]
        if self.diag.ndim != 1 or n < 1 or self.sub.shape != (n - 1,) or self.sup.shape != (n - 1,):
            raise InvalidArgumentError("inconsistent tridiagonal band lengths")

    @property
    def n(self):
        return self.diag.shape[0]

    def matvec(self, x):
        y = self.diag * x
        y[1:] += self.sub * x[:-1]
        y[:-1] += self.sup * x[1:]
        return y

    def dense(self):
        return np.diag(self.diag) + np.diag(self.sub, -1) + np.diag(self.sup, 1)


@dataclass(frozen=True, eq=False)
class BlockTridiag:
    """Block-tridiagonal matrix with 2x2 blocks.

    Rows flagged in ``scalar_rows`` carry a single unknown (the first
    component); their second component is pinned to zero by an identity
    dummy before solving.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    scalar_rows: tuple = field(default=())

    def __post_init__(self):
        for name in ("sub", "diag", "sup"):
            object.__setattr__(self, name, np.array(getattr(self, name), dtype=float))
        n = self.diag.shape[0]
        if (self.diag.shape != (n, 2, 2) or self.sub.shape != (n - 1, 2, 2)
                or self.sup.shape != (n - 1, 2, 2)):
            raise InvalidArgumentError("inconsistent block shapes")
        for i in self.scalar_rows:
            self.diag[i, 1, :] = 0.0
            self.diag[i, :, 1] = 0.0
            self.diag[i, 1, 1] = 1.0
            if i > 0:
                self.sub[i - 1, 1, :] = 0.0
                self.sup[i - 1, :, 1] = 0.0
            if i < n - 1:
                self.sup[i, 1, :] = 0.0
                self.sub[i, :, 1] = 0.0

    @property
    def n(self):
        return self.diag.shape[0]

    def matvec(self, x):
        y = np.einsum("kab,kb->ka", self.diag, x)
        y[1:] += np.einsum("kab,kb->ka", self.sub, x[:-1])
        y[:-1] += np.einsum("kab,kb->ka", self.sup, x[1:])
        return y

    def dense(self):
        n = self.n
        M = np.zeros((2 * n, 2 * n))
        for i in range(n):
            M[2 * i:2 * i + 2, 2 * i:2 * i + 2] = self.diag[i]
            if i > 0:
                M[2 * i:2 * i + 2, 2 * i - 2:2 * i] = self.sub[i - 1]
            if i < n - 1:
                M[2 * i:2 * i + 2, 2 * i + 2:2 * i + 4] = self.sup[i]
        return M


def solve_tridiag(A, rhs, backend=None):
    rhs = np.ascontiguousarray(rhs, dtype=float)
    if rhs.shape != (A.n,):
        raise InvalidArgumentError("right-hand side has the wrong length")
    x, bad = kernels.get(backend).solve_tridiag(A.sub, A.diag, A.sup, rhs)
    if bad >= 0:
        raise SingularSystemError(bad)
    return np.asarray(x)


def solve_block_tridiag(A, rhs, backend=None):
    rhs = np.array(rhs, dtype=float)
    if rhs.shape != (A.n, 2):
        raise InvalidArgumentError("right-hand side has the wrong shape")
    for i in A.scalar_rows:
        rhs[i, 1] = 0.0
    x, bad = kernels.get(backend).solve_block_tridiag(A.sub, A.diag, A.sup, rhs)
    if bad >= 0:
        raise SingularSystemError(bad)
    return np.asarray(x)
