"""Dense complex matrix kernels.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  The
factorizations here are written out rather than delegated to LAPACK so the
pivot floor and the singularity diagnostics follow this package's
tolerance policy.
"""

import os
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, InputError, SingularMatrixError
from .validation import as_matrix, check_square

EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used throughout the package.

    Parameters
    ----------
    rtol : float
        Relative residual tolerance.
    atol : float
        Absolute floor added to relative bounds.
    cluster_tol : float
        Radius, relative to the spectral scale, within which eigenvalues
        are treated as one repeated eigenvalue.
    cond_max : float
        Largest admissible condition estimate of an eigenvector matrix.
    """

    rtol: float = 1e-10
    atol: float = 1e-12
    cluster_tol: float = 1e-8
    cond_max: float = 1e8

    def __post_init__(self):
        for field in ("rtol", "atol", "cluster_tol", "cond_max"):
            value = getattr(self, field)
            if not (np.isfinite(value) and value > 0):
                raise InputError(f"ToleranceConfig.{field} must be finite and > 0, got {value!r}")
        if self.rtol < self.atol:
            raise InputError(f"ToleranceConfig requires rtol >= atol ({self.rtol} < {self.atol})")

    @classmethod
    def from_env(cls, **overrides):
        """Build a config, taking ``rtol`` from ``SIMDIAG_TOL`` when not overridden."""
        if overrides.get("rtol") is None and os.environ.get("SIMDIAG_TOL"):
            try:
                overrides["rtol"] = float(os.environ["SIMDIAG_TOL"])
            except ValueError:
                raise InputError(f"SIMDIAG_TOL is not a number: {os.environ['SIMDIAG_TOL']!r}") from None
        return cls(**{k: v for k, v in overrides.items() if v is not None})

    def as_dict(self):
        return {
            "rtol": self.rtol,
            "atol": self.atol,
            "cluster_tol": self.cluster_tol,
            "cond_max": self.cond_max,
        }


DEFAULT_TOL = ToleranceConfig()


def matmul(a, b):
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def conj_transpose(a):
    return as_matrix(a).conj().T.copy()


def frobenius_norm(a):
    return float(np.linalg.norm(np.asarray(a), "fro"))


def lu_factor(a, tol=DEFAULT_TOL):
    """LU factorization with partial pivoting, ``a[perm] = L @ U``.

    Returns ``(lu, perm)`` with the unit lower factor stored below the
    diagonal of ``lu``.  Raises :class:`SingularMatrixError` when a pivot
    falls to ``atol * ||a||_F`` or below.
    """
    lu = check_square(a).copy()
    n = lu.shape[0]
    floor = tol.atol * frobenius_norm(lu)
    perm = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        pivot = abs(lu[p, k])
        if pivot <= floor:
            raise SingularMatrixError(f"matrix is singular to tolerance at column {k}", pivot)
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm


def lu_solve(lu, perm, rhs):
    n = lu.shape[0]
    x = rhs[perm].astype(np.complex128, copy=True)
    for k in range(n):
        x[k + 1:] -= np.outer(lu[k + 1:, k], x[k])
    for k in range(n - 1, -1, -1):
        x[k] /= lu[k, k]
        x[:k] -= np.outer(lu[:k, k], x[k])
    return x


def solve(a, rhs, tol=DEFAULT_TOL):
    """Solve ``a @ x = rhs`` for a square ``a`` and a matrix (or vector) ``rhs``."""
    lu, perm = lu_factor(a, tol)
    rhs = np.asarray(rhs, dtype=np.complex128)
    vector = rhs.ndim == 1
    if vector:
        rhs = rhs[:, None]
    rhs = as_matrix(rhs, "rhs")
    if rhs.shape[0] != lu.shape[0]:
        raise DimensionError(f"rhs has {rhs.shape[0]} rows, expected {lu.shape[0]}")
    x = lu_solve(lu, perm, rhs)
    return x[:, 0] if vector else x


def inverse(a, tol=DEFAULT_TOL):
    a = check_square(a)
    return solve(a, np.eye(a.shape[0], dtype=np.complex128), tol)


def cond_estimate(a, tol=DEFAULT_TOL):
    """Frobenius condition estimate ``||a||_F * ||a^-1||_F``; ``inf`` if singular."""
    try:
        inv = inverse(a, tol)
    except SingularMatrixError:
        return float("inf")
    return frobenius_norm(a) * frobenius_norm(inv)


def unitarity_defect(a):
    """``||a^H a - I||_F``."""
    a = np.asarray(a)
    return frobenius_norm(a.conj().T @ a - np.eye(a.shape[1]))


def commutator_norm(a, b):
    return frobenius_norm(a @ b - b @ a)


def mgs_orthonormalize(cols, drop_tol):
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Returns the orthonormal columns and the smallest post-projection norm
    relative to the original column norm, so callers can judge rank.
    """
    q = np.array(cols, dtype=np.complex128, copy=True)
    worst = np.inf
    for j in range(q.shape[1]):
        v = q[:, j]
        norm0 = np.linalg.norm(v)
        for _ in range(2):
            for i in range(j):
                v -= (q[:, i].conj() @ v) * q[:, i]
        norm = np.linalg.norm(v)
        ratio = norm / norm0 if norm0 > 0 else 0.0
        worst = min(worst, ratio)
        if ratio <= drop_tol:
            return q, worst
        q[:, j] = v / norm
    return q, worst
