"""SVD of star-commuting pairs through a shared left-singular basis.

If ``AB = BA`` and ``A^H B = B A^H`` then the Gram matrices ``A A^H`` and
``B B^H`` commute, so one unitary ``U`` diagonalizes both and serves as
the left-singular matrix of ``A`` and of ``B``.  Right-singular vectors
follow from ``v_j = X^H u_j / sigma_j``; the columns belonging to zero
singular values are completed to an orthonormal basis.
"""

from dataclasses import dataclass

import numpy as np

from .eigen import canonical_order, eigendecompose, orthonormalize_within_eigenspaces
from .exceptions import (
    DimensionError,
    InputError,
    InternalDiagnostic,
    NotCommuting,
    NotDiagonalizable,
    NotStarCommuting,
    RankDeficientCluster,
)
from .linalg import DEFAULT_TOL, frobenius_norm, mgs_orthonormalize, unitarity_defect
from .simdiag import check_commute, cluster_eigenvalues, simultaneous_diagonalize
from .validation import as_matrix, check_pair, check_square


@dataclass(frozen=True)
class CommutingSvdResult:
    u: np.ndarray
    sigma_a: np.ndarray
    v_a: np.ndarray
    sigma_b: np.ndarray
    v_b: np.ndarray
    residual_a: float
    residual_b: float


@dataclass(frozen=True)
class SvdReport:
    """Residuals of a claimed SVD.

    ``reconstruction`` is relative to ``||x||_F``; the unitarity defects
    are absolute and judged against ``rtol * n``.
    """

    reconstruction: float
    u_unitarity: float
    v_unitarity: float
    rtol: float
    n: int

    @property
    def ok(self):
        bound = self.rtol * self.n
        return (
            self.reconstruction <= self.rtol
            and self.u_unitarity <= bound
            and self.v_unitarity <= bound
        )


def check_star_commute(a, b, tol=DEFAULT_TOL):
    """Return ``(star_commutes, residual)`` for ``A^H B = B A^H``."""
    a, b = check_pair(a, b)
    ah = a.conj().T
    residual = frobenius_norm(ah @ b - b @ ah) / (frobenius_norm(a) * frobenius_norm(b) + tol.atol)
    return residual <= tol.rtol, residual


def _reconstruction_residual(x, u, sigma, v):
    defect = frobenius_norm(x - (u * sigma) @ v.conj().T)
    norm_x = frobenius_norm(x)
    return defect / norm_x if norm_x > 0 else defect


def verify_svd(x, u, sigma, v, tol=DEFAULT_TOL):
    """Residuals of a claimed factorization ``x = u diag(sigma) v^H``."""
    x = check_square(x, "x")
    u = as_matrix(u, "u")
    v = as_matrix(v, "v")
    sigma = np.asarray(sigma, dtype=float).ravel()
    n = x.shape[0]
    if u.shape != x.shape or v.shape != x.shape or sigma.size != n:
        raise DimensionError(
            f"non-conformable factors: x {x.shape}, u {u.shape}, sigma {sigma.shape}, v {v.shape}"
        )
    return SvdReport(
        reconstruction=_reconstruction_residual(x, u, sigma, v),
        u_unitarity=unitarity_defect(u),
        v_unitarity=unitarity_defect(v),
        rtol=tol.rtol,
        n=n,
    )


def _complete_orthonormal(v, known):
    """Fill the columns of ``v`` not in ``known`` with an orthonormal completion.

    Identity columns are projected off the basis built so far and the one
    with the largest remainder (lowest index on ties) is appended, so the
    completion is deterministic and never picks a near-dependent vector.
    """
    n = v.shape[0]
    basis = np.array([v[:, j] for j in range(n) if known[j]], dtype=np.complex128).reshape(-1, n).T
    while basis.shape[1] < n:
        rest = np.eye(n, dtype=np.complex128)
        for _ in range(2):
            rest -= basis @ (basis.conj().T @ rest)
        norms = np.linalg.norm(rest, axis=0)
        j = int(np.argmax(norms))
        if norms[j] < 0.5 / np.sqrt(n):
            raise InternalDiagnostic("orthonormal completion of right-singular vectors failed")
        basis = np.column_stack([basis, rest[:, j] / norms[j]])
    out = v.copy()
    out[:, ~known] = basis[:, int(known.sum()):]
    return out


def _right_vectors(x, u, tol):
    """Singular values and right-singular vectors of ``x`` given its left basis ``u``."""
    w = x.conj().T @ u
    sigma = np.linalg.norm(w, axis=0)
    big = sigma > tol.rtol * sigma.max() if sigma.max() > 0 else np.zeros(sigma.size, bool)
    v = np.zeros_like(u)
    v[:, big] = w[:, big] / sigma[big]
    sigma = np.where(big, sigma, 0.0)
    return sigma, _complete_orthonormal(v, big)


def _check_gram_spectrum(diag, norm_sq, n, tol):
    vals = np.real(diag)
    floor = -n * tol.rtol * norm_sq
    if np.any(vals < floor) or np.any(np.abs(np.imag(diag)) > n * tol.rtol * max(norm_sq, 1.0)):
        raise InternalDiagnostic(f"Gram matrix has eigenvalues off the non-negative axis: {diag}")
    return np.clip(vals, 0.0, None)


def _joint_groups(result, tol):
    """Column indices sharing both a Gram-A and a Gram-B eigenvalue."""
    groups = []
    for cluster in result.partition.clusters:
        cols = [i for i in range(len(result.diag_a)) if result.diag_a[i] == cluster.representative]
        sub = cluster_eigenvalues(result.diag_b[cols], tol)
        groups.extend([cols[k] for k in c.indices] for c in sub.clusters)
    return groups


def svd_commuting_pair(a, b, tol=DEFAULT_TOL):
    """Singular value decompositions of ``a`` and ``b`` with a shared ``U``.

    Parameters
    ----------
    a, b : array_like, shape (n, n)
        Matrices with ``ab = ba`` and ``a^H b = b a^H``.
    tol : ToleranceConfig

    Returns
    -------
    CommutingSvdResult
        Singular values follow the column order of ``u``, which is the
        order produced by simultaneously diagonalizing ``a a^H`` and
        ``b b^H``; they are not sorted.  See :func:`sort_svd`.
    """
    a, b = check_pair(a, b)
    ok, residual = check_commute(a, b, tol)
    if not ok:
        raise NotCommuting(f"commutator residual {residual:.3e} exceeds rtol {tol.rtol:.1e}")
    ok, residual = check_star_commute(a, b, tol)
    if not ok:
        raise NotStarCommuting(f"star-commutator residual {residual:.3e} exceeds rtol {tol.rtol:.1e}")
    n = a.shape[0]
    gram_a = a @ a.conj().T
    gram_b = b @ b.conj().T
    try:
        joint = simultaneous_diagonalize(gram_a, gram_b, tol)
    except NotDiagonalizable as exc:
        raise InternalDiagnostic(f"Hermitian Gram matrices reported non-diagonalizable: {exc}") from None
    _check_gram_spectrum(joint.diag_a, frobenius_norm(a) ** 2, n, tol)
    _check_gram_spectrum(joint.diag_b, frobenius_norm(b) ** 2, n, tol)

    u = joint.s_common.copy()
    for cols in _joint_groups(joint, tol):
        q, worst = mgs_orthonormalize(u[:, cols], tol.rtol)
        if worst <= tol.rtol:
            raise RankDeficientCluster("shared eigenspace basis of the Gram matrices is rank deficient")
        u[:, cols] = q
    if unitarity_defect(u) > tol.rtol * n:
        raise InternalDiagnostic(f"shared left basis is not unitary: defect {unitarity_defect(u):.3e}")

    sigma_a, v_a = _right_vectors(a, u, tol)
    sigma_b, v_b = _right_vectors(b, u, tol)
    return CommutingSvdResult(
        u=u,
        sigma_a=sigma_a,
        v_a=v_a,
        sigma_b=sigma_b,
        v_b=v_b,
        residual_a=_reconstruction_residual(a, u, sigma_a, v_a),
        residual_b=_reconstruction_residual(b, u, sigma_b, v_b),
    )


def sort_svd(result, by="a"):
    """Reorder columns so ``sigma_<by>`` is descending; the other factorization follows."""
    if by not in ("a", "b"):
        raise InputError(f"sort key must be 'a' or 'b', got {by!r}")
    key = result.sigma_a if by == "a" else result.sigma_b
    order = np.argsort(-key, kind="stable")
    return CommutingSvdResult(
        u=result.u[:, order],
        sigma_a=result.sigma_a[order],
        v_a=result.v_a[:, order],
        sigma_b=result.sigma_b[order],
        v_b=result.v_b[:, order],
        residual_a=result.residual_a,
        residual_b=result.residual_b,
    )


def singular_values(x, tol=DEFAULT_TOL):
    """Singular values of a square matrix through its Gram matrix, descending.

    Each value is taken as ``||x^H u_j||`` for an orthonormal eigenvector
    ``u_j`` of ``x x^H``, which stays accurate near zero where the square
    root of a Gram eigenvalue would not.
    """
    x = check_square(x, "x")
    decomp = eigendecompose(x @ x.conj().T, tol)
    partition = cluster_eigenvalues(decomp.eigenvalues, tol)
    decomp = orthonormalize_within_eigenspaces(decomp, partition, tol)
    sigma = np.linalg.norm(x.conj().T @ decomp.s, axis=0)
    return sigma[canonical_order(sigma, tol)]
