"""Eigendecomposition of general complex matrices.

The pipeline is the textbook one: Householder reduction to upper
Hessenberg form, complex QR iteration with Wilkinson shifts and
deflation, then eigenvectors by back-substitution on the triangular Schur
factor.  Everything runs in complex arithmetic so real matrices with
complex spectra need no special handling.
"""

from dataclasses import dataclass, replace
from functools import cmp_to_key

import numpy as np

from .exceptions import NonConvergence, NotDiagonalizable, RankDeficientCluster
from .linalg import (
    DEFAULT_TOL,
    EPS,
    cond_estimate,
    frobenius_norm,
    mgs_orthonormalize,
    unitarity_defect,
)
from .validation import check_square

SWEEPS_PER_ORDER = 30
EXCEPTIONAL_SHIFT_EVERY = 10


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvector matrix ``s`` and eigenvalues with diagnostics.

    Columns of ``s`` have unit 2-norm and their largest-magnitude entry is
    real and positive.  ``residual`` is ``||A S - S D||_F / ||A||_F``.
    """

    s: np.ndarray
    eigenvalues: np.ndarray
    residual: float
    cond_estimate: float
    is_unitary: bool

    @property
    def d(self):
        return np.diag(self.eigenvalues)


def hessenberg(a):
    """Reduce ``a`` to upper Hessenberg form ``h = q^H a q``."""
    h = check_square(a).copy()
    n = h.shape[0]
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = h[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        h[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h, q


def _givens(x, y):
    """Unitary 2x2 ``g`` with ``g @ [x, y] = [r, 0]``."""
    r = np.hypot(abs(x), abs(y))
    if r == 0.0:
        return np.eye(2, dtype=np.complex128)
    c, s = x / r, y / r
    return np.array([[c.conjugate(), s.conjugate()], [-s, c]])


def _wilkinson_shift(a, b, c, d):
    """Eigenvalue of ``[[a, b], [c, d]]`` closest to ``d``."""
    tr_half = 0.5 * (a + d)
    disc = np.sqrt(0.25 * (a - d) ** 2 + b * c)
    mu1, mu2 = tr_half + disc, tr_half - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def schur(a, tol=DEFAULT_TOL):
    """Complex Schur form ``a = z t z^H`` by shifted QR on the Hessenberg form.

    Raises :class:`NonConvergence` after ``30 * n`` QR sweeps.
    """
    t, z = hessenberg(a)
    n = t.shape[0]
    floor = EPS * max(frobenius_norm(t), np.finfo(float).tiny)
    budget = SWEEPS_PER_ORDER * max(n, 1)
    sweeps = 0
    stall = 0
    hi = n - 1
    while hi > 0:
        # Locate the start of the trailing unreduced block.
        lo = hi
        while lo > 0:
            sub = abs(t[lo, lo - 1])
            if sub <= EPS * (abs(t[lo, lo]) + abs(t[lo - 1, lo - 1])) or sub <= floor:
                t[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            stall = 0
            continue
        if sweeps >= budget:
            raise NonConvergence(f"QR iteration did not converge within {budget} sweeps (n={n})")
        sweeps += 1
        stall += 1
        if stall % EXCEPTIONAL_SHIFT_EVERY == 0:
            mu = t[hi, hi] + 0.75 * abs(t[hi, hi - 1]) * (1 + 1j)
        else:
            mu = _wilkinson_shift(t[hi - 1, hi - 1], t[hi - 1, hi], t[hi, hi - 1], t[hi, hi])
        idx = np.arange(lo, hi + 1)
        t[idx, idx] -= mu
        rotations = []
        for k in range(lo, hi):
            g = _givens(t[k, k], t[k + 1, k])
            t[k:k + 2, k:] = g @ t[k:k + 2, k:]
            t[k + 1, k] = 0.0
            rotations.append(g)
        for k, g in zip(range(lo, hi), rotations):
            top = min(k + 2, hi) + 1
            t[:top, k:k + 2] = t[:top, k:k + 2] @ g.conj().T
            z[:, k:k + 2] = z[:, k:k + 2] @ g.conj().T
        t[idx, idx] += mu
    return np.triu(t), z


def eigenvalues(a, tol=DEFAULT_TOL):
    """Eigenvalues only, in canonical order."""
    t, _ = schur(a, tol)
    vals = np.diag(t).copy()
    return vals[canonical_order(vals, tol)]


def spectral_scale(values):
    values = np.asarray(values)
    return float(np.max(np.abs(values))) if values.size else 0.0


def canonical_order(values, tol=DEFAULT_TOL):
    """Indices sorting ``values`` by descending real part, then descending imaginary part.

    Parts closer than ``cluster_tol * scale + atol`` compare equal, so the
    order does not flip on rounding noise; ties keep input order.
    """
    values = np.asarray(values, dtype=np.complex128)
    gap = tol.cluster_tol * spectral_scale(values) + tol.atol

    def compare(i, j):
        for part in (np.real, np.imag):
            diff = part(values[i]) - part(values[j])
            if abs(diff) > gap:
                return -1 if diff > 0 else 1
        return 0

    return np.array(sorted(range(len(values)), key=cmp_to_key(compare)), dtype=int)


def canonicalize_phase(s):
    """Scale columns to unit norm with the largest entry real and positive.

    Ties for the largest magnitude go to the lowest row index.
    """
    s = np.array(s, dtype=np.complex128, copy=True)
    for j in range(s.shape[1]):
        col = s[:, j]
        norm = np.linalg.norm(col)
        if norm == 0.0:
            continue
        col /= norm
        mags = np.abs(col)
        lead = int(np.flatnonzero(mags >= mags.max() * (1 - 1e3 * EPS))[0])
        col *= abs(col[lead]) / col[lead]
        s[:, j] = col
    return s


def _triangular_eigenvectors(t, tie):
    """Eigenvectors of upper-triangular ``t``.

    Diagonal entries within ``tie`` of each other are treated as one
    repeated eigenvalue: the coupling between them is left at zero, which
    is exact for a semisimple eigenvalue and keeps the basis of a repeated
    eigenspace well conditioned.
    """
    n = t.shape[0]
    x = np.zeros((n, n), dtype=np.complex128)
    diag = np.diag(t)
    for k in range(n):
        lam = diag[k]
        x[k, k] = 1.0
        for j in range(k - 1, -1, -1):
            den = diag[j] - lam
            if abs(den) <= tie:
                continue
            x[j, k] = -(t[j, j + 1:k + 1] @ x[j + 1:k + 1, k]) / den
    return x


def eigendecompose(a, tol=DEFAULT_TOL):
    """Full eigendecomposition ``a = s diag(eigenvalues) s^-1``.

    Parameters
    ----------
    a : array_like, shape (n, n)
    tol : ToleranceConfig

    Returns
    -------
    EigenDecomposition
        Eigenvalues in canonical order (descending real part, then
        descending imaginary part).

    Raises
    ------
    NotDiagonalizable
        If the eigenvector matrix is too ill conditioned or the
        reconstruction residual exceeds ``rtol``.
    NonConvergence
        If the QR iteration exhausts its sweep budget.
    """
    a = check_square(a, "a")
    t, z = schur(a, tol)
    vals = np.diag(t).copy()
    norm_a = frobenius_norm(a)
    tie = tol.cluster_tol * spectral_scale(vals) + EPS * norm_a
    s = z @ _triangular_eigenvectors(t, tie)
    order = canonical_order(vals, tol)
    vals = vals[order]
    s = canonicalize_phase(s[:, order])
    return _finish(a, s, vals, tol)


def _finish(a, s, vals, tol):
    norm_a = frobenius_norm(a)
    residual = frobenius_norm(a @ s - s * vals) / norm_a if norm_a > 0 else 0.0
    cond = cond_estimate(s, tol)
    if cond > tol.cond_max:
        raise NotDiagonalizable(
            f"eigenvector matrix condition estimate {cond:.3e} exceeds cond_max {tol.cond_max:.1e}"
        )
    if residual > tol.rtol:
        raise NotDiagonalizable(f"eigenvector residual {residual:.3e} exceeds rtol {tol.rtol:.1e}")
    n = s.shape[0]
    return EigenDecomposition(
        s=s,
        eigenvalues=vals,
        residual=residual,
        cond_estimate=cond,
        is_unitary=bool(unitarity_defect(s) <= tol.rtol * n),
    )


def is_normal(a, tol=DEFAULT_TOL):
    a = check_square(a)
    ah = a.conj().T
    return bool(frobenius_norm(a @ ah - ah @ a) <= tol.rtol * frobenius_norm(a) ** 2)


def orthonormalize_within_eigenspaces(decomp, partition, tol=DEFAULT_TOL):
    """Make ``decomp.s`` unitary by Gram-Schmidt inside each eigenvalue cluster.

    Only meaningful for normal matrices, whose eigenspaces for distinct
    eigenvalues are already mutually orthogonal.  Each cluster's span is
    preserved.
    """
    s = decomp.s.copy()
    for cluster in partition.clusters:
        idx = list(cluster.indices)
        q, worst = mgs_orthonormalize(s[:, idx], tol.rtol)
        if worst <= tol.rtol:
            raise RankDeficientCluster(
                f"cluster at {cluster.representative:.6g} has linearly dependent eigenvectors"
            )
        s[:, idx] = q
    s = canonicalize_phase(s)
    n = s.shape[0]
    return replace(
        decomp,
        s=s,
        cond_estimate=cond_estimate(s, tol),
        is_unitary=bool(unitarity_defect(s) <= tol.rtol * n),
    )
