"""Common eigenvectors of two commuting diagonalizable matrices.

Given ``A = S_A D_A S_A^-1`` with repeated eigenvalues grouped into
clusters, ``T = S_A^-1 B S_A`` is block diagonal with one block per
cluster.  Diagonalizing each block ``T_i = S_Ti D_Ti S_Ti^-1`` and setting
``S_T = blockdiag(S_Ti)`` gives ``S = S_A S_T``, which diagonalizes both
``A`` and ``B``.  When every eigenvalue of ``A`` is simple the blocks are
1x1 and ``S_A`` already works.
"""

from dataclasses import dataclass

import numpy as np

from .eigen import (
    canonical_order,
    canonicalize_phase,
    eigendecompose,
    is_normal,
    orthonormalize_within_eigenspaces,
    spectral_scale,
)
from .exceptions import (
    AmbiguousClustering,
    BlockLeakage,
    DimensionError,
    NoCorrespondence,
    NotCommuting,
    NotDiagonalizable,
    SingularMatrixError,
)
from .linalg import DEFAULT_TOL, frobenius_norm, inverse, solve
from .validation import check_pair, check_square


@dataclass(frozen=True)
class Cluster:
    representative: complex
    indices: tuple

    @property
    def size(self):
        return len(self.indices)


@dataclass(frozen=True)
class SpectralPartition:
    clusters: tuple

    @property
    def k(self):
        return len(self.clusters)

    @property
    def sizes(self):
        return [c.size for c in self.clusters]

    def labels(self, n):
        """Cluster number of each eigenvalue index."""
        out = np.empty(n, dtype=int)
        for c_id, c in enumerate(self.clusters):
            out[list(c.indices)] = c_id
        return out


@dataclass(frozen=True)
class RestrictionBlocks:
    t_full: np.ndarray
    blocks: tuple
    off_block_residual: float


@dataclass(frozen=True)
class SimDiagResult:
    """Outcome of :func:`simultaneous_diagonalize`.

    ``s_common`` has unit-norm, phase-canonical columns.  ``restriction``
    and ``partition`` record the intermediate block structure so the
    construction can be inspected.
    """

    s_common: np.ndarray
    diag_a: np.ndarray
    diag_b: np.ndarray
    residual_a: float
    residual_b: float
    used_shortcut: bool
    partition: SpectralPartition
    restriction: RestrictionBlocks = None

    @property
    def d_a(self):
        return np.diag(self.diag_a)

    @property
    def d_b(self):
        return np.diag(self.diag_b)


def _normalized_commutator(a, b, tol):
    return frobenius_norm(a @ b - b @ a) / (frobenius_norm(a) * frobenius_norm(b) + tol.atol)


def check_commute(a, b, tol=DEFAULT_TOL):
    """Return ``(commutes, residual)`` with residual ``||ab - ba|| / (||a|| ||b|| + atol)``."""
    a, b = check_pair(a, b)
    residual = _normalized_commutator(a, b, tol)
    return residual <= tol.rtol, residual


def _cluster_radius(values, tol):
    return tol.cluster_tol * spectral_scale(values) + tol.atol


def cluster_eigenvalues(eigs, tol=DEFAULT_TOL):
    """Group eigenvalues by single linkage at radius ``cluster_tol * max|lambda| + atol``.

    Raises :class:`AmbiguousClustering` when chaining joins values more
    than ten radii apart.
    """
    eigs = np.asarray(eigs, dtype=np.complex128).ravel()
    n = eigs.size
    radius = _cluster_radius(eigs, tol)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    dist = np.abs(eigs[:, None] - eigs[None, :])
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] <= radius:
                parent[find(j)] = find(i)

    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    members = list(groups.values())
    for idx in members:
        if len(idx) > 1 and dist[np.ix_(idx, idx)].max() > 10 * radius:
            raise AmbiguousClustering(
                f"eigenvalues {eigs[idx]} chain together but span "
                f"{dist[np.ix_(idx, idx)].max():.3e} > 10 x radius {radius:.3e}"
            )
    reps = np.array([eigs[idx].mean() for idx in members])
    order = canonical_order(reps, tol)
    return SpectralPartition(
        tuple(Cluster(complex(reps[o]), tuple(members[o])) for o in order)
    )


def _block_mask(partition, n):
    labels = partition.labels(n)
    return labels[:, None] == labels[None, :]


def restriction_blocks(b, eig_a, partition, tol=DEFAULT_TOL):
    """Form ``T = S_A^-1 B S_A`` and cut it into per-cluster blocks.

    Raises :class:`BlockLeakage` when the part of ``T`` outside the
    cluster blocks exceeds ``rtol * ||B||_F``.
    """
    b = check_square(b, "b")
    s = eig_a.s
    if s.shape != b.shape:
        raise DimensionError(f"eigenvector matrix {s.shape} does not match b {b.shape}")
    t_full = solve(s, b @ s, tol)
    n = b.shape[0]
    mask = _block_mask(partition, n)
    off = frobenius_norm(np.where(mask, 0.0, t_full))
    bound = tol.rtol * frobenius_norm(b) + tol.atol
    if off > bound:
        raise BlockLeakage(
            f"restriction matrix leaks outside its diagonal blocks: {off:.3e} > {bound:.3e}"
        )
    blocks = tuple(t_full[np.ix_(c.indices, c.indices)] for c in partition.clusters)
    return RestrictionBlocks(t_full=t_full, blocks=blocks, off_block_residual=off)


def _is_diagonal(block, scale, tol):
    off = block - np.diag(np.diag(block))
    return frobenius_norm(off) <= tol.rtol * scale + tol.atol


def diagonalization_residual(x, s, diag, tol=DEFAULT_TOL):
    """``||S^-1 X S - diag||_F / ||X||_F`` (absolute when ``X`` is zero)."""
    defect = frobenius_norm(solve(s, x @ s, tol) - np.diag(diag))
    norm_x = frobenius_norm(x)
    return defect / norm_x if norm_x > 0 else defect


def simultaneous_diagonalize(a, b, tol=DEFAULT_TOL, force_full=False):
    """Find one matrix ``S`` with ``S^-1 A S`` and ``S^-1 B S`` both diagonal.

    Parameters
    ----------
    a, b : array_like, shape (n, n)
        Commuting diagonalizable matrices.
    tol : ToleranceConfig
    force_full : bool
        Run the block construction even when every eigenvalue of ``a`` is
        simple, and eigendecompose every block instead of accepting blocks
        that are already diagonal.

    Returns
    -------
    SimDiagResult
        Columns are grouped by the clusters of ``a`` in canonical order and,
        within a cluster, by canonical order of the matching ``b`` values.
    """
    a, b = check_pair(a, b)
    commutes, residual = check_commute(a, b, tol)
    if not commutes:
        raise NotCommuting(f"commutator residual {residual:.3e} exceeds rtol {tol.rtol:.1e}")
    n = a.shape[0]

    eig_a = eigendecompose(a, tol)
    partition = cluster_eigenvalues(eig_a.eigenvalues, tol)
    if is_normal(a, tol) and not eig_a.is_unitary:
        eig_a = orthonormalize_within_eigenspaces(eig_a, partition, tol)

    if partition.k == n and not force_full:
        s = eig_a.s
        diag_a = np.array([c.representative for c in partition.clusters])
        order = [c.indices[0] for c in partition.clusters]
        s = s[:, order]
        # Rayleigh quotients against the dual basis: no restriction matrix needed.
        diag_b = np.einsum("ij,ji->i", inverse(s, tol), b @ s)
        return _result(a, b, s, diag_a, diag_b, partition, None, True, tol)

    restriction = restriction_blocks(b, eig_a, partition, tol)
    scale = frobenius_norm(restriction.t_full)
    columns, diag_a, diag_b = [], [], []
    for cluster, block in zip(partition.clusters, restriction.blocks):
        if not force_full and _is_diagonal(block, scale, tol):
            s_block = np.eye(cluster.size, dtype=np.complex128)
            d_block = np.diag(block).copy()
            order = canonical_order(d_block, tol)
            s_block, d_block = s_block[:, order], d_block[order]
        else:
            try:
                eig_t = eigendecompose(block, tol)
            except NotDiagonalizable as exc:
                raise NotDiagonalizable(
                    f"restriction block for eigenvalue {cluster.representative:.6g}: {exc}"
                ) from None
            s_block, d_block = eig_t.s, eig_t.eigenvalues
        columns.append(eig_a.s[:, list(cluster.indices)] @ s_block)
        diag_a.extend([cluster.representative] * cluster.size)
        diag_b.extend(d_block)
    s = canonicalize_phase(np.hstack(columns))
    return _result(
        a, b, s, np.array(diag_a), np.array(diag_b), partition, restriction, False, tol
    )


def _result(a, b, s, diag_a, diag_b, partition, restriction, shortcut, tol):
    try:
        res_a = diagonalization_residual(a, s, diag_a, tol)
        res_b = diagonalization_residual(b, s, diag_b, tol)
    except SingularMatrixError as exc:
        raise NotDiagonalizable(f"common eigenvector matrix is singular: {exc}") from None
    if res_a > tol.rtol or res_b > tol.rtol:
        raise NotDiagonalizable(
            f"common eigenvector matrix fails to diagonalize: residuals {res_a:.3e}, {res_b:.3e}"
        )
    return SimDiagResult(
        s_common=s,
        diag_a=diag_a,
        diag_b=diag_b,
        residual_a=res_a,
        residual_b=res_b,
        used_shortcut=shortcut,
        partition=partition,
        restriction=restriction,
    )


@dataclass(frozen=True)
class ColumnCorrespondence:
    """``s2[:, j] == scales[j] * s1[:, perm[j]]`` for every column ``j``."""

    perm: np.ndarray
    scales: np.ndarray

    def permutation_matrix(self):
        """0/1 matrix ``P`` with ``s2 == s1 @ P @ diag(scales)``."""
        n = len(self.perm)
        p = np.zeros((n, n))
        p[self.perm, np.arange(n)] = 1.0
        return p


def column_correspondence(s1, s2, tol=DEFAULT_TOL):
    """Match each column of ``s2`` to the unique parallel column of ``s1``.

    Raises :class:`NoCorrespondence` when some column of ``s2`` is parallel
    to no unmatched column of ``s1``, or to more than one.  That outcome is
    legitimate when a shared eigenspace has dimension above one.
    """
    s1, s2 = check_pair(s1, s2, ("s1", "s2"))
    n = s1.shape[0]
    u1 = s1 / np.linalg.norm(s1, axis=0)
    u2 = s2 / np.linalg.norm(s2, axis=0)
    coeff = u1.conj().T @ u2
    # distance of each unit column of s2 from the line through each column of s1
    dist = np.empty((n, n))
    for j in range(n):
        dist[:, j] = np.linalg.norm(u2[:, j][:, None] - u1 * coeff[:, j], axis=0)
    parallel = dist <= tol.rtol
    perm = np.empty(n, dtype=int)
    scales = np.empty(n, dtype=np.complex128)
    used = np.zeros(n, dtype=bool)
    for j in range(n):
        hits = np.flatnonzero(parallel[:, j] & ~used)
        if hits.size != 1:
            raise NoCorrespondence(
                f"column {j} of s2 is parallel to {hits.size} unmatched columns of s1"
            )
        i = int(hits[0])
        used[i] = True
        perm[j] = i
        scales[j] = (s1[:, i].conj() @ s2[:, j]) / (s1[:, i].conj() @ s1[:, i])
    return ColumnCorrespondence(perm=perm, scales=scales)
