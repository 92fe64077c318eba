"""Permutation matrices, permutation conjugation and spectrum invariance checks.

A permutation is stored in one-line notation under the column convention:
``image[i]`` is the row holding the 1 in column ``i`` of ``P``, so
``P @ e_i == e_{image[i]}``.
"""

from dataclasses import dataclass

import numpy as np

from .eigen import eigenvalues
from .exceptions import DimensionError, InvalidPermutation
from .linalg import DEFAULT_TOL
from .svd import singular_values
from .validation import as_matrix, check_pair, check_square


@dataclass(frozen=True)
class PermutationSpec:
    image: tuple

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        if sorted(image) != list(range(len(image))):
            raise InvalidPermutation(f"not a bijection on 0..{len(image) - 1}: {self.image}")
        object.__setattr__(self, "image", image)

    def __len__(self):
        return len(self.image)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_matrix(cls, p):
        p = as_matrix(p, "permutation matrix")
        n = p.shape[0]
        if p.shape != (n, n) or not np.all((p == 0) | (p == 1)):
            raise InvalidPermutation("expected a square 0/1 matrix")
        if not (np.all(p.sum(axis=0) == 1) and np.all(p.sum(axis=1) == 1)):
            raise InvalidPermutation("expected exactly one 1 in every row and column")
        return cls(tuple(int(np.flatnonzero(p[:, i])[0]) for i in range(n)))

    def inverse(self):
        inv = [0] * len(self.image)
        for i, r in enumerate(self.image):
            inv[r] = i
        return PermutationSpec(tuple(inv))


def as_permutation(p):
    """Coerce a :class:`PermutationSpec`, a 0/1 matrix or a one-line sequence."""
    if isinstance(p, PermutationSpec):
        return p
    arr = np.asarray(p)
    if arr.ndim == 2:
        return PermutationSpec.from_matrix(arr)
    if arr.ndim == 1:
        return PermutationSpec(tuple(arr.tolist()))
    raise InvalidPermutation(f"cannot read a permutation from an array of shape {arr.shape}")


def to_matrix(p):
    p = as_permutation(p)
    n = len(p)
    m = np.zeros((n, n))
    m[list(p.image), np.arange(n)] = 1.0
    return m


def _check_order(a, p, name):
    if len(p) != a.shape[0]:
        raise DimensionError(f"{name} has order {len(p)}, matrix has {a.shape[0]} rows")


def conjugate(a, p):
    """``P a P^T``, computed by index shuffling so it is exact."""
    a = check_square(a, "a")
    p = as_permutation(p)
    _check_order(a, p, "permutation")
    out = np.empty_like(a)
    img = np.array(p.image)
    out[np.ix_(img, img)] = a
    return out


def general_permute(a, p, q):
    """``P a Q`` for independent row and column permutations."""
    a = as_matrix(a, "a")
    p, q = as_permutation(p), as_permutation(q)
    _check_order(a, p, "p")
    if len(q) != a.shape[1]:
        raise DimensionError(f"q has order {len(q)}, matrix has {a.shape[1]} columns")
    out = np.empty_like(a)
    out[np.array(p.image), :] = a
    return out[:, np.array(q.image)]


@dataclass(frozen=True)
class InvarianceReport:
    eigen_multiset_match: bool
    singular_multiset_match: bool
    max_pairing_gap: float
    eigen_gap: float
    singular_gap: float


def pairing_gap(x, y):
    """Largest distance when each value of ``x`` greedily takes its nearest unused value of ``y``.

    ``x`` is visited in sorted order (real part, then imaginary part).
    """
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.size != y.size:
        return float("inf")
    free = np.ones(y.size, dtype=bool)
    gap = 0.0
    for v in x[np.lexsort((x.imag, x.real))]:
        dist = np.where(free, np.abs(y - v), np.inf)
        j = int(np.argmin(dist))
        free[j] = False
        gap = max(gap, float(dist[j]))
    return gap


def invariance_report(a, a_hat, tol=DEFAULT_TOL):
    """Compare the eigenvalue and singular value multisets of two matrices."""
    a, a_hat = check_pair(a, a_hat, ("a", "a_hat"))
    eig_a, eig_h = eigenvalues(a, tol), eigenvalues(a_hat, tol)
    sv_a, sv_h = singular_values(a, tol), singular_values(a_hat, tol)
    eig_gap = pairing_gap(eig_a, eig_h)
    sv_gap = pairing_gap(sv_a, sv_h)
    scale = max(np.abs(np.concatenate([eig_a, eig_h, sv_a, sv_h])).max(), 1.0)
    limit = tol.cluster_tol * scale
    return InvarianceReport(
        eigen_multiset_match=eig_gap <= limit,
        singular_multiset_match=sv_gap <= limit,
        max_pairing_gap=max(eig_gap, sv_gap),
        eigen_gap=eig_gap,
        singular_gap=sv_gap,
    )
