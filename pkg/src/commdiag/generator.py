"""Seeded random instances: commuting, star-commuting and normal pairs.

Random numbers come from numpy's PCG64 bit generator seeded directly with
the PairSpec seed (``numpy.random.Generator(numpy.random.PCG64(seed))``), so a
seed reproduces the same matrices on any platform numpy supports.  The
identifier :data:`RNG_ALGORITHM` is written into serialized fixtures.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidSpec
from .linalg import inverse

RNG_ALGORITHM = "numpy.random.PCG64"
RADIUS = 10.0
MIN_GAP_CAP = 0.5
MAX_DRAWS = 100_000

EIGENVALUE_MODES = ("complex", "real", "nonneg")
BASIS_MODES = ("unitary", "general")


@dataclass(frozen=True)
class PairSpec:
    """Recipe for a random pair.

    ``multiplicities_a`` fixes the repeated-eigenvalue structure of ``a``;
    ``b`` gets distinct eigenvalues unless ``zero_eigenvalues`` is set, in
    which case ``a``'s first cluster is moved to 0 and ``b`` vanishes on
    ``a``'s last cluster, making both singular.
    """

    n: int
    multiplicities_a: tuple = None
    eigenvalue_mode: str = "complex"
    basis_mode: str = "unitary"
    cond_target: float = 1.0
    seed: int = 0
    zero_eigenvalues: bool = False

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidSpec(f"n must be a positive integer, got {self.n!r}")
        mults = self.multiplicities_a
        mults = (1,) * self.n if mults is None else tuple(int(m) for m in mults)
        if any(m < 1 for m in mults) or sum(mults) != self.n:
            raise InvalidSpec(f"multiplicities {mults} must be positive and sum to n={self.n}")
        object.__setattr__(self, "multiplicities_a", mults)
        if self.eigenvalue_mode not in EIGENVALUE_MODES:
            raise InvalidSpec(f"eigenvalue_mode must be one of {EIGENVALUE_MODES}")
        if self.basis_mode not in BASIS_MODES:
            raise InvalidSpec(f"basis_mode must be one of {BASIS_MODES}")
        if not self.cond_target >= 1:
            raise InvalidSpec(f"cond_target must be >= 1, got {self.cond_target!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidSpec(f"seed must fit in 64 unsigned bits, got {self.seed!r}")

    def as_dict(self):
        return {
            "n": int(self.n),
            "multiplicities_a": list(self.multiplicities_a),
            "eigenvalue_mode": self.eigenvalue_mode,
            "basis_mode": self.basis_mode,
            "cond_target": float(self.cond_target),
            "seed": int(self.seed),
            "zero_eigenvalues": bool(self.zero_eigenvalues),
        }


def _rng(spec):
    return np.random.Generator(np.random.PCG64(int(spec.seed)))


def _draw(rng, mode):
    if mode == "complex":
        # uniform on the disk: radius by inverse CDF, then one angle
        r = RADIUS * np.sqrt(rng.random())
        theta = 2 * np.pi * rng.random()
        return complex(r * np.cos(theta), r * np.sin(theta))
    if mode == "real":
        return complex(rng.uniform(-RADIUS, RADIUS))
    return complex(rng.uniform(0.0, RADIUS))


def _sample_separated(rng, count, mode, taken=(), by_modulus=False):
    """``count`` values at least a fixed gap from each other and from ``taken``.

    The gap is ``min(0.5, 10 / (4 * total))``, far above the clustering
    radius, so the intended multiplicities are unambiguous.  With
    ``by_modulus`` the moduli are separated as well (Gram matrices see only
    ``|lambda|``).
    """
    total = count + len(taken)
    gap = min(MIN_GAP_CAP, RADIUS / (4 * max(total, 1)))
    chosen = list(taken)
    out = []
    for _ in range(MAX_DRAWS):
        if len(out) == count:
            return out
        z = _draw(rng, mode)
        near = any(abs(z - w) < gap for w in chosen)
        if by_modulus:
            near = near or abs(z) < gap or any(abs(abs(z) - abs(w)) < gap for w in chosen)
        if not near:
            chosen.append(z)
            out.append(z)
    raise InvalidSpec(f"could not place {count} separated eigenvalues after {MAX_DRAWS} draws")


def random_unitary(rng, n, real=False):
    """Haar-distributed unitary (or orthogonal) matrix via QR with phase correction."""
    g = rng.standard_normal((n, n))
    if not real:
        g = g + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _basis(rng, spec):
    u = random_unitary(rng, spec.n)
    if spec.basis_mode == "unitary":
        return u, u.conj().T
    w = random_unitary(rng, spec.n)
    sv = np.geomspace(1.0, spec.cond_target, spec.n)
    s = (u * sv) @ w.conj().T
    return s, inverse(s)


def _diagonals(rng, spec, by_modulus=False, mode_a=None):
    mults = spec.multiplicities_a
    mode_a = mode_a or spec.eigenvalue_mode
    taken = [0j] if spec.zero_eigenvalues else []
    values = _sample_separated(rng, len(mults), mode_a, taken, by_modulus)
    if spec.zero_eigenvalues:
        values[0] = 0j
    d_a = np.repeat(np.array(values), mults)
    d_b = np.array(_sample_separated(rng, spec.n, spec.eigenvalue_mode, (), by_modulus))
    if spec.zero_eigenvalues:
        d_b[spec.n - mults[-1]:] = 0.0
    return d_a, d_b


def generate_commuting_pair(spec):
    """``a = S D_A S^-1`` and ``b = S D_B S^-1`` sharing a random basis ``S``."""
    rng = _rng(spec)
    s, s_inv = _basis(rng, spec)
    d_a, d_b = _diagonals(rng, spec)
    return (s * d_a) @ s_inv, (s * d_b) @ s_inv


def generate_star_commuting_pair(spec):
    """Real symmetric ``a`` and a ``b`` sharing its orthogonal eigenbasis.

    ``a`` has real eigenvalues (non-negative in ``nonneg`` mode); ``b``'s
    eigenvalues follow ``eigenvalue_mode``.  Both ``ab = ba`` and
    ``a^H b = b a^H`` hold.
    """
    if spec.basis_mode != "unitary":
        raise InvalidSpec("star-commuting pairs need an orthogonal basis (basis_mode='unitary')")
    rng = _rng(spec)
    q = random_unitary(rng, spec.n, real=True)
    mode_a = "nonneg" if spec.eigenvalue_mode == "nonneg" else "real"
    d_a, d_b = _diagonals(rng, spec, by_modulus=True, mode_a=mode_a)
    a = (q * d_a.real) @ q.T
    a = 0.5 * (a + a.T)
    return a.astype(np.complex128), (q * d_b) @ q.T


def generate_normal_pair(spec):
    """Commuting normal matrices: a unitary basis with arbitrary diagonals."""
    if spec.basis_mode != "unitary":
        raise InvalidSpec("normal pairs need basis_mode='unitary'")
    return generate_commuting_pair(spec)


def generate_noncommuting_pair(seed, n=3):
    """Two random dense matrices; they commute with probability zero."""
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a, b
