"""Simultaneous diagonalization and SVD of commuting matrices."""

__version__ = "0.1.0"

from .eigen import (
    EigenDecomposition,
    eigendecompose,
    eigenvalues,
    is_normal,
    orthonormalize_within_eigenspaces,
)
from .estimators import CommutingSVD, PermutationConjugator, SimultaneousDiagonalizer
from .exceptions import *  # noqa: F401,F403
from .generator import (
    PairSpec,
    generate_commuting_pair,
    generate_normal_pair,
    generate_star_commuting_pair,
)
from .linalg import (
    ToleranceConfig,
    conj_transpose,
    frobenius_norm,
    inverse,
    matmul,
    solve,
)
from .matfile import load_fixture, parse_matrix, read_matrix, render_matrix, write_matrix
from .permutation import (
    PermutationSpec,
    as_permutation,
    conjugate,
    general_permute,
    invariance_report,
    to_matrix,
)
from .simdiag import (
    SimDiagResult,
    SpectralPartition,
    check_commute,
    cluster_eigenvalues,
    column_correspondence,
    restriction_blocks,
    simultaneous_diagonalize,
)
from .svd import (
    CommutingSvdResult,
    check_star_commute,
    singular_values,
    sort_svd,
    svd_commuting_pair,
    verify_svd,
)
