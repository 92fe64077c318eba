"""scikit-learn style wrappers.

The estimators take the matrix pair in ``fit(A, B)`` (``B`` in the slot
scikit-learn reserves for ``y``), expose hyperparameters through
``get_params``/``set_params`` and store fitted quantities in trailing
underscore attributes, so they clone, pickle and sit in pipelines like any
other estimator.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .linalg import ToleranceConfig, solve
from .permutation import PermutationSpec, conjugate
from .simdiag import simultaneous_diagonalize
from .svd import sort_svd, svd_commuting_pair
from .validation import check_pair, check_square


class _TolerancesMixin:
    def _tol(self):
        return ToleranceConfig(
            rtol=self.rtol, atol=self.atol, cluster_tol=self.cluster_tol, cond_max=self.cond_max
        )


class SimultaneousDiagonalizer(_TolerancesMixin, TransformerMixin, BaseEstimator):
    """Common eigenbasis of two commuting matrices.

    Parameters
    ----------
    rtol, atol, cluster_tol, cond_max : float
        See :class:`commdiag.ToleranceConfig`.
    force_full : bool, default=False
        Always run the block construction, even for simple spectra.

    Attributes
    ----------
    eigenvectors_ : ndarray of shape (n, n)
        Common eigenvector matrix ``S``.
    eigenvalues_a_, eigenvalues_b_ : ndarray of shape (n,)
        Diagonals of ``S^-1 A S`` and ``S^-1 B S``.
    residual_a_, residual_b_ : float
    result_ : SimDiagResult

    Examples
    --------
    >>> import numpy as np
    >>> a = np.diag([1.0, 1.0, 2.0]); b = np.diag([3.0, 4.0, 5.0])
    >>> sd = SimultaneousDiagonalizer().fit(a, b)
    >>> np.allclose(sd.transform(b), np.diag(sd.eigenvalues_b_))
    True
    """

    def __init__(self, rtol=1e-10, atol=1e-12, cluster_tol=1e-8, cond_max=1e8, force_full=False):
        self.rtol = rtol
        self.atol = atol
        self.cluster_tol = cluster_tol
        self.cond_max = cond_max
        self.force_full = force_full

    def fit(self, X, y):
        a, b = check_pair(X, y, ("X", "y"))
        result = simultaneous_diagonalize(a, b, self._tol(), force_full=self.force_full)
        self.result_ = result
        self.eigenvectors_ = result.s_common
        self.eigenvalues_a_ = result.diag_a
        self.eigenvalues_b_ = result.diag_b
        self.residual_a_ = result.residual_a
        self.residual_b_ = result.residual_b
        self.n_features_in_ = a.shape[0]
        return self

    def transform(self, X):
        """``S^-1 X S``; diagonal for every matrix sharing the fitted eigenbasis."""
        check_is_fitted(self)
        x = check_square(X, "X")
        s = self.eigenvectors_
        return solve(s, x @ s, self._tol())

    def inverse_transform(self, X):
        """``S X S^-1``; a 1-D ``X`` is read as a diagonal."""
        check_is_fitted(self)
        x = np.asarray(X, dtype=np.complex128)
        if x.ndim == 1:
            x = np.diag(x)
        s = self.eigenvectors_
        return solve(s.T, (s @ x).T, self._tol()).T


class CommutingSVD(_TolerancesMixin, BaseEstimator):
    """Singular value decompositions of a star-commuting pair with a shared ``U``.

    Parameters
    ----------
    sort : {None, "a", "b"}, default=None
        Reorder columns by descending singular values of that matrix.
    """

    def __init__(self, rtol=1e-10, atol=1e-12, cluster_tol=1e-8, cond_max=1e8, sort=None):
        self.rtol = rtol
        self.atol = atol
        self.cluster_tol = cluster_tol
        self.cond_max = cond_max
        self.sort = sort

    def fit(self, X, y):
        a, b = check_pair(X, y, ("X", "y"))
        result = svd_commuting_pair(a, b, self._tol())
        if self.sort is not None:
            result = sort_svd(result, by=self.sort)
        self.result_ = result
        self.u_ = result.u
        self.sigma_a_, self.v_a_ = result.sigma_a, result.v_a
        self.sigma_b_, self.v_b_ = result.sigma_b, result.v_b
        self.n_features_in_ = a.shape[0]
        return self


class PermutationConjugator(TransformerMixin, BaseEstimator):
    """``X -> P X P^T`` for a fixed permutation in one-line notation.

    Stateless: ``fit`` only checks that the permutation is valid.
    """

    def __init__(self, image=None):
        self.image = image

    def fit(self, X=None, y=None):
        self.permutation_ = PermutationSpec(tuple(self.image))
        return self

    def transform(self, X):
        check_is_fitted(self)
        return conjugate(X, self.permutation_)

    def inverse_transform(self, X):
        check_is_fitted(self)
        return conjugate(X, self.permutation_.inverse())
