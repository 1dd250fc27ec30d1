"""scikit-learn compatible wrapper for batch coefficient screening.

Rows of ``X`` are coefficient vectors ``a_2 .. a_N`` (complex allowed; pad
shorter functions with zeros).  There is nothing to learn, so ``fit`` only
validates the input and records the criteria that apply.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .criteria import SLACK, KParam, OrderParam, RParam, registry


def _check_coefficients(X) -> np.ndarray:
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected a 2D array of coefficients, got shape {X.shape}")
    if not np.issubdtype(X.dtype, np.number):
        raise ValueError("coefficients must be numeric")
    X = X.astype(complex)
    if not np.all(np.isfinite(X)):
        raise ValueError("coefficients must be finite")
    return X


class CriterionScreen(TransformerMixin, BaseEstimator):
    """Evaluate every coefficient criterion on a batch of functions.

    ``transform`` returns the ratio ``sum / bound`` per criterion (column
    order in ``criteria_``); a ratio <= 1 means the criterion implies its
    class.  ``predict`` returns the boolean implied matrix.

    Parameters
    ----------
    alpha : float or None
        Order for the starlike/convex/parabolic rows.
    k : float or None
        Parameter of the k-UCV row.
    r_alpha, beta : float or None
        Parameters of the R(alpha, beta) rows; both needed to include them.
    """

    def __init__(self, alpha: Optional[float] = 0.0, k: Optional[float] = None,
                 r_alpha: Optional[float] = None, beta: Optional[float] = None):
        self.alpha = alpha
        self.k = k
        self.r_alpha = r_alpha
        self.beta = beta

    def _params(self):
        out = []
        if self.alpha is not None:
            out.append(OrderParam(self.alpha))
        if self.k is not None:
            out.append(KParam(self.k))
        if self.beta is not None:
            out.append(RParam(0.0 if self.r_alpha is None else self.r_alpha, self.beta))
        if not out:
            raise ValueError("at least one of alpha, k, beta must be set")
        return out

    def fit(self, X, y=None):
        X = _check_coefficients(X)
        self.diagnostics_: list[str] = []
        self.criteria_ = [spec for p in self._params() for spec in registry(p, self.diagnostics_)]
        self.n_features_in_ = X.shape[1]
        return self

    def _sums(self, X) -> np.ndarray:
        check_is_fitted(self, "criteria_")
        X = _check_coefficients(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} coefficients, expected {self.n_features_in_}")
        if not self.criteria_:
            return np.zeros((X.shape[0], 0))
        n = np.arange(2, X.shape[1] + 2, dtype=float)
        W = np.stack([spec.weight_at(n) for spec in self.criteria_], axis=1)
        return np.abs(X) @ W

    def transform(self, X) -> np.ndarray:
        sums = self._sums(X)
        return sums / np.array([spec.bound for spec in self.criteria_])

    def predict(self, X) -> np.ndarray:
        sums = self._sums(X)
        return sums <= np.array([spec.bound for spec in self.criteria_]) + SLACK

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "criteria_")
        return np.array([f"{spec.id}" for spec in self.criteria_], dtype=object)
