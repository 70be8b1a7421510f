"""Transformer wrapper: fit builds a Steiner ETF, transform applies it."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .designs import make_design
from .frame import assemble_etf, compute_params


def _as_2d(X, n_features: int, name: str) -> np.ndarray:
    if np.iscomplexobj(np.asarray(X)):
        X = np.atleast_2d(np.asarray(X, dtype=complex))
        if X.ndim != 2 or not np.all(np.isfinite(X)):
            raise ValueError(f"{name} must be a finite 2-D array")
    else:
        X = check_array(X, dtype=np.float64)
    if X.shape[1] != n_features:
        raise ValueError(f"{name} has {X.shape[1]} features, expected {n_features}")
    return X


class SteinerETF(TransformerMixin, BaseEstimator):
    """Sparse equiangular tight frame as a linear transformer.

    ``transform`` maps each M-dimensional sample x to its frame
    coefficients F* x (N of them); ``inverse_transform`` reconstructs with
    the canonical dual (M/N) F, so ``inverse_transform(transform(X)) == X``.

    Parameters
    ----------
    family : {"pair", "triple", "affine", "projective", "unital"}
    v : number of points (pair, triple)
    q, n : field order and dimension (affine, projective; unital uses q)
    prefer_real : use a real Hadamard matrix when one is available
    """

    def __init__(self, family="pair", v=None, q=None, n=None, prefer_real=True):
        self.family = family
        self.v = v
        self.q = q
        self.n = n
        self.prefer_real = prefer_real

    def fit(self, X=None, y=None):
        self.design_ = make_design(self.family, v=self.v, q=self.q, n=self.n)
        self.frame_ = assemble_etf(self.design_, prefer_real=self.prefer_real)
        self.params_ = compute_params(self.frame_)
        self.n_features_in_ = self.frame_.M
        self.n_components_ = self.frame_.N
        if X is not None:
            _as_2d(X, self.n_features_in_, "X")
        return self

    def transform(self, X):
        check_is_fitted(self, "frame_")
        X = _as_2d(X, self.n_features_in_, "X")
        F = self.frame_.to_sparse()
        out = (F.conj().T @ X.T).T
        return out.real if self.frame_.is_real and not np.iscomplexobj(X) else out

    def inverse_transform(self, C):
        check_is_fitted(self, "frame_")
        C = _as_2d(C, self.n_components_, "C")
        F = self.frame_.to_sparse()
        out = (F @ C.T).T * (self.frame_.M / self.frame_.N)
        return out.real if self.frame_.is_real and not np.iscomplexobj(C) else out
