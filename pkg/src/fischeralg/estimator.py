from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import tralgebra as ta
from .gf2 import rref
from .validation import check_elements, check_space


class TranspositionAlgebra(TransformerMixin, BaseEstimator):
    """Fit the algebra of a Fischer space; transform elements into A-bar = A/V coordinates.

    ``fit`` takes a FischerSpace or a square third-point table. ``transform``
    takes rows of 0/1 vectors over the points and returns their images in the
    quotient by the radical, as coordinates of length ``rank_``.

    Parameters
    ----------
    scan : {"auto", "all", "orbit"}
        How affine planes are scanned for the Lie criterion and the ideal.
    override_guard : bool
        Allow plane enumeration above the size guard.
    with_report : bool
        Also compute the full AlgebraReport during ``fit``.
    """

    def __init__(self, scan="auto", override_guard=False, with_report=True):
        self.scan = scan
        self.override_guard = override_guard
        self.with_report = with_report

    def fit(self, X, y=None):
        S = check_space(X)
        self.space_ = S
        self.n_features_in_ = S.n
        self.rank_ = ta.dim_obar(S)
        self.radical_ = ta.radical_basis(S)
        # pivot columns of the row space of the collinearity matrix give coordinates on A/V
        R, pivots = rref(S.adjacency)
        self.pivots_ = np.asarray(pivots, dtype=np.int64)
        self.report_ = ta.report(S, scan=self.scan, override=self.override_guard) if self.with_report else None
        return self

    def transform(self, X):
        check_is_fitted(self, "rank_")
        rows = check_elements(X, self.n_features_in_)
        # x -> A x has kernel V, and the pivot coordinates are injective on the row space
        images = (rows.astype(np.int64) @ self.space_.adjacency.to_dense().astype(np.int64)) % 2
        return images[:, self.pivots_].astype(np.uint8)

    def product(self, u, v):
        """Algebra product of two 0/1 vectors over the points."""
        check_is_fitted(self, "rank_")
        u = check_elements(u, self.n_features_in_)[0]
        v = check_elements(v, self.n_features_in_)[0]
        return ta.product(self.space_, np.flatnonzero(u), np.flatnonzero(v)).to_bits()
