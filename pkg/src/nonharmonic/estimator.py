"""Scikit-learn style front end for the recovery pipeline.

``FourierSumRecovery`` behaves like a regressor whose training data are
coefficient indices (X) and complex coefficient values (y): ``fit`` runs the
full reconstruction and ``predict`` evaluates the recovered signal in the
time domain. Hyperparameters mirror the pipeline configuration, so the
estimator composes with ``get_params``/``set_params``, cloning, and searches.
"""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .fourier import FourierData
from .recovery import reconstruct


def validate_coefficient_arrays(X, y) -> tuple[np.ndarray, np.ndarray, complex | None]:
    """Coerce (X, y) into (indices >= 1, complex values, optional c_0).

    X may be a 1-d sequence of integer indices or a column vector; an index 0
    entry is split off into the c_0 slot. Raises ValueError on non-integer,
    negative, duplicated indices, NaNs, or mismatched lengths.
    """
    X = np.asarray(X)
    if X.ndim == 2 and X.shape[1] == 1:
        X = X[:, 0]
    if X.ndim != 1:
        raise ValueError(f"X must be 1-d or a single column, got shape {X.shape}")
    if not np.all(np.isfinite(X.astype(float))):
        raise ValueError("X contains non-finite entries")
    idx = np.asarray(X, dtype=float)
    if not np.all(idx == np.round(idx)):
        raise ValueError("coefficient indices must be integers")
    idx = idx.astype(int)
    if (idx < 0).any():
        raise ValueError("coefficient indices must be non-negative")
    if len(np.unique(idx)) != len(idx):
        raise ValueError("coefficient indices must be pairwise distinct")

    y = np.asarray(y, dtype=complex)
    if y.shape != idx.shape:
        raise ValueError(f"y has shape {y.shape}, expected {idx.shape}")
    if not np.all(np.isfinite(y.real) & np.isfinite(y.imag)):
        raise ValueError("y contains non-finite entries")

    c0 = None
    zero = idx == 0
    if zero.any():
        c0 = complex(y[zero][0])
        idx, y = idx[~zero], y[~zero]
    return idx, y, c0


class FourierSumRecovery(BaseEstimator):
    """Recover a sparse cosine/cosh sum from its Fourier coefficients.

    Parameters
    ----------
    period : float
        Length P of the analysis interval (0, P) the coefficients refer to.
    tol : float
        Absolute residual tolerance of the rational fit.
    mmax : int or None
        Maximum rational support size; None picks the data-driven default.
    weight_eps, residue_eps, periodic_eps, imag_eps : float
        Relative thresholds for weight pruning, Froissart removal, periodic
        spike detection, and pole realness.

    Attributes
    ----------
    model_ : SignalModel
        The recovered sparse sum.
    report_ : ReconstructionReport
        Full pipeline diagnostics, including the re-synthesis residual.
    sigma_ : set[int]
        Indices carrying P-periodic spikes.
    """

    def __init__(
        self,
        period: float = 1.0,
        tol: float = 1e-13,
        mmax: int | None = None,
        weight_eps: float = 1e-8,
        residue_eps: float = 1e-8,
        periodic_eps: float = 1e-6,
        imag_eps: float = 1e-8,
    ):
        self.period = period
        self.tol = tol
        self.mmax = mmax
        self.weight_eps = weight_eps
        self.residue_eps = residue_eps
        self.periodic_eps = periodic_eps
        self.imag_eps = imag_eps

    def fit(self, X, y):
        """Run the reconstruction on indices X and complex coefficients y."""
        if not (isinstance(self.period, numbers.Real) and self.period > 0):
            raise ValueError(f"period must be a positive real, got {self.period}")
        idx, values, c0 = validate_coefficient_arrays(X, y)
        data = FourierData(float(self.period), idx, values, c0)
        self.report_ = reconstruct(
            data,
            tol=self.tol,
            mmax=self.mmax,
            weight_eps=self.weight_eps,
            residue_eps=self.residue_eps,
            periodic_eps=self.periodic_eps,
            imag_eps=self.imag_eps,
        )
        self.model_ = self.report_.model
        self.sigma_ = self.report_.periodic_indices
        self.n_terms_ = len(self.model_.terms)
        return self

    def predict(self, T):
        """Evaluate the recovered signal at times T (1-d or column vector)."""
        if not hasattr(self, "model_"):
            raise NotFittedError("call fit before predict")
        T = np.asarray(T, dtype=float)
        if T.ndim == 2 and T.shape[1] == 1:
            T = T[:, 0]
        return np.asarray(self.model_.evaluate(T))
