"""Estimator-style front end for the power-map analysis.

``PowerMapProfiler().fit(R)`` measures the ring and stores the results as
trailing-underscore attributes; ``transform`` maps element ids to their
(tail, cycle) orbit statistics. Parameters round-trip through
``get_params``/``set_params`` so the profiler can be cloned or swept.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .analysis import DEFAULT_MU1_BOUND, mu_profile, orbits, structural_flags
from .core import DEFAULT_TABLE_CAP, FiniteRing


def check_ring(R) -> FiniteRing:
    if not isinstance(R, FiniteRing):
        raise TypeError(f"expected a FiniteRing, got {type(R).__name__}")
    if R.size < 1:
        raise ValueError("ring must have at least one element")
    return R


def check_elements(R: FiniteRing, X) -> np.ndarray:
    """Validate element ids: integers in [0, |R|), returned as a 1-d int64 array."""
    arr = np.asarray(X)
    if arr.dtype.kind not in "iu":
        if arr.size and not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("element ids must be integers")
        arr = arr.astype(np.int64)
    arr = arr.astype(np.int64).ravel()
    if arr.size and (arr.min() < 0 or arr.max() >= R.size):
        raise ValueError(f"element ids must lie in [0, {R.size})")
    return arr


def check_exponent(n) -> int:
    if int(n) != n or n < 1:
        raise ValueError(f"exponent must be a positive integer, got {n!r}")
    return int(n)


class PowerMapProfiler(TransformerMixin, BaseEstimator):
    """Measure power-map dynamics of a finite ring.

    Parameters
    ----------
    mu1_bound : int
        Give up (Mu1TooLarge) if the power maps do not repeat within this many steps.
    compute_periods : bool
        Also compute every period subgroup in the power-map window.
    compute_flags : bool
        Also compute structural flags (needs ``compute_periods``).
    verify : bool
        Re-check every reported period and the subgroup laws directly.
    table_cap : int
        Build operation tables for rings up to this size.
    """

    def __init__(self, mu1_bound=DEFAULT_MU1_BOUND, compute_periods=True, compute_flags=True,
                 verify=False, table_cap=DEFAULT_TABLE_CAP):
        self.mu1_bound = mu1_bound
        self.compute_periods = compute_periods
        self.compute_flags = compute_flags
        self.verify = verify
        self.table_cap = table_cap

    def fit(self, R, y=None):
        R = check_ring(R)
        if self.compute_flags and not self.compute_periods:
            raise ValueError("compute_flags requires compute_periods")
        R.build_tables(self.table_cap)
        profile = mu_profile(R, mu1_bound=self.mu1_bound, periods=self.compute_periods,
                             verify=self.verify)
        self.ring_ = R
        self.profile_ = profile
        self.mu0_ = profile.mu0
        self.mu1_ = profile.mu1
        self.distinct_maps_ = profile.distinct_maps
        self.tails_, self.cycles_ = orbits(R, profile.mu0, profile.mu1)
        if self.compute_periods:
            self.periodic_exponents_ = profile.periodic_exponents
            self.period_subgroups_ = profile.period_subgroups
            self.muP_ = profile.muP
        if self.compute_flags:
            self.flags_ = structural_flags(R, profile)
        return self

    def transform(self, X):
        """(tail, cycle) per element id, shape (len(X), 2)."""
        check_is_fitted(self, "profile_")
        ids = check_elements(self.ring_, X)
        return np.column_stack([self.tails_[ids], self.cycles_[ids]])

    def fit_transform(self, R, y=None):
        """Fit on ``R`` and return (tail, cycle) for every element id."""
        return self.fit(R).transform(R.elements())
