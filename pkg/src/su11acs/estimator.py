"""scikit-learn transformer mapping eigenproblem parameters to moment features."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import AcsError, DomainError
from .moments import k_moments
from .representation import Flavor, ReprIndex
from .states import AcsParams, solve_acs

__all__ = ["AcsMomentTransformer", "INPUT_COLUMNS"]

INPUT_COLUMNS = ("z_re", "z_im", "u_re", "u_im", "v_re", "v_im", "w_re", "w_im")
_BOSONIC_ONLY = {"var_q", "var_p", "var_X", "var_Y", "mean_n", "mandel_q"}
_FEATURES = ("var_K1", "var_K2", "cov_K12", "mean_K3") + tuple(sorted(_BOSONIC_ONLY))


class AcsMomentTransformer(TransformerMixin, BaseEstimator):
    """Rows of ``(z, u, v, w)`` as eight real columns to moments of ``|z,u,v,w;k>``.

    Parameters
    ----------
    k : float, optional
        Bargmann index; defaults to 1/4 or 3/4 for the bosonic flavors.
    flavor : str
        ``bosonic_even``, ``bosonic_odd`` or ``abstract``.
    trunc : int, optional
        Truncation index passed to the solver.
    observables : sequence of str, optional
        Output columns; defaults to the four quadrature variances for bosonic
        flavors and ``var_K1, var_K2, cov_K12, mean_K3`` otherwise.
    on_error : {"raise", "nan"}
        Whether a row with no certified eigenstate raises or yields NaNs.
    """

    def __init__(self, k=None, flavor="bosonic_even", trunc=None, observables=None, on_error="raise"):
        self.k = k
        self.flavor = flavor
        self.trunc = trunc
        self.observables = observables
        self.on_error = on_error

    def _rep(self):
        flavor = Flavor(self.flavor)
        k = self.k
        if k is None:
            k = {Flavor.BOSONIC_EVEN: 0.25, Flavor.BOSONIC_ODD: 0.75}.get(flavor)
            if k is None:
                raise DomainError("k is required for the abstract flavor")
        return ReprIndex(k, flavor)

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if X.shape[1] != len(INPUT_COLUMNS):
            raise ValueError(f"expected {len(INPUT_COLUMNS)} columns {INPUT_COLUMNS}, got {X.shape[1]}")
        rep = self._rep()
        if self.on_error not in ("raise", "nan"):
            raise ValueError(f"on_error must be 'raise' or 'nan', got {self.on_error!r}")
        obs = self.observables
        if obs is None:
            obs = ("var_q", "var_p", "var_X", "var_Y") if rep.is_bosonic else _FEATURES[:4]
        bad = [o for o in obs if o not in _FEATURES]
        if bad:
            raise ValueError(f"unknown observables {bad}; choose from {_FEATURES}")
        if not rep.is_bosonic and _BOSONIC_ONLY.intersection(obs):
            raise DomainError("quadrature observables need a bosonic flavor")
        self.repr_ = rep
        self.observables_ = tuple(obs)
        self.n_features_in_ = X.shape[1]
        return self

    def _row(self, row):
        z, u, v, w = (complex(row[2 * i], row[2 * i + 1]) for i in range(4))
        try:
            r = k_moments(solve_acs(AcsParams(z, u, v, w, self.repr_), self.trunc))
        except AcsError:
            if self.on_error == "raise":
                raise
            return [np.nan] * len(self.observables_)
        return [r.mean_K[2] if o == "mean_K3" else getattr(r, o) for o in self.observables_]

    def transform(self, X):
        check_is_fitted(self, "observables_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        return np.array([self._row(row) for row in X], dtype=float).reshape(len(X), -1)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "observables_")
        return np.asarray(self.observables_, dtype=object)
