"""scikit-learn style front end.

``SteadyStateCurrents`` treats each input row as a driving strength f and
maps it to steady-state currents, so chain parameters can be handled with
``get_params``/``set_params``, cloned, grid-searched or dropped into a
``Pipeline``.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .analysis import run_pair, solve_currents
from .model import make_config

OUTPUT_NAMES = ("J", "F", "F_xxz")


class SteadyStateCurrents(TransformerMixin, BaseEstimator):
    """Steady spin/energy currents of a boundary-driven XXZ chain versus f.

    Parameters mirror the flat run-document keys. ``fit`` only validates
    them and stores the chain template as ``config_``; ``transform`` solves
    one steady state per row of ``X`` (a single column of drive strengths
    with ``|f| <= 1``; the target ``kappa`` for twisted-XY baths) and
    returns columns ``J, F, F_xxz``.
    """

    def __init__(self, N=3, alpha=1.0, Delta=1.0, delta=0.0, B=0.0, profile=None, field_profile="uniform",
                 B_slope=0.0, gamma=1.0, boundary="z_target", kappa=0.0, solver="auto"):
        self.N = N
        self.alpha = alpha
        self.Delta = Delta
        self.delta = delta
        self.B = B
        self.profile = profile
        self.field_profile = field_profile
        self.B_slope = B_slope
        self.gamma = gamma
        self.boundary = boundary
        self.kappa = kappa
        self.solver = solver

    def fit(self, X=None, y=None):
        params = self.get_params()
        solver = params.pop("solver")
        self.config_ = make_config(**params)
        self.solver_ = solver
        if X is not None:
            self._validate_drive(X)
        self.n_features_in_ = 1
        return self

    def _validate_drive(self, X):
        X = check_array(X, ensure_2d=False, dtype=float)
        X = X.reshape(-1, 1) if X.ndim == 1 else X
        if X.shape[1] != 1:
            raise ValueError(f"expected a single column of drive strengths, got {X.shape[1]} columns")
        if np.any(np.abs(X) > 1):
            raise ValueError("drive strengths must satisfy |f| <= 1")
        return X[:, 0]

    def _config_at(self, f):
        check_is_fitted(self, "config_")
        # twisted-XY baths have no f; the row value is the target kappa
        if self.config_.boundary.kind == "twisted_xy":
            return self.config_.with_params(kappa=float(f))
        return self.config_.with_drive(f)

    def _solve(self, f):
        return solve_currents(self._config_at(f), self.solver_)[1]

    def transform(self, X):
        rows = []
        for f in self._validate_drive(X):
            rep = self._solve(f)
            rows.append((rep.J_mean, rep.F_mean, rep.F_xxz))
        return np.array(rows, dtype=float).reshape(-1, len(OUTPUT_NAMES))

    def rectification(self, X):
        """Energy rectification factor of each row against its bath-inverted twin."""
        return np.array([run_pair(self._config_at(f), self.solver_).R_E for f in self._validate_drive(X)])

    def get_feature_names_out(self, input_features=None):
        return np.array(OUTPUT_NAMES, dtype=object)
