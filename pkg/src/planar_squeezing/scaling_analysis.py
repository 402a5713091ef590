# scaling_analysis.py
"""

This module defines a class, ScalingModeler, for fitting power laws
y ~ A x^slope by linear regression in log-log space.

"""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression
from sklearn.metrics import r2_score

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalingFit:
    """Power-law fit log y = intercept + slope log x."""

    slope: float
    intercept: float
    r2: float
    n_points: int

    def predict(self, x):
        return np.exp(self.intercept) * np.asarray(x, dtype=float) ** self.slope


class ScalingModeler:
    """
    Class for preparing log-log data and fitting power-law exponents.
    """

    def prepare_data(self, x, y):
        """
        Builds the log-log design matrix, dropping non-finite or non-positive rows.

        Parameters
        ----------
        x : array-like
            Positive abscissae, e.g. spin values J.
        y : array-like
            Positive ordinates, e.g. phase uncertainties.

        Returns
        -------
        tuple
            Features (log x as a one-column DataFrame) and target (log y).
        """
        data = pd.DataFrame({"x": np.asarray(x, dtype=float), "y": np.asarray(y, dtype=float)})
        data = data[(data["x"] > 0) & (data["y"] > 0)].replace([np.inf, -np.inf], np.nan).dropna()
        dropped = len(x) - len(data)
        if dropped:
            logger.warning("dropped %d rows without a finite positive value", dropped)
        X = np.log(data[["x"]]).rename(columns={"x": "log_x"})
        y_log = np.log(data["y"]).rename("log_y")
        return X, y_log

    def fit_power_law(self, x, y):
        """
        Fits the exponent of y ~ A x^slope.

        Parameters
        ----------
        x : array-like
        y : array-like

        Returns
        -------
        ScalingFit
            Slope, intercept and R-squared of the log-log fit.
        """
        X, y_log = self.prepare_data(x, y)
        if len(X) < 2:
            raise ValueError("a power-law fit needs at least two positive points")
        model = LinearRegression()
        model.fit(X, y_log)
        r2 = r2_score(y_log, model.predict(X)) if len(X) > 2 else 1.0
        fit = ScalingFit(
            slope=float(model.coef_[0]),
            intercept=float(model.intercept_),
            r2=float(r2),
            n_points=len(X),
        )
        logger.info("power-law fit: slope %.6g, r2 %.6g over %d points", fit.slope, fit.r2, fit.n_points)
        return fit
