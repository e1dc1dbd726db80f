"""Ordinary least squares with full inference, plus the forecast metrics.

The solver goes through an orthogonal decomposition (QR / SVD via numpy)
rather than explicit normal-equation inversion; near-collinear daily rate
columns stay well-conditioned that way. Exact fits (zero residual variance)
report their p-values as None, an explicit marker, never 0 or NaN.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin

from ._validation import as_float_matrix, as_float_vector, check_same_length
from .errors import DataError, SingularDesignError
from .special import f_test_pvalue, t_test_pvalue

INTERCEPT = "intercept"

# Below this share of total variance, residual variance is treated as an
# exact fit and inference is reported as undefined.
_EXACT_FIT_RTOL = 1e-12


@dataclass(frozen=True)
class DesignMatrix:
    """Named observation matrix (intercept column first) plus the response."""

    columns: tuple[str, ...]
    X: np.ndarray
    y: np.ndarray
    response: str = "response"

    def __post_init__(self):
        X = as_float_matrix(self.X, "X")
        y = as_float_vector(self.y, "y")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        if len(self.columns) != X.shape[1]:
            raise ValueError(
                f"{len(self.columns)} column names for {X.shape[1]} columns"
            )
        if len(set(self.columns)) != len(self.columns):
            raise ValueError(f"duplicate column names in {self.columns}")
        if not self.columns or self.columns[0] != INTERCEPT:
            raise ValueError("first column must be the intercept")
        if X.shape[0] != y.shape[0]:
            raise ValueError(f"{X.shape[0]} rows but {y.shape[0]} responses")
        if X.shape[0] <= X.shape[1]:
            raise ValueError(
                f"need more observations than columns for inference, got "
                f"{X.shape[0]} rows x {X.shape[1]} columns"
            )

    @classmethod
    def from_predictors(
        cls,
        names: Sequence[str],
        values,
        y,
        response: str = "response",
    ) -> "DesignMatrix":
        """Build a design from predictor columns, prepending the intercept."""
        values = as_float_matrix(values, "values")
        ones = np.ones((values.shape[0], 1))
        return cls(
            columns=(INTERCEPT, *names),
            X=np.hstack([ones, values]),
            y=np.asarray(y, dtype=float),
            response=response,
        )

    @property
    def predictor_names(self) -> tuple[str, ...]:
        return self.columns[1:]

    @property
    def predictors(self) -> np.ndarray:
        return self.X[:, 1:]

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(list(self.columns) + [self.response])
            for row, resp in zip(self.X, self.y):
                writer.writerow([repr(float(v)) for v in row] + [repr(float(resp))])

    @classmethod
    def from_csv(cls, path, response: str | None = None) -> "DesignMatrix":
        try:
            with open(path, "r", encoding="utf-8", newline="") as handle:
                rows = list(csv.reader(handle))
        except OSError as exc:
            raise DataError(f"cannot read design file {str(path)!r}: {exc}") from exc
        if not rows:
            raise DataError(f"design file {str(path)!r} is empty")
        header, data = rows[0], rows[1:]
        if response is None:
            response = header[-1]
        if response not in header:
            raise DataError(f"response column {response!r} not in {str(path)!r}")
        r_idx = header.index(response)
        col_idx = [i for i in range(len(header)) if i != r_idx]
        try:
            X = np.array([[float(row[i]) for i in col_idx] for row in data])
            y = np.array([float(row[r_idx]) for row in data])
        except (ValueError, IndexError) as exc:
            raise DataError(f"bad numeric row in {str(path)!r}: {exc}") from exc
        return cls(
            columns=tuple(header[i] for i in col_idx), X=X, y=y, response=response
        )


class OlsRegressor(BaseEstimator, RegressorMixin):
    """Least-squares regressor exposing coefficient and model inference.

    Follows the usual estimator conventions: ``fit(X, y)`` with predictor
    columns only (the intercept is always added), then ``coef_`` /
    ``intercept_`` for prediction and ``params_`` / ``pvalues_`` /
    ``model_pvalue_`` etc. for inference. Exact fits leave the p-value
    attributes as None.
    """

    def fit(self, X, y, column_names: Sequence[str] | None = None) -> "OlsRegressor":
        X = as_float_matrix(X, "X")
        y = as_float_vector(y, "y")
        check_same_length(X, y, "X", "y")
        n, p = X.shape
        if n <= p + 1:
            raise ValueError(
                f"need n > p + 1 observations for inference, got n={n}, p={p}"
            )
        if column_names is None:
            column_names = tuple(f"x{i}" for i in range(1, p + 1))
        else:
            column_names = tuple(column_names)
            if len(column_names) != p:
                raise ValueError(
                    f"{len(column_names)} column names for {p} predictors"
                )
        A = np.hstack([np.ones((n, 1)), X])
        names = (INTERCEPT, *column_names)

        rank = np.linalg.matrix_rank(A)
        if rank < p + 1:
            raise SingularDesignError(_dependent_columns(A, names))

        q, r = np.linalg.qr(A)
        params = np.linalg.solve(r, q.T @ y)
        fitted = A @ params
        residuals = y - fitted

        sse = float(residuals @ residuals)
        sst = float(((y - y.mean()) ** 2).sum())
        df_resid = n - p - 1
        exact_fit = sse <= _EXACT_FIT_RTOL * sst or sse == 0.0
        if sst > 0.0:
            r2 = 1.0 - sse / sst
        else:
            # Constant response: the intercept alone reproduces it.
            r2 = 1.0 if exact_fit else 0.0

        self.n_ = n
        self.p_ = p
        self.df_resid_ = df_resid
        self.column_names_ = names
        self.params_ = params
        self.intercept_ = float(params[0])
        self.coef_ = params[1:].copy()
        self.fitted_ = fitted
        self.residuals_ = residuals
        self.r2_ = r2
        self.adj_r2_ = adjusted_r2(r2, n, p)
        self.exact_fit_ = bool(exact_fit)

        if exact_fit:
            self.residual_variance_ = 0.0
            self.stderr_ = None
            self.tvalues_ = None
            self.pvalues_ = None
            self.fvalue_ = None
            self.model_pvalue_ = None
            return self

        sigma2 = sse / df_resid
        r_inv = np.linalg.inv(r)
        cov = sigma2 * (r_inv @ r_inv.T)
        stderr = np.sqrt(np.diag(cov))
        tvalues = params / stderr
        self.residual_variance_ = float(sigma2)
        self.stderr_ = stderr
        self.tvalues_ = tvalues
        self.pvalues_ = np.array([t_test_pvalue(t, df_resid) for t in tvalues])
        ssr = sst - sse
        self.fvalue_ = (ssr / p) / sigma2
        self.model_pvalue_ = f_test_pvalue(self.fvalue_, p, df_resid)
        return self

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "params_"):
            raise ValueError("regressor is not fitted; call fit() first")
        X = as_float_matrix(X, "X")
        if X.shape[1] != self.p_:
            raise ValueError(f"expected {self.p_} predictor columns, got {X.shape[1]}")
        return self.intercept_ + X @ self.coef_


def _dependent_columns(A: np.ndarray, names: Sequence[str]) -> list[str]:
    # Greedy scan: a column is offending if it adds nothing to the span of
    # the columns before it.
    offending = []
    rank = 0
    for j in range(A.shape[1]):
        new_rank = np.linalg.matrix_rank(A[:, : j + 1])
        if new_rank == rank:
            offending.append(names[j])
        rank = new_rank
    return offending


@dataclass(frozen=True)
class RegressionFit:
    """Immutable named view of a fitted model, for reports and prediction."""

    columns: tuple[str, ...]
    coefficients: dict[str, float]
    residual_variance: float
    r2: float
    adj_r2: float
    coef_p: dict[str, float] | None
    model_p: float | None
    n: int
    p: int
    exact_fit: bool
    response: str = "response"

    def predict(self, values: Mapping[str, float]) -> float:
        """Predict for one named observation; every fitted column required."""
        total = self.coefficients[INTERCEPT]
        for name in self.columns[1:]:
            if name not in values:
                raise ValueError(f"missing predictor column {name!r}")
            total += self.coefficients[name] * float(values[name])
        return total

    def to_json_dict(self) -> dict:
        return {
            "response": self.response,
            "n": self.n,
            "p": self.p,
            "r2": self.r2,
            "adj_r2": self.adj_r2,
            "residual_variance": self.residual_variance,
            "exact_fit": self.exact_fit,
            "model_p": self.model_p,
            "model_significance": None
            if self.model_p is None
            else significance_stars(self.model_p),
            "coefficients": {
                name: {
                    "estimate": self.coefficients[name],
                    "p": None if self.coef_p is None else self.coef_p[name],
                    "significance": None
                    if self.coef_p is None
                    else significance_stars(self.coef_p[name]),
                }
                for name in self.columns
            },
        }


def fit_design(design: DesignMatrix) -> RegressionFit:
    """Fit OLS on a DesignMatrix and package the named inference results."""
    model = OlsRegressor().fit(
        design.predictors, design.y, column_names=design.predictor_names
    )
    coef = dict(zip(model.column_names_, (float(v) for v in model.params_)))
    coef_p = (
        None
        if model.pvalues_ is None
        else dict(zip(model.column_names_, (float(v) for v in model.pvalues_)))
    )
    return RegressionFit(
        columns=model.column_names_,
        coefficients=coef,
        residual_variance=model.residual_variance_,
        r2=model.r2_,
        adj_r2=model.adj_r2_,
        coef_p=coef_p,
        model_p=model.model_pvalue_,
        n=model.n_,
        p=model.p_,
        exact_fit=model.exact_fit_,
        response=design.response,
    )


def adjusted_r2(r2: float, n: int, p: int) -> float:
    """R-squared penalized for predictor count: 1 - (1-R2)(n-1)/(n-p-1)."""
    if n <= p + 1:
        raise ValueError(f"adjusted R2 needs n > p + 1, got n={n}, p={p}")
    return 1.0 - (1.0 - r2) * (n - 1) / (n - p - 1)


def pearson(x, y) -> float:
    """Sample Pearson correlation coefficient."""
    x = as_float_vector(x, "x")
    y = as_float_vector(y, "y")
    check_same_length(x, y)
    if x.size < 2:
        raise ValueError(f"need at least 2 points, got {x.size}")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("correlation undefined for zero-variance input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def amape(pred, actual) -> float:
    """Adjusted (symmetric) MAPE in percent.

    (100/n) * sum |pred - actual| / ((|pred| + |actual|) / 2). Symmetric in
    its arguments and invariant to rescaling both by the same factor.
    """
    pred = as_float_vector(pred, "pred")
    actual = as_float_vector(actual, "actual")
    check_same_length(pred, actual, "pred", "actual")
    if pred.size == 0:
        raise ValueError("need at least one prediction")
    denom = (np.abs(pred) + np.abs(actual)) / 2.0
    if np.any(denom == 0.0):
        raise ValueError("amape undefined where |pred| + |actual| = 0")
    return float(100.0 * np.mean(np.abs(pred - actual) / denom))


def amape_score(pred, actual) -> float:
    """Forecast quality on a 0-100 scale: exactly 100 - amape."""
    return 100.0 - amape(pred, actual)


def significance_stars(p: float) -> str:
    """Star convention: * below 0.05, ** below 0.01, *** below 0.001."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p-value must lie in [0, 1], got {p}")
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def write_fit_json(path, fit: RegressionFit) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(fit.to_json_dict(), handle, sort_keys=True, indent=2)
        handle.write("\n")
