"""Linear model fits and residual-magnitude colorings.

The solver goes through a QR decomposition rather than the normal equations;
standard errors are the classical homoskedastic ones.  Rank problems are
reported with the name of the first offending column so the caller can drop
it, mirroring how correlated shares usually get resolved in this kind of
analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CollinearityError, ParameterError
from .mapper import BallMapperGraph, Coloring, color_by
from .pointcloud import PointCloud
from .stats import significance_stars, student_t_two_sided_p

# Singular values below this fraction of the largest flag rank deficiency.
RANK_TOLERANCE = 1e-10

INTERCEPT = "intercept"


@dataclass(frozen=True)
class OlsFit:
    terms: tuple[str, ...]
    coefficients: tuple[float, ...]
    standard_errors: tuple[float, ...]
    r_squared: float
    residuals: np.ndarray
    fitted: np.ndarray
    df_resid: int

    def coefficient(self, term: str) -> float:
        return self.coefficients[self.terms.index(term)]

    def p_values(self) -> tuple[float, ...]:
        out = []
        for coef, se in zip(self.coefficients, self.standard_errors):
            if se == 0.0:
                out.append(0.0 if coef != 0.0 else 1.0)
            else:
                out.append(student_t_two_sided_p(coef / se, self.df_resid))
        return tuple(out)

    def stars(self) -> tuple[str, ...]:
        return tuple(significance_stars(p) for p in self.p_values())


def _first_dependent_column(design: np.ndarray, names: Sequence[str]) -> str:
    scale = np.linalg.svd(design, compute_uv=False)[0]
    for j in range(1, design.shape[1]):
        block = design[:, : j + 1]
        smallest = np.linalg.svd(block, compute_uv=False)[-1]
        if smallest < RANK_TOLERANCE * scale:
            return names[j]
    return names[-1]


def ols_fit(
    cloud: PointCloud, outcome: str, regressors: Sequence[str]
) -> OlsFit:
    """Least squares of a numeric attribute on axis columns plus an intercept."""
    if not regressors:
        raise ParameterError("at least one regressor is required")
    y = cloud.numeric_attribute(outcome)
    columns = [cloud.values[:, cloud.axis_index(name)] for name in regressors]
    design = np.column_stack([np.ones(cloud.n_rows), *columns])
    names = [INTERCEPT, *regressors]
    n, p = design.shape
    if n <= p:
        raise ParameterError("need more rows than coefficients")
    singular = np.linalg.svd(design, compute_uv=False)
    if singular[-1] < RANK_TOLERANCE * singular[0]:
        column = _first_dependent_column(design, names)
        raise CollinearityError(
            f"design matrix is rank deficient; column {column!r} is linearly "
            "dependent on the ones before it",
            column=column,
        )
    q, r = np.linalg.qr(design)
    beta = np.linalg.solve(r, q.T @ y)
    fitted = design @ beta
    residuals = y - fitted
    ssr = float(residuals @ residuals)
    centered = y - y.mean()
    sst = float(centered @ centered)
    r_squared = 1.0 - ssr / sst if sst > 0.0 else 1.0
    sigma2 = ssr / (n - p)
    r_inv = np.linalg.inv(r)
    cov = sigma2 * (r_inv @ r_inv.T)
    return OlsFit(
        terms=tuple(names),
        coefficients=tuple(float(b) for b in beta),
        standard_errors=tuple(float(np.sqrt(v)) for v in np.diag(cov)),
        r_squared=r_squared,
        residuals=residuals,
        fitted=fitted,
        df_resid=n - p,
    )


def residual_threshold_fractions(
    graph: BallMapperGraph,
    fit: OlsFit,
    thresholds: Sequence[float],
) -> list[Coloring]:
    """One coloring per threshold: share of member rows with |residual| above it."""
    abs_resid = np.abs(fit.residuals)
    out = []
    for threshold in thresholds:
        flags = {i: bool(abs_resid[i] > threshold) for i in range(len(abs_resid))}
        out.append(
            color_by(
                graph,
                flags,
                aggregator="fraction",
                label=f"abs_resid_gt_{threshold:g}",
            )
        )
    return out
