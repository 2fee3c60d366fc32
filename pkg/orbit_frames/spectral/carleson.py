"""
Carleson condition diagnostics for a finite list of points in the unit disc.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .model import DiagonalModel

logger = logging.getLogger(__name__)

CARLESON_DELTA = 1e-6


@dataclass(frozen=True)
class CarlesonReport(object):
    """Products prod_{j != k} |lambda_j - lambda_k| / |1 - lambda_j conj(lambda_k)|.

    :param per_index_products: Entry k - 1 is the product for index k.
    :type per_index_products: list[float]
    :param infimum: Smallest product.
    :type infimum: float
    :param minimizer: 1-based index attaining the infimum.
    :type minimizer: int
    :param satisfied: `infimum > delta`.
    :type satisfied: bool
    :param has_duplicates: Some eigenvalue occurs twice, forcing a zero infimum.
    :type has_duplicates: bool
    :param delta: Threshold used for `satisfied`.
    :type delta: float
    """

    per_index_products: list[float]
    infimum: float
    minimizer: int
    satisfied: bool
    has_duplicates: bool
    delta: float = CARLESON_DELTA

    def to_json(self) -> dict:
        return {
            "per_index_products": list(self.per_index_products),
            "infimum": self.infimum,
            "minimizer": self.minimizer,
            "satisfied": self.satisfied,
            "has_duplicates": self.has_duplicates,
            "delta": self.delta,
        }


def pseudo_hyperbolic_distances(lambdas: np.ndarray) -> np.ndarray:
    """Matrix of |lambda_j - lambda_k| / |1 - lambda_j conj(lambda_k)|."""
    lam = np.asarray(lambdas, dtype=complex).ravel()
    return np.abs(lam[:, None] - lam[None, :]) / np.abs(1.0 - np.outer(lam, lam.conj()))


def carleson_lower_bound(lambdas, delta: float = CARLESON_DELTA) -> CarlesonReport:
    """Evaluate the Carleson products of `lambdas`; a single point has the empty
    product 1.

    :param lambdas: Points of the open unit disc, or a `DiagonalModel`.
    :type lambdas: array_like | DiagonalModel
    :param delta: Threshold for the `satisfied` verdict.
    :type delta: float (default=1e-6)
    :raises ModulusOutOfRange: If some point is not inside the unit disc.
    """
    model = lambdas if isinstance(lambdas, DiagonalModel) else DiagonalModel(lambdas)
    D = pseudo_hyperbolic_distances(model.lambdas)
    np.fill_diagonal(D, 1.0)
    products = np.prod(D, axis=0)
    k = int(np.argmin(products))
    off_diagonal = ~np.eye(model.dim, dtype=bool)
    has_duplicates = bool(np.any((D == 0.0) & off_diagonal))
    report = CarlesonReport(
        per_index_products=[float(p) for p in products],
        infimum=float(products[k]),
        minimizer=k + 1,
        satisfied=bool(products[k] > delta),
        has_duplicates=has_duplicates,
        delta=delta,
    )
    logger.debug(
        "carleson_lower_bound: d=%d inf=%.6e at k=%d satisfied=%s",
        model.dim, report.infimum, report.minimizer, report.satisfied,
    )
    return report
