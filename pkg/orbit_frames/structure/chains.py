"""
Image chain R(T^0) >= R(T) >= R(T^2) >= ... and null chain N(T^0) <= N(T) <= ... of a
square matrix, with their stabilization lengths.

author: Aaron Gobeyn
"""

import logging
from dataclasses import asdict, dataclass

import numpy as np

from ..errors import InvalidInput, NoStabilization
from ..linalg.core import Tolerance, as_square, nullspace_basis, projector, range_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainReport(object):
    """Ranks of T^k and dimensions of N(T^k) for k = 0, 1, ..., up to stabilization.

    :param image_ranks: Entry k is rank(T^k); the list stops at T^{q_T}.
    :type image_ranks: list[int]
    :param q_T: Smallest N with rank(T^N) == rank(T^{N+1}), `None` in a partial report.
    :type q_T: int | None
    :param null_dims: Entry k is dim N(T^k); the list stops at the null chain length.
    :type null_dims: list[int]
    :param null_length: Smallest N with N(T^N) == N(T^{N+1}), `None` in a partial report.
    :type null_length: int | None
    """

    image_ranks: list[int]
    q_T: int | None
    null_dims: list[int]
    null_length: int | None

    @property
    def stabilized(self) -> bool:
        return self.q_T is not None and self.null_length is not None

    def to_json(self) -> dict:
        return asdict(self)


def _image_chain(T: np.ndarray, tol: Tolerance, max_k: int) -> tuple[list[int], int | None]:
    # Q spans R(T^k); T^k itself is never formed.
    Q = np.eye(T.shape[0], dtype=complex)
    ranks = [T.shape[0]]
    for _ in range(max_k):
        Q = range_basis(T @ Q, tol) if Q.shape[1] > 0 else Q
        if Q.shape[1] == ranks[-1]:
            return ranks, len(ranks) - 1
        ranks.append(Q.shape[1])
    return ranks, None


def _null_chain(T: np.ndarray, tol: Tolerance, max_k: int) -> tuple[list[int], int | None]:
    # N(T^{k+1}) = {x : T x in N(T^k)} = N((I - P_k) T)
    d = T.shape[0]
    K = np.zeros((d, 0), dtype=complex)
    dims = [0]
    for _ in range(max_k):
        K = nullspace_basis((np.eye(d) - projector(K)) @ T, tol)
        if K.shape[1] == dims[-1]:
            return dims, len(dims) - 1
        dims.append(K.shape[1])
    return dims, None


def chain_report(T, tol: Tolerance = Tolerance.DEFAULT, max_k: int | None = None) -> ChainReport:
    """Image and null chains of `T`. The image chain is followed through orthonormal
    range bases, R(T^{k+1}) = T R(T^k); the null chain through iterated kernels. In
    finite dimension both have the same length.

    :param T: Square matrix.
    :type T: array_like
    :param tol: Tolerances, `rank_rtol` decides every rank.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :param max_k: Highest power to compute, defaults to dim + 1 which always suffices.
    :type max_k: int | None (default=None)
    :raises NoStabilization: If a chain is still strictly monotone at `max_k`; the
        partial report is attached as `.report`.
    """
    T = as_square(T)
    if max_k is None:
        max_k = T.shape[0] + 1
    if max_k < 1:
        raise InvalidInput(f"max_k must be positive, got {max_k}.")
    image_ranks, q_T = _image_chain(T, tol, max_k)
    null_dims, null_length = _null_chain(T, tol, max_k)
    report = ChainReport(image_ranks=image_ranks, q_T=q_T, null_dims=null_dims, null_length=null_length)
    if not report.stabilized:
        raise NoStabilization(f"Chains did not stabilize within {max_k} powers.", report)
    if q_T != null_length:
        logger.info("chain_report: image chain length %d != null chain length %d", q_T, null_length)
    logger.debug("chain_report: ranks=%s q=%s nulls=%s", image_ranks, q_T, null_dims)
    return report
