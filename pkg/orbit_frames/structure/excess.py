"""
Tail spaces V = span{f_k}_{k > N} of orbit truncations, the removal of finite blocks of
elements, and the action of T on an invariant subspace.

Positions are 1-based: f_1 = phi, f_{n+1} = T^n phi.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import IndexOutOfRange, InsufficientTruncation, InvalidInput, LengthMismatch
from ..frames.analysis import FrameReport, frame_bounds
from ..frames.family import VectorFamily
from ..linalg.core import Tolerance, as_matrix, as_square, numerical_rank, operator_norm, projector, range_basis
from ..linalg.subspaces import ANGLE_TOL, same_subspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TailSpaceReport(object):
    """Tail spaces V_l = span{f_k : k > N + l}, l = 0, ..., L, compared with V = V_0.

    :param start_index_N: The N of the report.
    :type start_index_N: int
    :param V_dim: dim V.
    :type V_dim: int
    :param codim: dim - dim V.
    :type codim: int
    :param per_shift_frame_bounds: (A, B) of {f_k}_{k > N + l} as a frame for V; A is 0
        when the shifted tail does not span V.
    :type per_shift_frame_bounds: list[tuple[float, float]]
    :param stable: Every V_l equals V and every lower bound is positive. The trivial
        tail space {0} counts as stable when all V_l are trivial.
    :type stable: bool
    """

    start_index_N: int
    V_dim: int
    codim: int
    per_shift_frame_bounds: list[tuple[float, float]]
    stable: bool

    def to_json(self) -> dict:
        return {
            "start_index_N": self.start_index_N,
            "V_dim": self.V_dim,
            "codim": self.codim,
            "per_shift_frame_bounds": [list(p) for p in self.per_shift_frame_bounds],
            "stable": self.stable,
        }


def _tail(F: VectorFamily, start: int) -> np.ndarray:
    return F.matrix[:, start:]


def tail_space_report(
    F: VectorFamily,
    T,
    N: int,
    L: int = 2,
    tol: Tolerance = Tolerance.DEFAULT,
    angle_tol: float = ANGLE_TOL,
) -> TailSpaceReport:
    """Compare the tail spaces of the orbit truncation `F` of `T` for shifts 0..L.

    :param F: Orbit truncation {T^n phi}_{n < M}.
    :type F: VectorFamily
    :param T: Operator generating `F`.
    :type T: array_like
    :param N: Start index, V = span{f_k : k > N}.
    :type N: int
    :param L: Largest shift tested.
    :type L: int (default=2)
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :param angle_tol: Largest principal angle for two subspaces to count as equal.
    :type angle_tol: float (default=1e-7)
    :raises InsufficientTruncation: If M < N + L + dim.
    """
    T = as_square(T)
    if T.shape[0] != F.dim:
        raise LengthMismatch(f"Operator acts on C^{T.shape[0]}, family lives in C^{F.dim}.")
    if N < 0 or L < 1:
        raise InvalidInput(f"Need N >= 0 and L >= 1, got N={N}, L={L}.")
    if F.size < N + L + F.dim:
        raise InsufficientTruncation(
            f"Truncation has {F.size} elements, tail analysis at N={N}, L={L} needs {N + L + F.dim}."
        )
    V = range_basis(_tail(F, N), tol)
    bounds = []
    stable = True
    for shift in range(L + 1):
        tail = _tail(F, N + shift)
        V_shift = range_basis(tail, tol)
        same = same_subspace(V, V_shift, angle_tol)
        if V.shape[1] == 0:
            bounds.append((0.0, 0.0))
            stable = stable and same
            continue
        report = frame_bounds(VectorFamily(tail), tol)
        A = report.lower_bound_A if same else 0.0
        bounds.append((A, report.upper_bound_B))
        stable = stable and same and A > 0.0
    report = TailSpaceReport(
        start_index_N=N,
        V_dim=V.shape[1],
        codim=F.dim - V.shape[1],
        per_shift_frame_bounds=bounds,
        stable=stable,
    )
    logger.debug("tail_space_report(%s): N=%d dim V=%d stable=%s", F.label, N, report.V_dim, stable)
    return report


def tail_stabilization_index(F: VectorFamily, T, tol: Tolerance = Tolerance.DEFAULT, L: int = 2) -> int:
    """Smallest N whose tail space report is stable, q(T) for cyclic orbits.

    :raises InsufficientTruncation: If no N supported by the truncation is stable.
    """
    N = 0
    while F.size >= N + L + F.dim:
        if tail_space_report(F, T, N, L, tol).stable:
            return N
        N += 1
    raise InsufficientTruncation(
        f"No stable tail space within the {F.size} elements of '{F.label}'."
    )


def contains_next(F: VectorFamily, N: int, tol: Tolerance = Tolerance.DEFAULT) -> bool:
    """Whether T^N phi = f_{N+1} lies in span{f_k : k > N + 1}, decided by rank.

    :raises InsufficientTruncation: If the truncation ends at f_{N+1}.
    """
    if N < 0:
        raise InvalidInput(f"N must be nonnegative, got {N}.")
    if F.size <= N + 1:
        raise InsufficientTruncation(f"'{F.label}' has no elements after f_{N + 1}.")
    rest = F.matrix[:, N + 1:]
    with_next = F.matrix[:, N:]
    return numerical_rank(with_next, tol) == numerical_rank(rest, tol)


def block_removal_check(F: VectorFamily, N: int, ell: int, tol: Tolerance = Tolerance.DEFAULT) -> FrameReport:
    """Frame report of {f_k}_{k <= N} together with {f_k}_{k >= N + ell}, i.e. `F` with
    the block f_{N+1}, ..., f_{N+ell-1} removed. `ell = 1` removes nothing.

    :param F: Family.
    :type F: VectorFamily
    :param N: Last kept element before the gap.
    :type N: int
    :param ell: First kept element after the gap is f_{N+ell}.
    :type ell: int
    :raises IndexOutOfRange: Unless N >= 1, ell >= 1 and N + ell <= len(F).
    """
    if N < 1 or ell < 1 or N + ell > F.size:
        raise IndexOutOfRange(
            f"Block removal with N={N}, ell={ell} needs 1 <= N, 1 <= ell, N + ell <= {F.size}."
        )
    kept = np.hstack([F.matrix[:, :N], F.matrix[:, N + ell - 1:]])
    return frame_bounds(VectorFamily(kept, label=f"{F.label} without block"), tol)


def surjectivity_injectivity_on_tail(
    T, V_basis, tol: Tolerance = Tolerance.DEFAULT
) -> tuple[bool, bool, bool]:
    """Invariance of V under `T` and surjectivity/injectivity of the restriction.

    :param T: Square matrix.
    :type T: array_like
    :param V_basis: Orthonormal basis of V as columns.
    :type V_basis: array_like
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :return: `(invariant, surjective, injective)`.
    """
    T = as_square(T)
    V = np.asarray(V_basis, dtype=complex)
    if V.ndim != 2 or V.shape[0] != T.shape[0]:
        raise LengthMismatch("Subspace basis must be a matrix with one row per coordinate.")
    r = V.shape[1]
    if r == 0:
        return True, True, True
    V = as_matrix(V, name="subspace basis")
    if operator_norm(V.conj().T @ V - np.eye(r)) > tol.equality_atol:
        raise InvalidInput("Subspace basis does not have orthonormal columns.")
    TV = T @ V
    scale = max(1.0, operator_norm(T))
    invariant = operator_norm(TV - projector(V) @ TV) <= tol.residual_atol * scale
    surjective = numerical_rank(V.conj().T @ TV, tol) == r
    injective = numerical_rank(TV, tol) == r
    logger.debug(
        "surjectivity_injectivity_on_tail: invariant=%s surjective=%s injective=%s",
        invariant, surjective, injective,
    )
    return bool(invariant), surjective, injective
