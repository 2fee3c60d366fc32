"""
Frame, Bessel and Riesz diagnostics of finite vector families in C^d, frame
operators and tight frame constructions.

A family "is a frame" when it is a frame for the whole of C^d; a family that is a
frame for its own span is a "frame sequence". The lower bound A reported for a frame
sequence is the smallest nonzero squared singular value of the synthesis matrix.

author: Aaron Gobeyn
"""

import logging
from dataclasses import asdict, dataclass

import numpy as np

from ..errors import NotAFrameOperator, SingularOperator
from ..linalg.core import (
    Tolerance,
    as_square,
    hermitian_eig,
    inv_sqrt_psd,
    is_hermitian,
    rank_from_singular_values,
    singular_values,
    sqrt_psd,
)
from .family import VectorFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameReport(object):
    """Summary of the frame properties of a family.

    :param lower_bound_A: Optimal lower bound on the span (0 for the zero family).
    :type lower_bound_A: float
    :param upper_bound_B: Optimal upper (Bessel) bound.
    :type upper_bound_B: float
    :param is_frame: Frame for the whole space C^dim.
    :type is_frame: bool
    :param is_tight: Frame with A = B up to `equality_atol * B`.
    :type is_tight: bool
    :param is_riesz_basis: Frame without excess.
    :type is_riesz_basis: bool
    :param excess: N minus the numerical rank of the synthesis matrix.
    :type excess: int
    :param span_dim: Numerical rank of the synthesis matrix.
    :type span_dim: int
    :param dim: Dimension of the ambient space.
    :type dim: int
    :param size: Number of elements N.
    :type size: int
    """

    lower_bound_A: float
    upper_bound_B: float
    is_frame: bool
    is_tight: bool
    is_riesz_basis: bool
    excess: int
    span_dim: int
    dim: int
    size: int

    @property
    def is_frame_sequence(self) -> bool:
        return self.span_dim > 0

    def to_json(self) -> dict:
        return asdict(self)


def synthesis_matrix(F: VectorFamily) -> np.ndarray:
    """The d x N matrix U whose k-th column is f_k, so U c = sum_k c_k f_k.

    :param F: Vector family.
    :type F: VectorFamily
    """
    return np.array(F.matrix)


def frame_bounds(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> FrameReport:
    """Optimal frame bounds and classification of `F`.

    B is the squared largest singular value of the synthesis matrix; A is the squared
    smallest singular value above the rank threshold, i.e. the lower bound of `F` as a
    frame for its span.

    :param F: Vector family.
    :type F: VectorFamily
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    s = singular_values(F.matrix)
    span_dim = rank_from_singular_values(s, tol)
    B = float(s[0] ** 2)
    A = float(s[span_dim - 1] ** 2) if span_dim > 0 else 0.0
    is_frame = span_dim == F.dim and A > 0.0
    is_tight = is_frame and abs(A - B) <= tol.equality_atol * B
    excess = F.size - span_dim
    report = FrameReport(
        lower_bound_A=A,
        upper_bound_B=B,
        is_frame=is_frame,
        is_tight=is_tight,
        is_riesz_basis=is_frame and excess == 0,
        excess=excess,
        span_dim=span_dim,
        dim=F.dim,
        size=F.size,
    )
    logger.debug(
        "frame_bounds(%s): A=%.6e B=%.6e span=%d/%d excess=%d",
        F.label, A, B, span_dim, F.dim, excess,
    )
    return report


def full_space_lower_bound(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> float:
    """Lower frame bound of `F` with respect to all of C^d, 0 unless `F` is a frame."""
    report = frame_bounds(F, tol)
    return report.lower_bound_A if report.is_frame else 0.0


def frame_operator(F: VectorFamily) -> np.ndarray:
    """Frame operator S = U U*, Hermitian positive semidefinite.

    :param F: Vector family.
    :type F: VectorFamily
    """
    U = F.matrix
    return U @ U.conj().T


def canonical_tight(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> VectorFamily:
    """Canonical tight (Parseval) frame {S^{-1/2} f_k} of a frame for C^d.

    :param F: Frame for C^d.
    :type F: VectorFamily
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :raises SingularOperator: If `F` does not span C^d.
    """
    R = inv_sqrt_psd(frame_operator(F), tol)
    return VectorFamily(R @ F.matrix, label=f"{F.label} (canonical tight)", metadata=F.metadata)


def tight_orbit_operator(F: VectorFamily, T, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
    """The operator S^{-1/2} T S^{1/2} which generates the canonical tight frame of an
    orbit: S^{-1/2} T^n phi = (S^{-1/2} T S^{1/2})^n S^{-1/2} phi.

    :param F: Orbit family {T^n phi}, a frame for C^d.
    :type F: VectorFamily
    :param T: Operator generating the orbit.
    :type T: array_like
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    S = frame_operator(F)
    return inv_sqrt_psd(S, tol) @ as_square(T) @ sqrt_psd(S, tol)


def frame_operator_factorization(T, tol: Tolerance = Tolerance.DEFAULT) -> VectorFamily:
    """A family whose frame operator is `T`, namely the columns of the principal
    square root of `T`. Only positive invertible operators are frame operators.

    :param T: Square matrix.
    :type T: array_like
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :raises NotAFrameOperator: If `T` is not Hermitian positive definite.
    """
    T = as_square(T)
    if not is_hermitian(T, tol):
        raise NotAFrameOperator("Operator is not Hermitian, hence not positive.")
    lam = hermitian_eig(T).eigenvalues
    if lam[0] <= 0.0 or lam[-1] <= tol.rank_rtol * lam[0]:
        raise NotAFrameOperator(
            f"Operator is not positive definite, smallest eigenvalue {lam[-1]:.3e}."
        )
    try:
        root = sqrt_psd(T, tol)
    except SingularOperator as exc:
        raise NotAFrameOperator(str(exc)) from exc
    return VectorFamily(root, label="frame operator factor")

