"""
Dense complex linear algebra kernel used by every other subpackage.

All floating point decisions (numerical rank, residual acceptance, equality) are
governed by one `Tolerance` record that is passed explicitly.

author: Aaron Gobeyn
"""

import logging
from dataclasses import dataclass, field, replace
from typing import ClassVar

import numpy as np
import scipy.linalg

from ..errors import InvalidInput, SingularOperator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tolerance(object):
    """Thresholds for every numerical decision in the package.

    :param rank_rtol: Singular values below `rank_rtol * sigma_max` count as zero.
    :type rank_rtol: float (default=1e-9)
    :param residual_atol: Acceptance threshold for residuals (duality, shift property).
    :type residual_atol: float (default=1e-8)
    :param equality_atol: Threshold for comparing two real quantities.
    :type equality_atol: float (default=1e-8)
    """

    rank_rtol: float = 1e-9
    residual_atol: float = 1e-8
    equality_atol: float = 1e-8

    DEFAULT: ClassVar["Tolerance"]

    def __post_init__(self):
        for name in ("rank_rtol", "residual_atol", "equality_atol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise InvalidInput(f"Tolerance.{name} = {value!r} must lie in (0, 1).")

    def with_overrides(self, **overrides) -> "Tolerance":
        """Return a copy where the fields given as keyword arguments are replaced,
        `None` values are ignored.
        """
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def rank_threshold(self, sigma_max: float) -> float:
        """Absolute cut-off for singular values of a matrix with largest singular
        value `sigma_max`."""
        return self.rank_rtol * sigma_max


Tolerance.DEFAULT = Tolerance()


@dataclass(frozen=True)
class SpectralFactorization(object):
    """Eigen-decomposition M = V diag(eigenvalues) V* of a Hermitian matrix, with the
    eigenvalues in descending order."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Convert `M` into a nonempty, finite, two dimensional complex array.

    :param M: Anything `numpy.asarray` understands.
    :type M: array_like
    :param name: Name used in error messages.
    :type name: str (default="matrix")
    """
    A = np.asarray(M, dtype=complex)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.ndim != 2 or A.size == 0:
        raise InvalidInput(f"{name} must be a nonempty 2D array, got shape {A.shape}.")
    if not np.all(np.isfinite(A)):
        raise InvalidInput(f"{name} has non-finite entries.")
    return A


def as_square(M, name: str = "operator") -> np.ndarray:
    """Like `as_matrix` but additionally require a square shape."""
    A = as_matrix(M, name=name)
    if A.shape[0] != A.shape[1]:
        raise InvalidInput(f"{name} must be square, got shape {A.shape}.")
    return A


def svd(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin singular value decomposition M = U diag(sigma) V*.

    :param M: Matrix to decompose.
    :type M: array_like
    :return: `(U, sigma, V)` with orthonormal columns in U and V and sigma descending.
    """
    A = as_matrix(M)
    U, s, Vh = scipy.linalg.svd(A, full_matrices=False, lapack_driver="gesvd")
    return U, s, Vh.conj().T


def singular_values(M) -> np.ndarray:
    """Singular values of `M` in descending order."""
    return scipy.linalg.svdvals(as_matrix(M))


def rank_from_singular_values(s: np.ndarray, tol: Tolerance) -> int:
    """The one numerical rank rule of the package: count singular values strictly
    above `rank_rtol * sigma_max`. The zero matrix has rank 0.
    """
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_threshold(s[0])))


def numerical_rank(M, tol: Tolerance = Tolerance.DEFAULT) -> int:
    """Numerical rank of `M`, see `rank_from_singular_values`.

    :param M: Matrix.
    :type M: array_like
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    return rank_from_singular_values(singular_values(M), tol)


def nullspace_basis(M, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical kernel of `M`. The number of
    columns equals `cols(M) - numerical_rank(M)`.

    :param M: Matrix whose kernel we want.
    :type M: array_like
    :param tol: Tolerances, only `rank_rtol` is used.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    A = as_matrix(M)
    _, s, Vh = scipy.linalg.svd(A, full_matrices=True, lapack_driver="gesvd")
    r = rank_from_singular_values(s, tol)
    return Vh[r:].conj().T


def range_basis(M, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical column space of `M`.

    :param M: Matrix whose range we want.
    :type M: array_like
    :param tol: Tolerances, only `rank_rtol` is used.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    U, s, _ = svd(M)
    return U[:, : rank_from_singular_values(s, tol)]


def pinv(M, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
    """Moore-Penrose pseudo-inverse, singular values at or below the rank threshold are
    treated as zero.

    :param M: Matrix to invert.
    :type M: array_like
    :param tol: Tolerances, only `rank_rtol` is used.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    U, s, V = svd(M)
    r = rank_from_singular_values(s, tol)
    return (V[:, :r] / s[:r]) @ U[:, :r].conj().T


def hermitian_part(M) -> np.ndarray:
    A = as_square(M, name="matrix")
    return 0.5 * (A + A.conj().T)


def is_hermitian(M, tol: Tolerance = Tolerance.DEFAULT) -> bool:
    """Check ||M - M*|| <= equality_atol * max(1, ||M||)."""
    A = as_square(M, name="matrix")
    scale = max(1.0, operator_norm(A))
    return bool(operator_norm(A - A.conj().T) <= tol.equality_atol * scale)


def hermitian_eig(M) -> SpectralFactorization:
    """Eigen-decomposition of the Hermitian part of `M`, eigenvalues descending.

    :param M: Square matrix, assumed Hermitian up to rounding.
    :type M: array_like
    """
    w, V = scipy.linalg.eigh(hermitian_part(M))
    return SpectralFactorization(eigenvalues=w[::-1].copy(), eigenvectors=V[:, ::-1].copy())


def _positive_spectrum(S, tol: Tolerance) -> SpectralFactorization:
    factorization = hermitian_eig(S)
    lam = factorization.eigenvalues
    if lam[0] <= 0.0 or lam[-1] <= tol.rank_rtol * lam[0]:
        raise SingularOperator(
            f"Smallest eigenvalue {lam[-1]:.3e} is below the threshold "
            f"{tol.rank_rtol:.1e} * {lam[0]:.3e}."
        )
    return factorization


def inv_sqrt_psd(S, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
    """Inverse principal square root S^{-1/2} of a Hermitian positive definite matrix.

    :param S: Hermitian positive definite matrix.
    :type S: array_like
    :param tol: Tolerances, the smallest eigenvalue must exceed `rank_rtol` times the
        largest one.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :raises SingularOperator: If `S` is numerically singular.
    """
    f = _positive_spectrum(S, tol)
    V = f.eigenvectors
    R = (V / np.sqrt(f.eigenvalues)) @ V.conj().T
    return 0.5 * (R + R.conj().T)


def sqrt_psd(S, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix, negative
    rounding noise in the spectrum is clipped to zero."""
    f = hermitian_eig(S)
    lam = np.clip(f.eigenvalues, 0.0, None)
    if f.eigenvalues[-1] < -tol.equality_atol * max(1.0, abs(f.eigenvalues[0])):
        raise SingularOperator(
            f"Matrix is not positive semidefinite, eigenvalue {f.eigenvalues[-1]:.3e}."
        )
    V = f.eigenvectors
    R = (V * np.sqrt(lam)) @ V.conj().T
    return 0.5 * (R + R.conj().T)


def operator_norm(M) -> float:
    """Spectral norm, the largest singular value.

    :param M: Matrix.
    :type M: array_like
    """
    return float(singular_values(M)[0])


def projector(Q: np.ndarray) -> np.ndarray:
    """Orthogonal projector Q Q* onto the span of the orthonormal columns of `Q`."""
    return Q @ Q.conj().T
