"""
Diagonal operators T = diag(lambda_1, ..., lambda_d) with eigenvalues in the open unit
disc, their generator phi_k = sqrt(1 - |lambda_k|^2), and the frame operator of the
infinite orbit {T^n phi}_{n >= 0}, both in closed form and as a certified truncation.

The eigenbasis is the canonical basis; `change_basis` moves a family to any other
orthonormal basis.

author: Aaron Gobeyn
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.stats

from ..errors import (
    IndexOutOfRange,
    InvalidAlpha,
    InvalidInput,
    LengthMismatch,
    ModulusOutOfRange,
    SchemaError,
    TailBoundUnreachable,
)
from ..frames.family import VectorFamily
from ..linalg.core import Tolerance, as_square, hermitian_eig, operator_norm
from ..utils import decode_vector, encode_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DiagonalModel(object):
    """The operator T = sum_k lambda_k e_k e_k* on C^d.

    :param lambdas: Eigenvalues, each of modulus strictly below one.
    :type lambdas: array_like
    :raises ModulusOutOfRange: If some |lambda_k| >= 1.
    """

    lambdas: np.ndarray = field()

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=complex).ravel().copy()
        if lam.size == 0:
            raise InvalidInput("A diagonal model needs at least one eigenvalue.")
        if not np.all(np.isfinite(lam)):
            raise InvalidInput("Eigenvalues must be finite.")
        for k, value in enumerate(lam, start=1):
            if abs(value) >= 1.0:
                raise ModulusOutOfRange(
                    f"|lambda_{k}| = {abs(value):.6g} violates |lambda_k| < 1."
                )
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    @property
    def dim(self) -> int:
        return self.lambdas.size

    @property
    def spectral_radius(self) -> float:
        return float(np.abs(self.lambdas).max())

    @property
    def operator(self) -> np.ndarray:
        return np.diag(self.lambdas)

    def to_json(self) -> dict:
        return {"lambdas": encode_vector(self.lambdas)}

    @classmethod
    def from_json(cls, document: dict) -> "DiagonalModel":
        """Parse `{"lambdas": [[re, im], ...]}`.

        :raises SchemaError: If the document has no usable `lambdas` list.
        """
        if not isinstance(document, dict) or "lambdas" not in document:
            raise SchemaError("A model document must be an object with a 'lambdas' field.")
        return cls(decode_vector(document["lambdas"], where="lambdas"))


def sample_carleson_sequence(alpha: float, dim: int) -> DiagonalModel:
    """The model with lambda_k = 1 - alpha^{-k}, k = 1, ..., dim.

    :param alpha: Base, strictly larger than one.
    :type alpha: float
    :param dim: Number of eigenvalues.
    :type dim: int
    :raises InvalidAlpha: If `alpha <= 1`.
    """
    if not (alpha > 1.0) or not math.isfinite(alpha):
        raise InvalidAlpha(f"alpha = {alpha!r} violates alpha > 1.")
    if dim < 1:
        raise InvalidInput(f"Dimension must be positive, got {dim}.")
    k = np.arange(1, dim + 1, dtype=float)
    return DiagonalModel(1.0 - alpha ** (-k))


def generator(model: DiagonalModel) -> np.ndarray:
    """phi = sum_k sqrt(1 - |lambda_k|^2) e_k, the generator whose orbit is a frame."""
    return np.sqrt(1.0 - np.abs(model.lambdas) ** 2).astype(complex)


def _generator_or_default(model: DiagonalModel, phi) -> np.ndarray:
    if phi is None:
        return generator(model)
    phi = np.asarray(phi, dtype=complex).ravel()
    if phi.size != model.dim:
        raise LengthMismatch(f"Generator has dimension {phi.size}, model has {model.dim}.")
    return phi


def closed_form_frame_operator(model: DiagonalModel, phi=None) -> np.ndarray:
    """Frame operator of the full orbit {T^n phi}_{n >= 0}, summed as a geometric
    series: S_jk = phi_j conj(phi_k) / (1 - lambda_j conj(lambda_k)).

    :param model: Diagonal model.
    :type model: DiagonalModel
    :param phi: Generator, defaults to `generator(model)`.
    :type phi: array_like | None (default=None)
    """
    phi = _generator_or_default(model, phi)
    lam = model.lambdas
    return np.outer(phi, phi.conj()) / (1.0 - np.outer(lam, lam.conj()))


def certified_depth(rho: float, phi_norm_sq: float, tail_tol: float) -> int:
    """Smallest N >= 1 with phi_norm_sq * rho^{2N} / (1 - rho^2) <= tail_tol, which
    bounds the part of the frame operator of {T^n phi} carried by n >= N whenever
    ||T^n phi|| <= rho^n ||phi||.

    :param rho: Contraction ratio.
    :type rho: float
    :param phi_norm_sq: ||phi||^2.
    :type phi_norm_sq: float
    :param tail_tol: Required bound on the tail.
    :type tail_tol: float
    :raises TailBoundUnreachable: If `rho >= 1`.
    """
    if not (tail_tol > 0.0):
        raise InvalidInput(f"Tail tolerance must be positive, got {tail_tol!r}.")
    if rho >= 1.0:
        raise TailBoundUnreachable(f"rho = {rho:.6g} violates rho < 1, the tail does not decay.")
    if rho == 0.0 or phi_norm_sq == 0.0:
        return 1

    def bound(n: int) -> float:
        return phi_norm_sq * rho ** (2 * n) / (1.0 - rho ** 2)

    depth = max(1, math.ceil(math.log(tail_tol * (1.0 - rho ** 2) / phi_norm_sq) / (2.0 * math.log(rho))))
    # NOTE: the logarithm can be off by one in floating point
    while bound(depth) > tail_tol:
        depth += 1
    while depth > 1 and bound(depth - 1) <= tail_tol:
        depth -= 1
    return depth


def model_orbit(model: DiagonalModel, tail_tol: float, phi=None, label: str | None = None) -> VectorFamily:
    """Truncation {T^n phi}_{n < N} at the certified depth N, flagged as the truncation of
    an infinite orbit in its metadata.

    :param model: Diagonal model.
    :type model: DiagonalModel
    :param tail_tol: Bound on ||S_N - S||.
    :type tail_tol: float
    :param phi: Generator, defaults to `generator(model)`.
    :type phi: array_like | None (default=None)
    """
    phi = _generator_or_default(model, phi)
    depth = certified_depth(model.spectral_radius, float(np.vdot(phi, phi).real), tail_tol)
    logger.debug("model_orbit: rho=%.6f tail=%.1e depth=%d", model.spectral_radius, tail_tol, depth)
    return VectorFamily.orbit(
        model.operator,
        phi,
        depth,
        label=label or f"diagonal orbit d={model.dim}",
        metadata={
            "certified_depth": depth,
            "tail_tol": tail_tol,
            "infinite_model": True,
            "spectral_radius": model.spectral_radius,
        },
    )


def iterated_frame_operator(model: DiagonalModel, tail_tol: float, phi=None) -> tuple[np.ndarray, int]:
    """Frame operator of the orbit truncated at the certified depth.

    :param model: Diagonal model.
    :type model: DiagonalModel
    :param tail_tol: Bound on the distance to the frame operator of the full orbit.
    :type tail_tol: float
    :param phi: Generator, defaults to `generator(model)`.
    :type phi: array_like | None (default=None)
    :return: `(S, depth)`.
    :raises TailBoundUnreachable: If the spectral radius is not below one.
    """
    F = model_orbit(model, tail_tol, phi)
    U = F.matrix
    return U @ U.conj().T, F.size


def infinite_frame_bounds(model: DiagonalModel, phi=None) -> tuple[float, float]:
    """Optimal bounds (A, B) of the full orbit, the extreme eigenvalues of the closed
    form frame operator. A is 0 when the orbit is not a frame."""
    lam = hermitian_eig(closed_form_frame_operator(model, phi)).eigenvalues
    return max(float(lam[-1]), 0.0), float(lam[0])


def drop_component(model: DiagonalModel, phi, position: int) -> np.ndarray:
    """The generator `phi` with coordinate `position` (1-based) set to zero. Its orbit
    misses e_position, so it is not a frame for C^d.

    :raises IndexOutOfRange: If `position` is outside 1..dim.
    """
    phi = _generator_or_default(model, phi)
    if not (1 <= position <= model.dim):
        raise IndexOutOfRange(f"Coordinate {position} is outside 1..{model.dim}.")
    psi = phi.copy()
    psi[position - 1] = 0.0
    return psi


def shrink_operator(T, eps: float) -> np.ndarray:
    """W = (1 - eps) T, so ||T - W|| = eps ||T||.

    :param T: Square matrix.
    :type T: array_like
    :param eps: Shrink factor in (0, 1).
    :type eps: float
    """
    if not (0.0 < eps < 1.0):
        raise InvalidInput(f"eps = {eps!r} violates 0 < eps < 1.")
    return (1.0 - eps) * as_square(T)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar distributed unitary matrix of size `dim` drawn from `rng`."""
    if dim < 1:
        raise InvalidInput(f"Dimension must be positive, got {dim}.")
    if dim == 1:
        return np.array([[np.exp(2j * np.pi * rng.uniform())]])
    return scipy.stats.unitary_group.rvs(dim, random_state=rng)


def change_basis(F: VectorFamily, Q, tol: Tolerance = Tolerance.DEFAULT) -> VectorFamily:
    """Apply the unitary `Q` to every element of `F`; frame bounds do not change.

    :param F: Family.
    :type F: VectorFamily
    :param Q: Unitary matrix acting on C^dim.
    :type Q: array_like
    :param tol: Tolerances, `Q* Q` must be the identity up to `equality_atol`.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    Q = as_square(Q)
    if Q.shape[0] != F.dim:
        raise LengthMismatch(f"Basis change acts on C^{Q.shape[0]}, family lives in C^{F.dim}.")
    if operator_norm(Q.conj().T @ Q - np.eye(F.dim)) > tol.equality_atol:
        raise InvalidInput("Basis change matrix is not unitary.")
    return VectorFamily(Q @ F.matrix, label=f"{F.label} (rotated)", metadata=F.metadata)


def is_frame_operator_model(model: DiagonalModel, tol: Tolerance = Tolerance.DEFAULT) -> bool:
    """Whether diag(lambda) is a frame operator, i.e. every lambda_k is real and
    positive; it is then the frame operator of {sqrt(lambda_k) e_k}."""
    lam = model.lambdas
    return bool(np.all(np.abs(lam.imag) <= tol.equality_atol) and np.all(lam.real > 0.0))
