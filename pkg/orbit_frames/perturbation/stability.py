"""
Perturbations phi -> phi + phi~ of the generator of an orbit frame, where phi~ lives in a
T-invariant subspace V on which T is a strict contraction.

With ||T v|| <= mu ||v|| on V, the difference orbit {T^n phi~} is Bessel with bound
||phi~||^2 / (1 - mu^2), so the perturbed orbit stays a frame as long as
||phi~|| < sqrt(A (1 - mu^2)).

author: Aaron Gobeyn
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import IndexOutOfRange, InvalidContraction, InvalidInput, LengthMismatch, NotInSubspace
from ..frames.analysis import FrameReport, frame_bounds
from ..frames.family import VectorFamily
from ..linalg.core import Tolerance, as_square, operator_norm, projector
from ..spectral.model import DiagonalModel, certified_depth, generator, infinite_frame_bounds

logger = logging.getLogger(__name__)


def perturbation_radius(A: float, mu: float) -> float:
    """sqrt(A (1 - mu^2)), the largest admissible norm of a perturbation.

    :param A: Lower frame bound of the unperturbed orbit, positive.
    :type A: float
    :param mu: Contraction constant of T on V.
    :type mu: float
    :raises InvalidContraction: If `mu` is not in [0, 1).
    """
    if not (0.0 <= mu < 1.0):
        raise InvalidContraction(f"mu = {mu!r} violates 0 <= mu < 1.")
    if not (A > 0.0):
        raise InvalidInput(f"Lower frame bound must be positive, got A = {A!r}.")
    return math.sqrt(A * (1.0 - mu ** 2))


@dataclass(frozen=True, eq=False)
class PerturbationSetup(object):
    """Orbit {T^n phi} with lower frame bound `A` and a subspace V (orthonormal columns of
    `V_basis`) that T maps into itself with ||T|_V|| = mu < 1.

    Build it with `PerturbationSetup.certify`, which computes `mu` itself.
    """

    T: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)
    V_basis: np.ndarray = field(repr=False)
    mu: float
    A: float

    @property
    def radius(self) -> float:
        return perturbation_radius(self.A, self.mu)

    @classmethod
    def certify(cls, T, phi, V_basis, A: float, tol: Tolerance = Tolerance.DEFAULT) -> "PerturbationSetup":
        """Validate the invariance of V and certify mu as the norm of the compression
        V* T V.

        :param T: Square matrix.
        :type T: array_like
        :param phi: Generator of the unperturbed orbit.
        :type phi: array_like
        :param V_basis: Orthonormal basis of V as columns.
        :type V_basis: array_like
        :param A: Lower frame bound of {T^n phi}.
        :type A: float
        :param tol: Tolerances.
        :type tol: Tolerance (default=Tolerance.DEFAULT)
        :raises InvalidInput: If V is not invariant or its basis is not orthonormal.
        :raises InvalidContraction: If the certified mu is not below one.
        """
        T = as_square(T)
        phi = np.asarray(phi, dtype=complex).ravel()
        V = np.asarray(V_basis, dtype=complex)
        if phi.size != T.shape[0] or V.ndim != 2 or V.shape[0] != T.shape[0]:
            raise LengthMismatch("Operator, generator and subspace basis must share the dimension.")
        r = V.shape[1]
        if r > 0 and operator_norm(V.conj().T @ V - np.eye(r)) > tol.equality_atol:
            raise InvalidInput("Subspace basis does not have orthonormal columns.")
        if r == 0:
            mu = 0.0
        else:
            TV = T @ V
            leak = operator_norm(TV - projector(V) @ TV)
            if leak > tol.residual_atol:
                raise InvalidInput(f"V is not invariant under T, ||(I - P_V) T P_V|| = {leak:.3e}.")
            mu = operator_norm(V.conj().T @ TV)
        if mu >= 1.0:
            raise InvalidContraction(f"Certified mu = {mu:.6g} violates mu < 1.")
        setup = cls(T=T, phi=phi, V_basis=V, mu=mu, A=float(A))
        logger.debug("PerturbationSetup.certify: dim V=%d mu=%.6f A=%.6e", r, mu, A)
        return setup

    def check_in_subspace(self, phi_tilde, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
        """Return `phi_tilde` as a vector after checking that it lies in V.

        :raises NotInSubspace: If its distance to V exceeds `residual_atol * max(1, ||phi~||)`.
        """
        v = np.asarray(phi_tilde, dtype=complex).ravel()
        if v.size != self.phi.size:
            raise LengthMismatch(f"Perturbation has dimension {v.size}, expected {self.phi.size}.")
        norm = float(np.linalg.norm(v))
        distance = float(np.linalg.norm(v - projector(self.V_basis) @ v)) if self.V_basis.shape[1] else norm
        if distance > tol.residual_atol * max(1.0, norm):
            raise NotInSubspace(f"Perturbation is at distance {distance:.3e} from V.")
        return v

    def orbit_depth(self, tail_tol: float, vector) -> int:
        """Certified depth for the orbit of `vector`, using ||T|| as contraction ratio."""
        rho = operator_norm(self.T)
        v = np.asarray(vector, dtype=complex).ravel()
        return certified_depth(rho, float(np.vdot(v, v).real), tail_tol)


def spectral_setup(model: DiagonalModel, block: int, tol: Tolerance = Tolerance.DEFAULT) -> PerturbationSetup:
    """The diagonal model with V = span{e_1, ..., e_block}; mu is then the largest
    |lambda_k| for k <= block, and A comes from the closed form frame operator.

    :param model: Diagonal model.
    :type model: DiagonalModel
    :param block: Number of leading coordinates spanning V.
    :type block: int
    :raises IndexOutOfRange: Unless 1 <= block <= dim.
    """
    if not (1 <= block <= model.dim):
        raise IndexOutOfRange(f"Block size {block} is outside 1..{model.dim}.")
    A, _ = infinite_frame_bounds(model)
    V = np.eye(model.dim, dtype=complex)[:, :block]
    return PerturbationSetup.certify(model.operator, generator(model), V, A, tol)


def perturbation_lower_bound(setup: PerturbationSetup, norm_phi_tilde: float) -> float:
    """(sqrt(A) - ||phi~|| / sqrt(1 - mu^2))^2, or 0 once the difference is negative."""
    gap = math.sqrt(setup.A) - norm_phi_tilde / math.sqrt(1.0 - setup.mu ** 2)
    return gap ** 2 if gap > 0.0 else 0.0


def _orbit_matrix(T: np.ndarray, psi: np.ndarray, depth: int) -> np.ndarray:
    return VectorFamily.orbit(T, psi, depth).matrix


def perturbed_orbit_test(
    setup: PerturbationSetup,
    phi_tilde,
    tail_tol: float = 1e-10,
    tol: Tolerance = Tolerance.DEFAULT,
    depth: int | None = None,
) -> FrameReport:
    """Frame report of the truncated orbit {T^n (phi + phi~)}.

    :param setup: Certified setup.
    :type setup: PerturbationSetup
    :param phi_tilde: Perturbation in V.
    :type phi_tilde: array_like
    :param tail_tol: Tail bound used for the certified depth when `depth` is not given.
    :type tail_tol: float (default=1e-10)
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :param depth: Fixed truncation depth; required when ||T|| >= 1.
    :type depth: int | None (default=None)
    :raises NotInSubspace: If `phi_tilde` is not in V.
    """
    v = setup.check_in_subspace(phi_tilde, tol)
    psi = setup.phi + v
    if depth is None:
        depth = setup.orbit_depth(tail_tol, psi)
    F = VectorFamily.orbit(setup.T, psi, depth, label="perturbed orbit")
    report = frame_bounds(F, tol)
    norm = float(np.linalg.norm(v))
    if norm < setup.radius:
        logger.debug("perturbed_orbit_test: ||phi~||=%.3e inside radius %.3e, frame=%s", norm, setup.radius, report.is_frame)
    else:
        logger.info("perturbed_orbit_test: ||phi~||=%.3e outside radius %.3e, report is informational", norm, setup.radius)
    return report


def perturbation_energy(setup: PerturbationSetup, phi_tilde, depth: int, tol: Tolerance = Tolerance.DEFAULT) -> float:
    """sum_{n < depth} ||T^n phi~||^2, bounded by ||phi~||^2 / (1 - mu^2).

    :raises NotInSubspace: If `phi_tilde` is not in V.
    """
    if depth < 1:
        raise InvalidInput(f"Depth must be positive, got {depth}.")
    v = setup.check_in_subspace(phi_tilde, tol)
    return float(np.sum(np.abs(_orbit_matrix(setup.T, v, depth)) ** 2))


def bessel_bound_of_orbit(T, psi, depth: int) -> float:
    """Optimal Bessel bound of {T^n psi}_{n < depth}, the squared largest singular value
    of its synthesis matrix.

    :param T: Square matrix.
    :type T: array_like
    :param psi: Generator.
    :type psi: array_like
    :param depth: Number of orbit elements.
    :type depth: int
    """
    if depth < 1:
        raise InvalidInput(f"Depth must be positive, got {depth}.")
    return operator_norm(_orbit_matrix(as_square(T), np.asarray(psi, dtype=complex).ravel(), depth)) ** 2


def difference_operator_tail(
    setup: PerturbationSetup, phi_tilde, N: int, depth: int, tol: Tolerance = Tolerance.DEFAULT
) -> tuple[float, float]:
    """Distance between the synthesis operators of {T^n phi~}_{n < depth} and of its
    first N + 1 elements, together with the bound ||phi~|| mu^{N+1} / sqrt(1 - mu^2).

    :param setup: Certified setup.
    :type setup: PerturbationSetup
    :param phi_tilde: Perturbation in V.
    :type phi_tilde: array_like
    :param N: Last power kept in the finite-rank approximation.
    :type N: int
    :param depth: Length of the reference truncation.
    :type depth: int
    :return: `(measured, bound)`, measured never exceeds bound.
    """
    if N < 0 or depth < 1:
        raise InvalidInput(f"Need N >= 0 and depth >= 1, got N={N}, depth={depth}.")
    v = setup.check_in_subspace(phi_tilde, tol)
    bound = float(np.linalg.norm(v)) * setup.mu ** (N + 1) / math.sqrt(1.0 - setup.mu ** 2)
    if depth <= N + 1:
        return 0.0, bound
    tail = _orbit_matrix(setup.T, v, depth)[:, N + 1:]
    return operator_norm(tail), bound
