"""
Dual frames: the canonical dual {S^+ f_k} and a checked constructor for alternate
duals. Duality is always tested on the span of the family.
"""

import logging

import numpy as np

from ..errors import DegenerateFamily, LengthMismatch, NotADual
from ..linalg.core import Tolerance, operator_norm, pinv, projector, range_basis
from .family import VectorFamily

logger = logging.getLogger(__name__)


def duality_residual(F: VectorFamily, G: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> float:
    """Operator norm of f -> sum_k <f, g_k> f_k - f restricted to span(F).

    :param F: Family.
    :type F: VectorFamily
    :param G: Proposed dual, same length and dimension as `F`.
    :type G: VectorFamily
    :param tol: Tolerances, `rank_rtol` decides the span.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    if F.size != G.size or F.dim != G.dim:
        raise LengthMismatch(
            f"Family has {F.size} vectors in C^{F.dim}, proposal has {G.size} in C^{G.dim}."
        )
    Q = range_basis(F.matrix, tol)
    if Q.shape[1] == 0:
        return 0.0
    reconstruction = F.matrix @ G.matrix.conj().T
    return operator_norm((reconstruction - np.eye(F.dim)) @ projector(Q))


def canonical_dual(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> VectorFamily:
    """Canonical dual g_k = S^+ f_k, computed as the conjugate transpose of the
    pseudo-inverse of the synthesis matrix so that the rank decision is the one taken
    on the family itself.

    :param F: Frame for its span.
    :type F: VectorFamily
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :raises DegenerateFamily: If every vector of `F` is numerically zero.
    """
    if F.max_norm() == 0.0:
        raise DegenerateFamily(f"Family '{F.label}' consists of zero vectors only.")
    return VectorFamily(
        pinv(F.matrix, tol).conj().T, label=f"{F.label} (canonical dual)"
    )


def alternate_dual(F: VectorFamily, proposal, tol: Tolerance = Tolerance.DEFAULT) -> VectorFamily:
    """Checked constructor for a dual of `F`: the proposal is returned as a family
    only if the duality identity holds on span(F).

    :param F: Frame for its span.
    :type F: VectorFamily
    :param proposal: The proposed dual, either a family or its d x N matrix.
    :type proposal: VectorFamily | np.ndarray
    :param tol: Tolerances, the residual must not exceed `residual_atol`.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :raises NotADual: If the duality residual is too large.
    """
    if not isinstance(proposal, VectorFamily):
        proposal = VectorFamily(proposal, label=f"{F.label} (alternate dual)")
    residual = duality_residual(F, proposal, tol)
    if residual > tol.residual_atol:
        raise NotADual(
            f"Duality residual {residual:.3e} exceeds {tol.residual_atol:.1e} for '{F.label}'."
        )
    logger.debug("alternate_dual(%s): accepted, residual %.3e", F.label, residual)
    return proposal
