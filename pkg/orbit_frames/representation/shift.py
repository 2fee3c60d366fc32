"""
The mixed frame operator T f = sum_k <f, g_k> f_{k+1}, the unique candidate for an
operator with T f_k = f_{k+1}, and the right-shift invariance of the kernel of the
synthesis operator.

Only f_1, ..., f_N are available, so every sum stops at k = N - 1 and the right shift
is only applied to kernel vectors whose last coordinate vanishes.

author: Aaron Gobeyn
"""

import logging

import numpy as np

from ..errors import InvalidInput, LengthMismatch
from ..frames.analysis import frame_bounds
from ..frames.duals import alternate_dual, canonical_dual
from ..frames.family import VectorFamily
from ..linalg.core import Tolerance, nullspace_basis, operator_norm, pinv

logger = logging.getLogger(__name__)


def _require_pair(F: VectorFamily, G: VectorFamily) -> None:
    if F.size != G.size or F.dim != G.dim:
        raise LengthMismatch(
            f"Family has {F.size} vectors in C^{F.dim}, dual has {G.size} in C^{G.dim}."
        )
    if F.size < 2:
        raise LengthMismatch("The shift property needs at least two elements.")


def candidate_operator(F: VectorFamily, G: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
    """Mixed frame operator T = sum_{k=1}^{N-1} f_{k+1} g_k*.

    The k = N term would need f_{N+1} and is dropped; its size ||f_N|| ||g_N|| is
    logged when it is not negligible.

    :param F: Family f_1, ..., f_N with N >= 2.
    :type F: VectorFamily
    :param G: Dual of `F` (validated by the caller).
    :type G: VectorFamily
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :raises LengthMismatch: If the families are not indexed alike or N < 2.
    """
    _require_pair(F, G)
    dropped = float(np.linalg.norm(F.matrix[:, -1]) * np.linalg.norm(G.matrix[:, -1]))
    if dropped > tol.residual_atol * max(F.max_norm(), 1.0):
        logger.info(
            "candidate_operator(%s): dropped last term of size %.3e", F.label, dropped
        )
    return F.matrix[:, 1:] @ G.matrix[:, :-1].conj().T


def truncated_dual(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> VectorFamily:
    """Canonical dual of the leading N - 1 elements, padded with a zero vector.

    The candidate operator built from it is the least squares solution of
    T f_j = f_{j+1}, j < N, so it satisfies all of these equations whenever any
    linear operator does. It is a dual of `F` itself iff f_N lies in the span of the
    leading elements.

    :param F: Family with N >= 2.
    :type F: VectorFamily
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    if F.size < 2:
        raise LengthMismatch("A truncated dual needs at least two elements.")
    leading = pinv(F.matrix[:, :-1], tol).conj().T
    return VectorFamily(
        np.hstack([leading, np.zeros((F.dim, 1), dtype=complex)]),
        label=f"{F.label} (truncated dual)",
    )


def shift_dual(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> VectorFamily:
    """The dual used for representability verdicts: the canonical dual when `F` has no
    excess (it is biorthogonal, so the dropped term does not act on f_1..f_{N-1}),
    the truncated dual otherwise.
    """
    if frame_bounds(F, tol).excess == 0:
        return canonical_dual(F, tol)
    return truncated_dual(F, tol)


def shift_compatible_kernel(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> np.ndarray:
    """Orthonormal basis of {c in ker U : c_N = 0}, the kernel vectors whose right
    shift stays inside the truncation.

    :param F: Family.
    :type F: VectorFamily
    :param tol: Tolerances; a last coordinate row of norm at most `rank_rtol` counts
        as zero.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    K = nullspace_basis(F.matrix, tol)
    if K.shape[1] == 0:
        return K
    last = K[-1:, :]
    if np.linalg.norm(last) <= tol.rank_rtol:
        return K
    return K @ nullspace_basis(last, tol)


def right_shift(C: np.ndarray) -> np.ndarray:
    """Apply {c_k} -> {0, c_1, c_2, ...} to every column of `C`, dropping c_N."""
    shifted = np.zeros_like(C)
    shifted[1:, :] = C[:-1, :]
    return shifted


def kernel_shift_invariance(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> float:
    """How far the shift-compatible kernel is from being right-shift invariant,
    measured in the space: max over unit c in that kernel of ||U(shift c)||,
    normalized by max_k ||f_k||. It is 0 exactly when shifting keeps kernel vectors in
    the kernel.

    :param F: Family with N >= 2.
    :type F: VectorFamily
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    if F.size < 2:
        raise LengthMismatch("Kernel shift invariance needs at least two elements.")
    K0 = shift_compatible_kernel(F, tol)
    if K0.shape[1] == 0:
        logger.info("kernel_shift_invariance(%s): empty kernel, invariant", F.label)
        return 0.0
    scale = F.max_norm()
    if scale == 0.0:
        return 0.0
    return operator_norm(F.matrix @ right_shift(K0)) / scale


def dual_falsification(
    F: VectorFamily,
    G1: VectorFamily,
    G2: VectorFamily,
    tol: Tolerance = Tolerance.DEFAULT,
) -> float:
    """Norm of the difference of the candidate operators of two duals. For a
    representable family it vanishes; a value above `residual_atol` certifies that no
    operator represents `F`.

    :param F: Family.
    :type F: VectorFamily
    :param G1: First dual.
    :type G1: VectorFamily
    :param G2: Second, different, dual.
    :type G2: VectorFamily
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :raises NotADual: If one of the proposals is not a dual.
    :raises InvalidInput: If the two duals coincide.
    """
    G1 = alternate_dual(F, G1, tol)
    G2 = alternate_dual(F, G2, tol)
    if operator_norm(G1.matrix - G2.matrix) <= tol.equality_atol:
        raise InvalidInput("Dual falsification needs two distinct duals.")
    T1 = candidate_operator(F, G1, tol)
    T2 = candidate_operator(F, G2, tol)
    gap = operator_norm(T1 - T2)
    logger.debug("dual_falsification(%s): ||T1 - T2|| = %.3e", F.label, gap)
    return gap
