"""
Comparison of subspaces given by orthonormal bases.
"""

import numpy as np

from .core import operator_norm

# Subspaces whose largest principal angle is below this value are considered equal.
ANGLE_TOL: float = 1e-7


def max_principal_angle(Q1: np.ndarray, Q2: np.ndarray) -> float:
    """Largest principal angle between span(Q1) and span(Q2), both given by
    orthonormal columns. Subspaces of different dimension are at angle pi/2.

    The sine form ||(I - Q1 Q1*) Q2|| is used instead of arccos of the cosines, which
    loses all accuracy for angles below 1e-8.

    :param Q1: Orthonormal basis of the first subspace.
    :type Q1: np.ndarray
    :param Q2: Orthonormal basis of the second subspace.
    :type Q2: np.ndarray
    """
    if Q1.shape[1] != Q2.shape[1]:
        return float(np.pi / 2)
    if Q1.shape[1] == 0:
        return 0.0
    residual = Q2 - Q1 @ (Q1.conj().T @ Q2)
    return float(np.arcsin(min(1.0, operator_norm(residual))))


def same_subspace(Q1: np.ndarray, Q2: np.ndarray, angle_tol: float = ANGLE_TOL) -> bool:
    """Dimension match plus largest principal angle at most `angle_tol`."""
    return Q1.shape[1] == Q2.shape[1] and max_principal_angle(Q1, Q2) <= angle_tol
