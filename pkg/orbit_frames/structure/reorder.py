"""
Orthogonal direct sums of families and the effect of interchanging two elements on
representability.

author: Aaron Gobeyn
"""

import logging

import numpy as np

from ..errors import InvalidInput, SpanConditionFailed
from ..frames.analysis import frame_bounds
from ..frames.duals import canonical_dual
from ..frames.family import VectorFamily
from ..linalg.core import Tolerance, numerical_rank
from ..representation.verdict import RepresentabilityVerdict, decide_representability

logger = logging.getLogger(__name__)


def direct_sum_construct(E: VectorFamily, H: VectorFamily, label: str | None = None) -> VectorFamily:
    """The family {e_1, ..., e_n, h_1, h_2, ...} in C^{d1 + d2}, with `E` embedded in the
    first d1 coordinates and `H` in the last d2.

    :param E: Basis of its span, the finite block placed first.
    :type E: VectorFamily
    :param H: Family placed after `E`.
    :type H: VectorFamily
    :param label: Label of the result.
    :type label: str | None (default=None)
    """
    if frame_bounds(E).excess > 0:
        logger.info("direct_sum_construct: first block '%s' is not a basis of its span", E.label)
    d1, d2 = E.dim, H.dim
    M = np.zeros((d1 + d2, E.size + H.size), dtype=complex)
    M[:d1, : E.size] = E.matrix
    M[d1:, E.size:] = H.matrix
    return VectorFamily(M, label=label or f"{E.label} (+) {H.label}")


def _excluded_positions(first: int, second: int) -> set[int]:
    return {first - 1, first, second - 1, second}


def span_condition(F: VectorFamily, first: int, second: int, tol: Tolerance = Tolerance.DEFAULT) -> bool:
    """Whether the elements at positions outside {l - 1, l, l' - 1, l'} still span the
    whole space (positions are 1-based).
    """
    F.check_position(first)
    F.check_position(second)
    excluded = _excluded_positions(first, second)
    kept = [k for k in range(1, F.size + 1) if k not in excluded]
    if not kept:
        return False
    return numerical_rank(F.subfamily(kept).matrix, tol) == F.dim


def swap_experiment(
    F: VectorFamily, first: int, second: int, tol: Tolerance = Tolerance.DEFAULT
) -> RepresentabilityVerdict:
    """Interchange f_first and f_second and decide representability of the result. The
    candidate operator is built from the canonical dual of the swapped family, which is
    the canonical dual of `F` with g_first and g_second interchanged.

    When the remaining elements span the space, the swapped family is expected to be
    non-representable.

    :param F: Representable family.
    :type F: VectorFamily
    :param first: 1-based position l.
    :type first: int
    :param second: 1-based position l', different from l.
    :type second: int
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :raises InvalidInput: If l == l'.
    :raises SpanConditionFailed: If the span condition fails; the verdict on the swapped
        family is attached as `.verdict`.
    """
    if first == second:
        raise InvalidInput(f"Swap positions must differ, got l = l' = {first}.")
    condition = span_condition(F, first, second, tol)
    swapped = F.swapped(first, second)
    verdict = decide_representability(swapped, tol, dual=canonical_dual(swapped, tol))
    logger.debug(
        "swap_experiment(%s, %d, %d): span condition %s, representable %s",
        F.label, first, second, condition, verdict.representable,
    )
    if not condition:
        raise SpanConditionFailed(
            f"Elements outside positions {sorted(_excluded_positions(first, second))} do not span C^{F.dim}.",
            verdict,
        )
    return verdict
