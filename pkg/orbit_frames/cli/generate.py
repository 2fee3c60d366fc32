"""
Deterministic test families: orthonormal bases, random Riesz bases, the duplicated
first element family, certified diagonal orbits and direct sums.
"""

import logging

import numpy as np

from ..errors import InvalidParams
from ..frames.family import VectorFamily
from ..spectral.model import model_orbit, sample_carleson_sequence
from ..structure.reorder import direct_sum_construct

logger = logging.getLogger(__name__)

KINDS = ("onb", "riesz_random", "duplicated_first", "spectral_orbit", "direct_sum")
RIESZ_MAX_CONDITION = 1e6
RIESZ_MAX_DRAWS = 100


def onb(dim: int) -> VectorFamily:
    return VectorFamily(np.eye(dim, dtype=complex), label=f"onb C^{dim}")


def riesz_random(dim: int, rng: np.random.Generator) -> VectorFamily:
    """Columns of a complex Gaussian matrix, redrawn while its condition number
    exceeds 1e6."""
    for _ in range(RIESZ_MAX_DRAWS):
        M = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        if np.linalg.cond(M) <= RIESZ_MAX_CONDITION:
            return VectorFamily(M, label=f"random riesz basis C^{dim}")
        logger.info("riesz_random: rejected draw with condition number %.3e", np.linalg.cond(M))
    raise InvalidParams(f"No draw with condition number <= {RIESZ_MAX_CONDITION:.0e} in {RIESZ_MAX_DRAWS} attempts.")


def duplicated_first(dim: int) -> VectorFamily:
    """{e_1, e_1, e_2, ..., e_{dim-1}} in C^{dim-1}: dim vectors with the first one
    repeated."""
    if dim < 2:
        raise InvalidParams(f"duplicated_first needs d >= 2 vectors, got {dim}.")
    E = np.eye(dim - 1, dtype=complex)
    return VectorFamily(np.hstack([E[:, :1], E]), label=f"duplicated first C^{dim - 1}")


def generate_family(
    kind: str,
    dim: int,
    rng: np.random.Generator,
    alpha: float = 2.0,
    tail_tol: float = 1e-10,
    block: int = 2,
) -> VectorFamily:
    """Build the family named by `kind`.

    :param kind: One of `KINDS`.
    :type kind: str
    :param dim: Dimension, for `duplicated_first` the number of vectors.
    :type dim: int
    :param rng: Source of randomness.
    :type rng: np.random.Generator
    :param alpha: Base of the Carleson sequence for the orbit kinds.
    :type alpha: float (default=2.0)
    :param tail_tol: Tail bound for the certified depth of the orbit kinds.
    :type tail_tol: float (default=1e-10)
    :param block: Size of the orthonormal block placed before the orbit in `direct_sum`.
    :type block: int (default=2)
    :raises InvalidParams: If the parameters do not fit the kind.
    """
    if dim < 1:
        raise InvalidParams(f"Dimension must be positive, got {dim}.")
    match kind:
        case "onb":
            return onb(dim)
        case "riesz_random":
            return riesz_random(dim, rng)
        case "duplicated_first":
            return duplicated_first(dim)
        case "spectral_orbit":
            return model_orbit(sample_carleson_sequence(alpha, dim), tail_tol)
        case "direct_sum":
            if block < 1:
                raise InvalidParams(f"direct_sum needs a positive block size, got {block}.")
            H = model_orbit(sample_carleson_sequence(alpha, dim), tail_tol)
            return direct_sum_construct(onb(block), H).with_metadata(block=block)
        case _:
            raise InvalidParams(f"Unknown family kind '{kind}', expected one of {', '.join(KINDS)}.")
