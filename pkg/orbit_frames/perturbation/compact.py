"""
Finitely many orbits of a diagonal operator with eigenvalues tending to zero: the lower
frame bound of their union, followed as the dimension grows.

The frame operator of the union is available in closed form, its (k, l) entry being
sum_j g_jk conj(g_jl) (1 - (lambda_k conj(lambda_l))^N) / (1 - lambda_k conj(lambda_l)).
The lower bound decays like a product of the eigenvalues, far below what a double
precision factorization resolves, so the extreme eigenvalues are computed with mpmath at
a working precision that is doubled until the smallest one is resolved.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import mpmath
import numpy as np

from ..errors import InvalidInput, InvalidParams
from ..spectral.model import DiagonalModel, certified_depth

logger = logging.getLogger(__name__)

TREND_COLUMNS = ["d", "J", "depth", "lower_bound", "upper_bound"]

MIN_PRECISION = 128
MAX_PRECISION = 1 << 13
# smallest eigenvalue must clear RESOLUTION * d * eps * largest eigenvalue
RESOLUTION = 2 ** 20


@dataclass(frozen=True)
class TrendPoint(object):
    """One row of the trend: the union of `J` orbits in C^d truncated at `depth`."""

    d: int
    J: int
    depth: int
    lower_bound: float
    upper_bound: float

    def to_json(self) -> dict:
        return asdict(self)


def geometric_decay(count: int, ratio: float = 0.5) -> np.ndarray:
    """lambda_k = ratio^k, k = 1, ..., count."""
    return ratio ** np.arange(1, count + 1, dtype=float)


def _union_frame_operator(ctx, lambdas: np.ndarray, generators: np.ndarray, depth: int):
    d, J = generators.shape
    lam = [ctx.mpc(complex(value)) for value in lambdas]
    g = [[ctx.mpc(complex(generators[k, j])) for j in range(J)] for k in range(d)]
    S = ctx.matrix(d, d)
    for k in range(d):
        for l in range(k, d):
            z = lam[k] * ctx.conj(lam[l])
            weight = ctx.fsum(g[k][j] * ctx.conj(g[l][j]) for j in range(J))
            entry = weight * (1 - z ** depth) / (1 - z)
            if k == l:
                S[k, k] = ctx.re(entry)
            else:
                S[k, l] = entry
                S[l, k] = ctx.conj(entry)
    return S


def union_frame_bounds(lambdas, generators, depth: int) -> tuple[float, float]:
    """Optimal frame bounds of {diag(lambdas)^n g_j : n < depth, j = 1, ..., J}.

    The working precision starts at `MIN_PRECISION` bits and is doubled until the
    smallest eigenvalue is resolved. When `MAX_PRECISION` is reached first, the lower
    bound is reported as 0. Values below the smallest positive double become 0 as well.

    :param lambdas: Eigenvalues lambda_1, ..., lambda_d, each of modulus below one.
    :type lambdas: array_like
    :param generators: Generators as the columns of a d x J matrix.
    :type generators: array_like
    :param depth: Number of orbit elements per generator.
    :type depth: int
    :return: (A, B)
    :rtype: tuple[float, float]
    """
    lambdas = np.asarray(lambdas, dtype=complex).ravel()
    generators = np.asarray(generators, dtype=complex)
    if generators.ndim != 2 or generators.shape[0] != lambdas.size:
        raise InvalidInput(
            f"Generators of shape {generators.shape} do not match {lambdas.size} eigenvalues."
        )
    d = lambdas.size
    ctx = mpmath.MPContext()
    precision = MIN_PRECISION
    while True:
        ctx.prec = precision
        S = _union_frame_operator(ctx, lambdas, generators, depth)
        if d == 1:
            low = high = S[0, 0]
        else:
            values = ctx.eigh(S, eigvals_only=True)
            values = [ctx.re(values[i]) for i in range(d)]
            low, high = min(values), max(values)
        if high > 0 and low >= RESOLUTION * d * ctx.eps * high:
            logger.debug("union_frame_bounds: d=%d resolved at %d bits", d, precision)
            return float(low), float(high)
        if precision >= MAX_PRECISION:
            logger.info(
                "union_frame_bounds: smallest eigenvalue of the C^%d frame operator not "
                "resolved at %d bits, lower bound reported as 0", d, precision,
            )
            return 0.0, float(high)
        precision *= 2


def _generator_columns(kind: str, J: int | None, max_dim: int, rng: np.random.Generator | None) -> np.ndarray | None:
    match kind:
        case "random":
            if rng is None:
                raise InvalidParams("Random generators need a random number generator.")
            J = 1 if J is None else J
            return rng.standard_normal((max_dim, J)) + 1j * rng.standard_normal((max_dim, J))
        case "basis":
            if J is not None:
                raise InvalidParams(f"Basis generators use one generator per coordinate, J = {J} cannot be set.")
            return None
        case _:
            raise InvalidParams(f"Unknown generator kind '{kind}', expected 'random' or 'basis'.")


def _trend_point(
    lambdas: np.ndarray,
    d: int,
    draws: np.ndarray | None,
    tail_tol: float,
) -> TrendPoint:
    model = DiagonalModel(lambdas[:d])
    if draws is None:
        # one generator e_j per coordinate, so J follows d
        generators = np.eye(d, dtype=complex)
    else:
        generators = draws[:d, :]
        generators = generators / np.linalg.norm(generators, axis=0)
    J_used = generators.shape[1]
    depth = certified_depth(model.spectral_radius, 1.0, tail_tol / J_used)
    lower, upper = union_frame_bounds(model.lambdas, generators, depth)
    logger.debug("compact_nogo_trend: d=%d J=%d depth=%d A=%.6e", d, J_used, depth, lower)
    return TrendPoint(d=d, J=J_used, depth=depth, lower_bound=lower, upper_bound=upper)


def compact_nogo_trend(
    lambdas=None,
    J: int | None = None,
    dims=(4, 8, 16, 32),
    rng: np.random.Generator | None = None,
    tail_tol: float = 1e-10,
    generators: str = "random",
    workers: int = 1,
) -> list[TrendPoint]:
    """Lower frame bound of the union of `J` orbits {T^n phi_j} for the diagonal model on
    the first d coordinates, for every d in `dims`.

    Random generators are nested: one draw of length max(dims) per generator, of which
    the first d coordinates are used (then normalized). The depth only depends on the
    spectral radius, so for eigenvalues of decreasing modulus the frame operator in C^d
    is a multiple c < 1 of the leading block of the one in C^{d'}, d < d', and the lower
    bound decreases strictly. With `generators="basis"` the generators are
    e_1, ..., e_d and `J` must be left unset.

    :param lambdas: Eigenvalues, at least max(dims) of them, defaults to 2^{-k}.
    :type lambdas: array_like | None (default=None)
    :param J: Number of random generators, 1 when unset.
    :type J: int | None (default=None)
    :param dims: Increasing dimensions.
    :type dims: Sequence[int] (default=(4, 8, 16, 32))
    :param rng: Source of randomness for random generators.
    :type rng: np.random.Generator | None (default=None)
    :param tail_tol: Tail bound of the union frame operator.
    :type tail_tol: float (default=1e-10)
    :param generators: "random" or "basis".
    :type generators: str (default="random")
    :param workers: Thread count, the output order always follows `dims`.
    :type workers: int (default=1)
    :raises InvalidParams: For an unknown generator kind, random generators without
        `rng`, or basis generators with `J` set.
    """
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims) or any(b <= a for a, b in zip(dims, dims[1:])):
        raise InvalidInput(f"dims must be strictly increasing positive integers, got {dims}.")
    if J is not None and J < 1:
        raise InvalidInput(f"J must be positive, got {J}.")
    max_dim = dims[-1]
    lam = geometric_decay(max_dim) if lambdas is None else np.asarray(lambdas, dtype=complex).ravel()
    if lam.size < max_dim:
        raise InvalidInput(f"{lam.size} eigenvalues given, dimension {max_dim} requested.")
    draws = _generator_columns(generators, J, max_dim, rng)

    def point(d: int) -> TrendPoint:
        return _trend_point(lam, d, draws, tail_tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(point, dims))
    return [point(d) for d in dims]
