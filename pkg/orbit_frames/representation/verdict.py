"""
Representability verdicts: does a family admit the form {T^n f_1} with T bounded?
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..frames.analysis import frame_bounds
from ..frames.family import VectorFamily
from ..linalg.core import Tolerance, as_square, operator_norm, singular_values
from ..utils import finite_or_none
from .shift import candidate_operator, kernel_shift_invariance, shift_dual

logger = logging.getLogger(__name__)

UNIT_NORM_ATOL = 1e-6


@dataclass(frozen=True, eq=False)
class RepresentabilityVerdict(object):
    """Outcome of testing T f_j = f_{j+1}, j = 1, ..., N - 1.

    :param candidate_T: The tested operator, d x d.
    :type candidate_T: np.ndarray
    :param shift_residuals: Entry j - 1 is ||T f_j - f_{j+1}||.
    :type shift_residuals: list[float]
    :param max_shift_residual: Largest entry of `shift_residuals`.
    :type max_shift_residual: float
    :param kernel_invariance_residual: See `kernel_shift_invariance`.
    :type kernel_invariance_residual: float
    :param norm_T: Operator norm of `candidate_T`.
    :type norm_T: float
    :param norm_bounds: The interval (1, sqrt(B/A)), infinite when A = 0.
    :type norm_bounds: tuple[float, float]
    :param representable: max residual <= residual_atol * max_k ||f_k||.
    :type representable: bool
    """

    candidate_T: np.ndarray = field(repr=False)
    shift_residuals: list[float]
    max_shift_residual: float
    kernel_invariance_residual: float
    norm_T: float
    norm_bounds: tuple[float, float]
    representable: bool

    def to_json(self) -> dict:
        return {
            "representable": self.representable,
            "max_shift_residual": self.max_shift_residual,
            "kernel_invariance_residual": self.kernel_invariance_residual,
            "norm_T": self.norm_T,
            "norm_lo": self.norm_bounds[0],
            "norm_hi": finite_or_none(self.norm_bounds[1]),
            "residuals": list(self.shift_residuals),
        }


def norm_upper_bound(F: VectorFamily, tol: Tolerance = Tolerance.DEFAULT) -> float:
    """sqrt(B / A) from the frame bounds of `F` (on its span), infinite for A = 0."""
    report = frame_bounds(F, tol)
    if report.lower_bound_A <= 0.0:
        return math.inf
    return math.sqrt(report.upper_bound_B / report.lower_bound_A)


def check_shift_property(
    F: VectorFamily, T, tol: Tolerance = Tolerance.DEFAULT
) -> RepresentabilityVerdict:
    """Test whether `T` maps every f_j to f_{j+1}.

    :param F: Family with N >= 2.
    :type F: VectorFamily
    :param T: Operator on C^d.
    :type T: array_like
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    T = as_square(T)
    residuals = np.linalg.norm(T @ F.matrix[:, :-1] - F.matrix[:, 1:], axis=0)
    max_residual = float(residuals.max()) if residuals.size else 0.0
    threshold = tol.residual_atol * F.max_norm()
    verdict = RepresentabilityVerdict(
        candidate_T=T,
        shift_residuals=[float(r) for r in residuals],
        max_shift_residual=max_residual,
        kernel_invariance_residual=kernel_shift_invariance(F, tol),
        norm_T=operator_norm(T),
        norm_bounds=(1.0, norm_upper_bound(F, tol)),
        representable=max_residual <= threshold,
    )
    logger.debug(
        "check_shift_property(%s): max residual %.3e vs threshold %.3e -> %s",
        F.label, max_residual, threshold, verdict.representable,
    )
    return verdict


def decide_representability(
    F: VectorFamily,
    tol: Tolerance = Tolerance.DEFAULT,
    dual: VectorFamily | None = None,
) -> RepresentabilityVerdict:
    """Full representability test: choose a dual (see `shift_dual`) unless one is
    given, build the candidate operator and check the shift property.

    :param F: Family with N >= 2.
    :type F: VectorFamily
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :param dual: Dual to build the candidate from.
    :type dual: VectorFamily | None (default=None)
    """
    G = shift_dual(F, tol) if dual is None else dual
    return check_shift_property(F, candidate_operator(F, G, tol), tol)


@dataclass(frozen=True)
class NormSandwich(object):
    """Comparison of ||T|| with the interval [1, sqrt(B/A)].

    The lower bound is a statement about infinite frames; it is only enforced when the
    family is flagged as the certified truncation of an infinite orbit. Otherwise
    `lo_ok` is `True` and `norm_T` is reported as is.
    """

    norm_T: float
    lower: float
    upper: float
    lo_ok: bool
    hi_ok: bool
    lower_enforced: bool

    def to_json(self) -> dict:
        return {
            "norm_T": self.norm_T,
            "lower": self.lower,
            "upper": finite_or_none(self.upper),
            "lo_ok": self.lo_ok,
            "hi_ok": self.hi_ok,
            "lower_enforced": self.lower_enforced,
        }


def norm_sandwich(
    F: VectorFamily,
    T,
    tol: Tolerance = Tolerance.DEFAULT,
    infinite_model: bool | None = None,
) -> NormSandwich:
    """Check 1 <= ||T|| <= sqrt(B/A) for a representing operator `T` of `F`.

    :param F: Frame for C^d represented by `T`.
    :type F: VectorFamily
    :param T: Representing operator.
    :type T: array_like
    :param tol: Tolerances, comparisons use `equality_atol`.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :param infinite_model: Enforce the lower bound. Defaults to the
        `infinite_model` entry of the family metadata.
    :type infinite_model: bool | None (default=None)
    """
    if infinite_model is None:
        infinite_model = bool(F.metadata.get("infinite_model", False))
    norm_T = operator_norm(T)
    upper = norm_upper_bound(F, tol)
    if infinite_model:
        lo_ok = norm_T >= 1.0 - tol.equality_atol
    else:
        lo_ok = True
        if norm_T < 1.0 - tol.equality_atol:
            logger.info(
                "norm_sandwich(%s): ||T|| = %.6f < 1, lower bound not enforced for a finite family",
                F.label, norm_T,
            )
    return NormSandwich(
        norm_T=norm_T,
        lower=1.0,
        upper=upper,
        lo_ok=lo_ok,
        hi_ok=norm_T <= upper + tol.equality_atol,
        lower_enforced=infinite_model,
    )


def isometry_scale(T, tol: Tolerance = Tolerance.DEFAULT) -> float | None:
    """The constant c with ||T f|| = c ||f|| for every f, `None` when the singular
    values of `T` differ by more than `equality_atol * max(||T||, 1)`.

    :param T: Square matrix.
    :type T: array_like
    :param tol: Tolerances.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    """
    s = singular_values(as_square(T))
    if s[0] - s[-1] > tol.equality_atol * max(float(s[0]), 1.0):
        return None
    return float(s[0])


@dataclass(frozen=True)
class TightOrbitCheck(object):
    """Norm constraints on an operator T generating a frame {T^n phi}.

    For an infinite orbit a tight frame forces ||T|| = 1, and an operator with
    ||T f|| = c ||f|| only generates a frame when c = 1. On finite truncations both
    hold up to `atol`.

    :param is_tight: The family is a tight frame for C^d.
    :type is_tight: bool
    :param norm_T: Operator norm of T.
    :type norm_T: float
    :param unit_norm: |norm_T - 1| <= atol.
    :type unit_norm: bool
    :param isometry_scale: See `isometry_scale`.
    :type isometry_scale: float | None
    :param scale_admissible: False exactly when T is c times an isometry with |c - 1| > atol.
    :type scale_admissible: bool
    """

    is_tight: bool
    norm_T: float
    unit_norm: bool
    isometry_scale: float | None
    scale_admissible: bool

    @property
    def consistent(self) -> bool:
        return self.scale_admissible and (self.unit_norm or not self.is_tight)

    def to_json(self) -> dict:
        return {
            "is_tight": self.is_tight,
            "norm_T": self.norm_T,
            "unit_norm": self.unit_norm,
            "isometry_scale": self.isometry_scale,
            "scale_admissible": self.scale_admissible,
            "consistent": self.consistent,
        }


def tight_orbit_check(
    F: VectorFamily, T, tol: Tolerance = Tolerance.DEFAULT, atol: float = UNIT_NORM_ATOL
) -> TightOrbitCheck:
    """Compare a representing operator `T` of `F` with the norm constraints of tight
    orbit frames and of scaled isometries.

    :param F: Family represented by `T`.
    :type F: VectorFamily
    :param T: Representing operator.
    :type T: array_like
    :param tol: Tolerances, `equality_atol` decides tightness and isometries.
    :type tol: Tolerance (default=Tolerance.DEFAULT)
    :param atol: Allowed distance of ||T|| or c from 1.
    :type atol: float (default=UNIT_NORM_ATOL)
    """
    report = frame_bounds(F, tol)
    norm_T = operator_norm(T)
    scale = isometry_scale(T, tol)
    check = TightOrbitCheck(
        is_tight=report.is_tight,
        norm_T=norm_T,
        unit_norm=abs(norm_T - 1.0) <= atol,
        isometry_scale=scale,
        scale_admissible=scale is None or abs(scale - 1.0) <= atol,
    )
    if not check.consistent:
        logger.info(
            "tight_orbit_check(%s): ||T|| = %.6f, isometry scale %s, tight %s",
            F.label, norm_T, scale, report.is_tight,
        )
    return check
