"""
The experiments behind each subcommand. Every command maps an `ExperimentConfig` to a
`CommandResult`; writing the result is left to `main`.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import InsufficientTruncation, InvalidParams, SchemaError, SpanConditionFailed
from ..frames.analysis import canonical_tight, frame_bounds, tight_orbit_operator
from ..frames.duals import alternate_dual
from ..frames.family import VectorFamily
from ..linalg.core import operator_norm
from ..perturbation.compact import TREND_COLUMNS, compact_nogo_trend, geometric_decay
from ..perturbation.stability import (
    perturbation_energy,
    perturbation_lower_bound,
    perturbed_orbit_test,
    spectral_setup,
)
from ..representation.shift import dual_falsification
from ..representation.verdict import decide_representability, norm_sandwich, tight_orbit_check
from ..spectral.carleson import carleson_lower_bound
from ..spectral.model import (
    DiagonalModel,
    change_basis,
    closed_form_frame_operator,
    generator,
    infinite_frame_bounds,
    iterated_frame_operator,
    model_orbit,
    random_unitary,
    sample_carleson_sequence,
)
from ..structure.chains import chain_report
from ..structure.excess import tail_space_report, tail_stabilization_index
from ..structure.reorder import swap_experiment
from ..utils import basis_vector, decode_matrix, decode_vector
from .config import ExperimentConfig, load_document
from .generate import generate_family

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandResult(object):
    """Report of one command.

    :param payload: JSON report.
    :type payload: dict
    :param columns: CSV header.
    :type columns: list[str]
    :param rows: CSV rows keyed by column.
    :type rows: list[dict]
    :param negative: The verdict is negative, `--strict` turns this into exit code 2.
    :type negative: bool
    """

    payload: dict
    columns: list[str] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    negative: bool = False


def _family(config: ExperimentConfig) -> VectorFamily:
    return VectorFamily.from_json(load_document(config.input_path))


def _model(config: ExperimentConfig) -> DiagonalModel:
    """Model from --input, or the Carleson sample given by --alpha and --dim."""
    if config.input_path is not None:
        return DiagonalModel.from_json(load_document(config.input_path))
    dim = config.param("dim")
    if dim is None:
        raise InvalidParams("Give either --input with a model document or --dim (and --alpha).")
    return sample_carleson_sequence(config.param("alpha", 2.0), dim)


def analyze(config: ExperimentConfig) -> CommandResult:
    F = _family(config)
    report = frame_bounds(F, config.tolerance)
    payload = {"label": F.label, **report.to_json()}
    return CommandResult(payload, list(payload), [payload], negative=not report.is_frame)


def represent(config: ExperimentConfig) -> CommandResult:
    F = _family(config)
    tol = config.tolerance
    dual_paths = config.param("dual", [])
    duals = [alternate_dual(F, VectorFamily.from_json(load_document(p)), tol) for p in dual_paths]
    verdict = decide_representability(F, tol, dual=duals[0] if duals else None)
    payload = verdict.to_json()
    payload["sandwich"] = norm_sandwich(F, verdict.candidate_T, tol).to_json()
    payload["tight_orbit"] = tight_orbit_check(F, verdict.candidate_T, tol).to_json()
    if len(duals) == 2:
        payload["dual_gap"] = dual_falsification(F, duals[0], duals[1], tol)
    rows = [{"j": j, "residual": r} for j, r in enumerate(verdict.shift_residuals, start=1)]
    return CommandResult(payload, ["j", "residual"], rows, negative=not verdict.representable)


def carleson(config: ExperimentConfig) -> CommandResult:
    report = carleson_lower_bound(_model(config), delta=config.param("delta", 1e-6))
    rows = [{"k": k, "product": p} for k, p in enumerate(report.per_index_products, start=1)]
    return CommandResult(report.to_json(), ["k", "product"], rows, negative=not report.satisfied)


def spectral(config: ExperimentConfig) -> CommandResult:
    """Certified truncation of the model orbit and its diagnostics."""
    model = _model(config)
    tol = config.tolerance
    F = model_orbit(model, config.tail_tol)
    S_iter, depth = iterated_frame_operator(model, config.tail_tol)
    A_inf, B_inf = infinite_frame_bounds(model)
    truncated = frame_bounds(F, tol)
    verdict = decide_representability(F, tol)
    payload = {
        "model": model.to_json(),
        "certified_depth": depth,
        "tail_tol": config.tail_tol,
        "closed_form_gap": operator_norm(closed_form_frame_operator(model) - S_iter),
        "infinite_bounds": [A_inf, B_inf],
        "truncated": truncated.to_json(),
        "representable": verdict.representable,
        "recovery_error": operator_norm(verdict.candidate_T - model.operator),
        "sandwich": norm_sandwich(F, verdict.candidate_T, tol).to_json(),
        "carleson_infimum": carleson_lower_bound(model).infimum,
    }
    if truncated.is_frame:
        payload["tight_operator_norm"] = operator_norm(tight_orbit_operator(F, model.operator, tol))
        payload["tight_bounds"] = list(_bounds(canonical_tight(F, tol), config))
    if config.param("rotate", False):
        rotated = change_basis(F, random_unitary(model.dim, config.rng()), tol)
        payload["rotated"] = frame_bounds(rotated, tol).to_json()
    row = {
        "d": model.dim,
        "certified_depth": depth,
        "A": truncated.lower_bound_A,
        "B": truncated.upper_bound_B,
        "A_infinite": A_inf,
        "B_infinite": B_inf,
        "closed_form_gap": payload["closed_form_gap"],
        "representable": verdict.representable,
    }
    return CommandResult(payload, list(row), [row], negative=not truncated.is_frame)


def _bounds(F: VectorFamily, config: ExperimentConfig) -> tuple[float, float]:
    report = frame_bounds(F, config.tolerance)
    return report.lower_bound_A, report.upper_bound_B


def _operator_orbit(config: ExperimentConfig) -> tuple[np.ndarray, VectorFamily]:
    document = load_document(config.input_path)
    if not isinstance(document, dict):
        raise SchemaError("An operator document must be a JSON object.")
    if "lambdas" in document:
        model = DiagonalModel.from_json(document)
        T, phi = model.operator, generator(model)
    else:
        for key in ("operator", "generator"):
            if key not in document:
                raise SchemaError(f"Operator document misses the '{key}' field.")
        T = decode_matrix(document["operator"], where="operator")
        phi = decode_vector(document["generator"], where="generator")
    depth = config.depth or document.get("depth") or 3 * T.shape[0] + 2
    if not isinstance(depth, int) or depth < 1:
        raise SchemaError(f"'depth' must be a positive integer, got {depth!r}.")
    return T, VectorFamily.orbit(T, phi, depth, label="operator orbit")


def structure(config: ExperimentConfig) -> CommandResult:
    """Chains of T and the tail spaces of its orbit."""
    tol = config.tolerance
    T, F = _operator_orbit(config)
    chains = chain_report(T, tol)
    L = config.param("shifts", 2)
    payload = {"chains": chains.to_json(), "orbit_length": F.size}
    try:
        index = tail_stabilization_index(F, T, tol, L)
        payload["tail_stabilization_index"] = index
        payload["tail"] = tail_space_report(F, T, index, L, tol).to_json()
    except InsufficientTruncation as exc:
        logger.info("structure: %s", exc)
        payload["tail_stabilization_index"] = None
    rows = [
        {"k": k, "image_rank": r, "null_dim": chains.null_dims[k] if k < len(chains.null_dims) else None}
        for k, r in enumerate(chains.image_ranks)
    ]
    negative = payload["tail_stabilization_index"] != chains.q_T
    return CommandResult(payload, ["k", "image_rank", "null_dim"], rows, negative=negative)


def swap(config: ExperimentConfig) -> CommandResult:
    F = _family(config)
    first, second = config.param("first"), config.param("second")
    if first is None or second is None:
        raise InvalidParams("swap needs --first and --second.")
    try:
        verdict = swap_experiment(F, first, second, config.tolerance)
        condition = True
    except SpanConditionFailed as exc:
        logger.info("swap: %s", exc)
        verdict, condition = exc.verdict, False
    payload = {"first": first, "second": second, "span_condition": condition, **verdict.to_json()}
    rows = [{"j": j, "residual": r} for j, r in enumerate(verdict.shift_residuals, start=1)]
    return CommandResult(payload, ["j", "residual"], rows, negative=not condition)


def perturb(config: ExperimentConfig) -> CommandResult:
    """Perturb the generator of a diagonal orbit by `scale * radius * e_1`."""
    tol = config.tolerance
    model = _model(config)
    setup = spectral_setup(model, config.param("block", 1), tol)
    scale = config.param("scale", 0.5)
    phi_tilde = scale * setup.radius * basis_vector(model.dim, 1)
    report = perturbed_orbit_test(setup, phi_tilde, config.tail_tol, tol, depth=config.depth)
    depth = config.depth or setup.orbit_depth(config.tail_tol, setup.phi + phi_tilde)
    norm = float(np.linalg.norm(phi_tilde))
    row = {
        "mu": setup.mu,
        "A": setup.A,
        "radius": setup.radius,
        "norm_phi_tilde": norm,
        "guaranteed_lower_bound": perturbation_lower_bound(setup, norm),
        "perturbed_lower_bound": report.lower_bound_A,
        "is_frame": report.is_frame,
        "energy": perturbation_energy(setup, phi_tilde, depth, tol),
        "energy_bound": norm ** 2 / (1.0 - setup.mu ** 2),
    }
    payload = {**row, "perturbed": report.to_json()}
    return CommandResult(payload, list(row), [row], negative=not report.is_frame)


def trend(config: ExperimentConfig) -> CommandResult:
    dims = config.param("dims", [4, 8, 16, 32])
    points = compact_nogo_trend(
        geometric_decay(max(dims), config.param("ratio", 0.5)),
        J=config.param("J"),
        dims=dims,
        rng=config.rng(),
        tail_tol=config.tail_tol,
        generators=config.param("generators", "random"),
        workers=config.workers,
    )
    rows = [p.to_json() for p in points]
    bounds = [p.lower_bound for p in points]
    monotone = all(b <= a + 1e-10 for a, b in zip(bounds, bounds[1:]))
    decreasing = all(0.0 < b < a for a, b in zip(bounds, bounds[1:]))
    payload = {"points": rows, "non_increasing": monotone, "decreasing": decreasing}
    return CommandResult(payload, TREND_COLUMNS, rows, negative=not monotone)


def generate(config: ExperimentConfig) -> CommandResult:
    if config.output_format != "json":
        raise InvalidParams("generate writes families as JSON only.")
    F = generate_family(
        config.param("kind", "onb"),
        config.param("dim", 4),
        config.rng(),
        alpha=config.param("alpha", 2.0),
        tail_tol=config.tail_tol,
        block=config.param("block", 2),
    )
    return CommandResult(F.to_json())


COMMANDS = {
    "analyze": analyze,
    "represent": represent,
    "carleson": carleson,
    "spectral": spectral,
    "structure": structure,
    "swap": swap,
    "perturb": perturb,
    "trend": trend,
    "generate": generate,
}
