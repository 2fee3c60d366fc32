"""
Exceptions raised by the orbit_frames package.

Every error is a `ValueError` so callers that only guard against bad arguments keep
working; the subclasses let the CLI and the tests tell the failure modes apart.

author: Aaron Gobeyn
"""


class OrbitFrameError(ValueError):
    """Base class of all errors raised by the package."""


class InvalidInput(OrbitFrameError):
    """Malformed numerical input, e.g. non-finite entries or wrong shapes."""


class SchemaError(InvalidInput):
    """A JSON document does not match the VectorFamily or DiagonalModel schema."""


class InvalidParams(InvalidInput):
    """Parameters of a family generator are invalid for the requested kind."""


class SingularOperator(OrbitFrameError):
    """A positive operator is numerically singular where invertibility is required."""


class DegenerateFamily(OrbitFrameError):
    """Every vector of the family is numerically zero."""


class NotADual(OrbitFrameError):
    """A proposed family fails the duality identity on the span."""


class NotAFrameOperator(OrbitFrameError):
    """A matrix is not Hermitian positive definite."""


class LengthMismatch(OrbitFrameError):
    """Two families that must be indexed alike have different lengths or dimensions."""


class ModulusOutOfRange(OrbitFrameError):
    """An eigenvalue lies outside the open unit disc."""


class InvalidAlpha(OrbitFrameError):
    """The base of a Carleson sample sequence is not larger than one."""


class TailBoundUnreachable(OrbitFrameError):
    """A geometric tail bound cannot be met because the ratio is not below one."""


class IndexOutOfRange(OrbitFrameError, IndexError):
    """A 1-based element position lies outside the family."""


class InsufficientTruncation(OrbitFrameError):
    """The orbit truncation is too short for the requested tail analysis."""


class InvalidContraction(OrbitFrameError):
    """The contraction constant is not in [0, 1)."""


class NotInSubspace(OrbitFrameError):
    """A perturbation does not lie in the prescribed invariant subspace."""


class NoStabilization(OrbitFrameError):
    """The image chain did not stabilize within the allowed number of powers.

    :param message: Human readable description.
    :type message: str
    :param report: The partial chain report computed so far.
    :type report: ChainReport
    """

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report


class SpanConditionFailed(OrbitFrameError):
    """The remaining elements do not span the space, so a swap is not guaranteed to
    destroy representability.

    :param message: Human readable description.
    :type message: str
    :param verdict: Verdict computed on the swapped family regardless.
    :type verdict: RepresentabilityVerdict
    """

    def __init__(self, message: str, verdict):
        super().__init__(message)
        self.verdict = verdict


class DocumentDecodeError(SchemaError):
    """An input document is not valid JSON. The message has the form
    `source:line:col: message`.

    :param source: Name of the input, a path, `<stdin>` or `<inline>`.
    :type source: str
    :param line: 1-based line of the error.
    :type line: int
    :param column: 1-based column of the error.
    :type column: int
    :param reason: Decoder message.
    :type reason: str
    """

    def __init__(self, source: str, line: int, column: int, reason: str):
        super().__init__(f"{source}:{line}:{column}: {reason}")
        self.source = source
        self.line = line
        self.column = column
