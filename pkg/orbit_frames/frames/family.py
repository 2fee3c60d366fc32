"""
Ordered finite families of vectors in C^d, the truncated stand-in for {f_k}.

author: Aaron Gobeyn
"""

from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from ..errors import IndexOutOfRange, InvalidInput, LengthMismatch, SchemaError
from ..linalg.core import as_matrix, as_square
from ..utils import decode_vector, encode_vector


@dataclass(frozen=True, eq=False)
class VectorFamily(object):
    """An ordered list of N vectors of C^dim, stored as the columns of a read-only
    dim x N matrix. The order is part of the data.

    :param matrix: dim x N complex matrix whose k-th column is f_k.
    :type matrix: np.ndarray
    :param label: Free text describing the family.
    :type label: str (default="")
    :param metadata: Free-form information such as the certified truncation depth.
    :type metadata: dict (default={})
    """

    matrix: np.ndarray = field(repr=False)
    label: str = ""
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        M = as_matrix(self.matrix, name="family").copy()
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "metadata", MappingProxyType(dict(self.metadata)))

    @classmethod
    def from_vectors(cls, vectors, label: str = "", metadata: dict | None = None):
        """Build a family from a sequence of equally long vectors.

        :param vectors: The vectors f_1, ..., f_N.
        :type vectors: Sequence[array_like]
        :param label: Free text.
        :type label: str (default="")
        :param metadata: Free-form information.
        :type metadata: dict | None (default=None)
        """
        vectors = [np.asarray(v, dtype=complex).ravel() for v in vectors]
        if len(vectors) == 0:
            raise InvalidInput("A family needs at least one vector.")
        if len({v.size for v in vectors}) != 1:
            raise InvalidInput("All vectors of a family must share the same dimension.")
        return cls(np.column_stack(vectors), label=label, metadata=metadata or {})

    @classmethod
    def from_columns(cls, matrix, label: str = "", metadata: dict | None = None):
        """Build a family from a dim x N matrix whose columns are the elements."""
        return cls(matrix, label=label, metadata=metadata or {})

    @classmethod
    def orbit(cls, T, phi, length: int, label: str = "", metadata: dict | None = None):
        """The family {T^n phi}_{n < length} built by repeated multiplication.

        :param T: Square matrix.
        :type T: array_like
        :param phi: Generator.
        :type phi: array_like
        :param length: Number of elements N >= 1.
        :type length: int
        """
        T = as_square(T)
        phi = np.asarray(phi, dtype=complex).ravel()
        if phi.size != T.shape[0]:
            raise LengthMismatch(
                f"Generator has dimension {phi.size}, operator acts on C^{T.shape[0]}."
            )
        if length < 1:
            raise InvalidInput(f"Orbit length must be positive, got {length}.")
        columns = np.empty((phi.size, length), dtype=complex)
        columns[:, 0] = phi
        for n in range(1, length):
            columns[:, n] = T @ columns[:, n - 1]
        return cls(columns, label=label, metadata=metadata or {})

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def size(self) -> int:
        """Number of elements N."""
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return self.size

    @property
    def vectors(self) -> list[np.ndarray]:
        return [self.matrix[:, k] for k in range(self.size)]

    def element(self, position: int) -> np.ndarray:
        """The element f_position, `position` is 1-based."""
        self.check_position(position)
        return self.matrix[:, position - 1]

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=0)

    def max_norm(self) -> float:
        return float(self.norms().max())

    def check_position(self, position: int) -> None:
        if not (1 <= position <= self.size):
            raise IndexOutOfRange(
                f"Position {position} is outside 1..{self.size} of family '{self.label}'."
            )

    def subfamily(self, positions, label: str | None = None) -> "VectorFamily":
        """Family made of the elements at the given 1-based positions, in that order."""
        positions = list(positions)
        for p in positions:
            self.check_position(p)
        if not positions:
            raise InvalidInput("A subfamily needs at least one element.")
        index = np.asarray(positions, dtype=int) - 1
        return VectorFamily(
            self.matrix[:, index], label=self.label if label is None else label
        )

    def swapped(self, first: int, second: int) -> "VectorFamily":
        """Same elements with f_first and f_second interchanged (1-based)."""
        self.check_position(first)
        self.check_position(second)
        order = list(range(1, self.size + 1))
        order[first - 1], order[second - 1] = order[second - 1], order[first - 1]
        return self.subfamily(order, label=f"{self.label} (swap {first}<->{second})")

    def concatenated(self, other: "VectorFamily", label: str | None = None):
        if other.dim != self.dim:
            raise LengthMismatch(f"Cannot concatenate C^{self.dim} and C^{other.dim}.")
        return VectorFamily(
            np.hstack([self.matrix, other.matrix]),
            label=f"{self.label}+{other.label}" if label is None else label,
        )

    def scaled(self, factor: complex) -> "VectorFamily":
        return VectorFamily(factor * self.matrix, label=self.label)

    def with_metadata(self, **entries) -> "VectorFamily":
        return VectorFamily(self.matrix, label=self.label, metadata={**self.metadata, **entries})

    def to_json(self) -> dict:
        """JSON document `{"dim", "label", "vectors", "metadata"}`, vectors in order."""
        return {
            "dim": self.dim,
            "label": self.label,
            "vectors": [encode_vector(v) for v in self.vectors],
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_json(cls, document: dict) -> "VectorFamily":
        """Parse the VectorFamily schema, see `to_json`.

        :param document: Parsed JSON.
        :type document: dict
        :raises SchemaError: If a field is missing or inconsistent.
        """
        if not isinstance(document, dict):
            raise SchemaError("A family document must be a JSON object.")
        for key in ("dim", "vectors"):
            if key not in document:
                raise SchemaError(f"Family document misses the '{key}' field.")
        dim = document["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise SchemaError(f"'dim' must be a positive integer, got {dim!r}.")
        raw = document["vectors"]
        if not isinstance(raw, list) or len(raw) == 0:
            raise SchemaError("'vectors' must be a non-empty list.")
        vectors = [decode_vector(v, where=f"vectors[{k}]") for k, v in enumerate(raw)]
        for k, v in enumerate(vectors):
            if v.size != dim:
                raise SchemaError(
                    f"vectors[{k}] has {v.size} entries, invariant 'all vectors share dim = {dim}' violated."
                )
        if not all(np.all(np.isfinite(v)) for v in vectors):
            raise SchemaError("Family document contains non-finite entries.")
        metadata = document.get("metadata", {})
        if not isinstance(metadata, dict):
            raise SchemaError("'metadata' must be a JSON object.")
        return cls.from_vectors(vectors, label=str(document.get("label", "")), metadata=metadata)
