"""
Collection of useful functions that are used throughout the module, mostly the
conversion between numpy arrays and the JSON representation of complex data.

author: Aaron Gobeyn
"""

import math

import numpy as np

from .errors import SchemaError


def complex_to_pair(value: complex) -> list[float]:
    """Convert a complex scalar to the `[re, im]` pair used in all JSON documents.

    :param value: Scalar to convert.
    :type value: complex
    """
    value = complex(value)
    return [float(value.real), float(value.imag)]


def pair_to_complex(pair, where: str = "value") -> complex:
    """Inverse of `complex_to_pair`. A bare real number is accepted as well, in which
    case the imaginary part is zero.

    :param pair: Two-element list `[re, im]` or a real number.
    :type pair: list[float] | float
    :param where: Location of the value inside the document, used in error messages.
    :type where: str (default="value")
    """
    match pair:
        case bool():
            raise SchemaError(f"{where}: expected [re, im], got a boolean.")
        case int() | float():
            return complex(float(pair), 0.0)
        case [re, im] if all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)
        ):
            return complex(float(re), float(im))
        case _:
            raise SchemaError(f"{where}: expected [re, im], got {pair!r}.")


def encode_vector(vector: np.ndarray) -> list[list[float]]:
    """Encode a complex vector as a list of `[re, im]` pairs.

    :param vector: One dimensional array.
    :type vector: np.ndarray
    """
    return [complex_to_pair(x) for x in np.asarray(vector).ravel()]


def decode_vector(pairs, where: str = "vector") -> np.ndarray:
    """Decode a list of `[re, im]` pairs into a complex vector.

    :param pairs: Encoded vector.
    :type pairs: list
    :param where: Location inside the document, used in error messages.
    :type where: str (default="vector")
    """
    if not isinstance(pairs, list) or len(pairs) == 0:
        raise SchemaError(f"{where}: expected a non-empty list of [re, im] pairs.")
    return np.array(
        [pair_to_complex(p, where=f"{where}[{i}]") for i, p in enumerate(pairs)],
        dtype=complex,
    )


def encode_matrix(matrix: np.ndarray) -> list[list[list[float]]]:
    """Encode a complex matrix row by row.

    :param matrix: Two dimensional array.
    :type matrix: np.ndarray
    """
    return [encode_vector(row) for row in np.atleast_2d(matrix)]


def decode_matrix(rows, where: str = "matrix") -> np.ndarray:
    """Decode a row-major list of encoded rows into a complex matrix.

    :param rows: Encoded matrix.
    :type rows: list
    :param where: Location inside the document, used in error messages.
    :type where: str (default="matrix")
    """
    if not isinstance(rows, list) or len(rows) == 0:
        raise SchemaError(f"{where}: expected a non-empty list of rows.")
    decoded = [decode_vector(r, where=f"{where}[{i}]") for i, r in enumerate(rows)]
    if len({len(r) for r in decoded}) != 1:
        raise SchemaError(f"{where}: rows have different lengths.")
    return np.vstack(decoded)


def finite_or_none(value: float) -> float | None:
    """JSON has no infinity, return `None` for non-finite floats.

    :param value: Float to sanitize.
    :type value: float
    """
    value = float(value)
    return value if math.isfinite(value) else None


def basis_vector(dim: int, position: int) -> np.ndarray:
    """Canonical basis vector e_position of C^dim, `position` is 1-based.

    :param dim: Dimension of the space.
    :type dim: int
    :param position: 1-based index of the nonzero entry.
    :type position: int
    """
    v = np.zeros(dim, dtype=complex)
    v[position - 1] = 1.0
    return v
