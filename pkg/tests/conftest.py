import numpy as np
import pytest

from orbit_frames.frames.family import VectorFamily
from orbit_frames.linalg.core import Tolerance
from orbit_frames.spectral.model import generator, model_orbit, sample_carleson_sequence


@pytest.fixture
def rng():
    return np.random.default_rng(20241001)


@pytest.fixture
def tol():
    return Tolerance.DEFAULT


@pytest.fixture
def duplicated_family():
    """{e_1, e_1, e_2, e_3} in C^3."""
    E = np.eye(3)
    return VectorFamily(np.column_stack([E[:, 0], E[:, 0], E[:, 1], E[:, 2]]), label="e1 e1 e2 e3")


def jordan_block(size: int) -> np.ndarray:
    """Nilpotent Jordan block, J e_k = e_{k-1}."""
    return np.eye(size, k=1, dtype=complex)


def cyclic_operator(nilpotent: int, lambdas) -> tuple[np.ndarray, np.ndarray]:
    """T = J_m (+) diag(lambdas) and its cyclic vector e_m (+) (1, ..., 1); q(T) = m."""
    lambdas = np.asarray(lambdas, dtype=complex)
    d = nilpotent + lambdas.size
    T = np.zeros((d, d), dtype=complex)
    T[:nilpotent, :nilpotent] = jordan_block(nilpotent)
    T[nilpotent:, nilpotent:] = np.diag(lambdas)
    phi = np.zeros(d, dtype=complex)
    if nilpotent:
        phi[nilpotent - 1] = 1.0
    phi[nilpotent:] = 1.0
    return T, phi


@pytest.fixture
def basis_then_orbit():
    """The orbit of e_1 under the operator e_1 -> e_2 -> e_3 -> h_1 -> h_2 -> ..., where
    {h_n} is the certified orbit of the diagonal model alpha = 2, d = 2. Returns the
    operator and the family {e_1, e_2, e_3, h_1, h_2, ...} in C^5."""
    model = sample_carleson_sequence(2.0, 2)
    H = model_orbit(model, 1e-10)
    T = np.zeros((5, 5), dtype=complex)
    T[1, 0] = 1.0
    T[2, 1] = 1.0
    T[3:, 2] = generator(model)
    T[3:, 3:] = model.operator
    e1 = np.zeros(5, dtype=complex)
    e1[0] = 1.0
    return T, VectorFamily.orbit(T, e1, 3 + H.size, label="basis block then orbit")


@pytest.fixture
def make_jordan():
    return jordan_block


@pytest.fixture
def make_cyclic():
    return cyclic_operator
