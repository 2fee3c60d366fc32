import numpy as np
import pytest

from orbit_frames.errors import ModulusOutOfRange
from orbit_frames.spectral.carleson import carleson_lower_bound, pseudo_hyperbolic_distances
from orbit_frames.spectral.model import sample_carleson_sequence


def test_single_point_has_empty_product():
    report = carleson_lower_bound([0.5])
    assert report.infimum == 1.0
    assert report.minimizer == 1
    assert report.satisfied and not report.has_duplicates


def test_duplicates_force_zero():
    report = carleson_lower_bound([0.3, 0.3])
    assert report.infimum == 0.0
    assert report.has_duplicates
    assert not report.satisfied


def test_dyadic_sequence_regression():
    report = carleson_lower_bound(sample_carleson_sequence(2.0, 12))
    assert report.infimum == pytest.approx(1.688683266648814e-02, rel=1e-10)
    assert report.minimizer == 7
    assert report.per_index_products[0] == pytest.approx(1.8181943720e-01, rel=1e-9)
    assert report.per_index_products[11] == pytest.approx(1.2154595260e-01, rel=1e-9)
    assert report.satisfied
    assert report.infimum == min(report.per_index_products)


def test_permutation_invariance(rng):
    lam = 0.9 * np.sqrt(rng.uniform(size=7)) * np.exp(2j * np.pi * rng.uniform(size=7))
    report = carleson_lower_bound(lam)
    permuted = carleson_lower_bound(lam[rng.permutation(7)])
    assert permuted.infimum == pytest.approx(report.infimum, rel=1e-12)


def test_threshold():
    close = [0.5, 0.5 + 1e-8]
    assert not carleson_lower_bound(close).satisfied
    assert carleson_lower_bound(close, delta=1e-12).satisfied


def test_pseudo_hyperbolic_distances_are_symmetric(rng):
    lam = 0.8 * rng.uniform(size=4) * np.exp(2j * np.pi * rng.uniform(size=4))
    D = pseudo_hyperbolic_distances(lam)
    assert np.allclose(D, D.T)
    assert np.allclose(np.diag(D), 0.0)
    assert np.all(D < 1.0)


def test_points_outside_the_disc():
    with pytest.raises(ModulusOutOfRange):
        carleson_lower_bound([0.2, 1.0])


def test_report_json():
    document = carleson_lower_bound([0.1, -0.1]).to_json()
    assert set(document) == {
        "per_index_products", "infimum", "minimizer", "satisfied", "has_duplicates", "delta",
    }
    assert document["delta"] == 1e-6
