"""Gauge factorization of the metric extensor and the deformed product."""

import numpy as np
import pytest

from tetrax.errors import NearSingularMetric
from tetrax.extensor import (
    deformed_product_c,
    eta_adjoint,
    gauge_extensor,
    gauge_orbit_element,
    is_lorentz,
    lorentz_boost,
    lorentz_rotation,
    metric_extensor,
)
from tetrax.mv import ETA_MATRIX, Metric, Multivector

try:
    from hypothesis import given, settings
    from hypothesis import strategies as st

    HAS_HYPOTHESIS = True
except ImportError:
    HAS_HYPOTHESIS = False


def random_coframe(rng, scale=0.2):
    """Well-conditioned coframe matrix near the identity."""
    return np.eye(4) + scale * rng.uniform(-1.0, 1.0, (4, 4))


def metric_of_coframe(theta):
    inv = np.linalg.inv(theta)
    return Metric(inv @ ETA_MATRIX @ inv.T)


class TestMetricExtensor:
    def test_scaling_metric_gives_diagonal_extensor(self):
        """Spatially scaled metric: extensor flips the spatial signs away."""
        g_inv = np.diag([1.0, -0.25, -0.25, -0.25])
        ext = metric_extensor(Metric(g_inv))
        assert ext == pytest.approx(np.diag([1.0, 0.25, 0.25, 0.25]))

    def test_eta_adjoint_is_an_involution(self):
        rng = np.random.default_rng(7)
        m = rng.normal(size=(4, 4))
        assert eta_adjoint(eta_adjoint(m)) == pytest.approx(m)

    def test_extensor_is_eta_symmetric(self):
        rng = np.random.default_rng(11)
        theta = random_coframe(rng)
        ext = metric_extensor(metric_of_coframe(theta))
        assert eta_adjoint(ext) == pytest.approx(ext)


class TestGaugeExtensor:
    def test_scaling_metric_root(self):
        """diag(1, 1/4, 1/4, 1/4) extensor has root diag(1, 1/2, 1/2, 1/2)."""
        metric = Metric(np.diag([1.0, -0.25, -0.25, -0.25]))
        h = gauge_extensor(metric)
        assert h == pytest.approx(np.diag([1.0, 0.5, 0.5, 0.5]))

    def test_root_squares_to_extensor(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            metric = metric_of_coframe(random_coframe(rng))
            h = gauge_extensor(metric)
            assert np.max(np.abs(eta_adjoint(h) @ h - metric_extensor(metric))) < 1e-10

    def test_root_is_self_adjoint(self):
        rng = np.random.default_rng(5)
        metric = metric_of_coframe(random_coframe(rng))
        h = gauge_extensor(metric)
        assert eta_adjoint(h) == pytest.approx(h)

    def test_complex_pair_spectrum_still_factors(self):
        """Strong time-space mixing gives complex pairs; the real root survives."""
        g_inv = np.eye(4)
        g_inv[1, 1] = g_inv[2, 2] = g_inv[3, 3] = -1.0
        g_inv[0, 1] = g_inv[1, 0] = 0.9
        metric = Metric(g_inv)
        h = gauge_extensor(metric)
        assert np.max(np.abs(eta_adjoint(h) @ h - metric_extensor(metric))) < 1e-10

    def test_flipped_time_axis_is_rejected(self):
        """Timelike direction along x1: extensor spectrum hits the negative axis."""
        metric = Metric(np.diag([-1.0, 1.0, -1.0, -1.0]))
        with pytest.raises(NearSingularMetric, match="negative real eigenvalue"):
            gauge_extensor(metric)


class TestLorentzOrbit:
    def test_boost_and_rotation_are_lorentz(self):
        assert is_lorentz(lorentz_boost(0.3, axis=1))
        assert is_lorentz(lorentz_rotation(0.7, axis=3))
        assert not is_lorentz(np.diag([2.0, 1.0, 1.0, 1.0]))

    def test_boost_axis_validation(self):
        with pytest.raises(ValueError, match="boost axis"):
            lorentz_boost(0.1, axis=0)

    def test_orbit_preserves_extensor(self):
        rng = np.random.default_rng(9)
        metric = metric_of_coframe(random_coframe(rng))
        h = gauge_extensor(metric)
        moved = gauge_orbit_element(lorentz_boost(0.4, 2) @ lorentz_rotation(1.1, 1), h)
        assert np.max(np.abs(eta_adjoint(moved) @ moved - metric_extensor(metric))) < 1e-10


class TestDeformedProduct:
    def test_scaled_leg_squares_to_signature(self):
        """theta^1 = 2 dx1 deformed-squares to eta^{11} = -1."""
        metric = Metric(np.diag([1.0, -0.25, -0.25, -0.25]))
        h = gauge_extensor(metric)
        leg = 2.0 * Multivector.basis_one_form(1).components
        out = deformed_product_c(leg, leg, h)
        assert out[0] == pytest.approx(-1.0)
        assert np.max(np.abs(out[1:])) < 1e-12

    def test_coframe_anticommutator(self):
        """Coframe legs anticommute to 2 eta^{ab} under the deformed product."""
        rng = np.random.default_rng(13)
        theta = random_coframe(rng)
        metric = metric_of_coframe(theta)
        h = gauge_extensor(metric)
        legs = [np.zeros(16) for _ in range(4)]
        for a in range(4):
            legs[a][[1, 2, 4, 8]] = theta[a]
        for a in range(4):
            for b in range(4):
                anti = deformed_product_c(legs[a], legs[b], h) + deformed_product_c(
                    legs[b], legs[a], h
                )
                assert anti[0] == pytest.approx(2.0 * ETA_MATRIX[a, b], abs=1e-10)
                assert np.max(np.abs(anti[1:])) < 1e-10


if HAS_HYPOTHESIS:

    @given(st.floats(-2.0, 2.0), st.sampled_from([1, 2, 3]))
    @settings(max_examples=30, deadline=None)
    def test_boosts_stay_on_the_group(rapidity, axis):
        """Any boost satisfies the Lorentz condition."""
        assert is_lorentz(lorentz_boost(rapidity, axis), tol=1e-9)
