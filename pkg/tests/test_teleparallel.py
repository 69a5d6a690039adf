"""Torsion split, weighted square, and the torsion route to the sources."""

import numpy as np
import pytest

from tetrax import lagrangian as lag
from tetrax import teleparallel as tp
from tetrax.cartan import Coframe
from tetrax.fields import Domain, FDScheme
from tetrax.scenarios import get_scenario

SCHEME = FDScheme(step=1e-3, order=2)

FLRW_POINT = np.array([2.0, 0.3, -0.4, 0.7])
SCHW_POINT = np.array([0.0, 10.0, 1.2, 2.0])


@pytest.fixture(scope="module")
def flrw():
    return get_scenario("flrw_flat", scheme=SCHEME)


@pytest.fixture(scope="module")
def twisted():
    """Hand-made coframe whose torsion has all three parts nonzero."""
    domain = Domain([-3.0] * 4, [3.0] * 4)

    def matrix(p):
        m = np.eye(4)
        m[1, 2] = 0.2 * p[3]
        m[2, 3] = 0.1 * p[1] * p[1]
        m[0, 1] = 0.15 * p[2]
        return m

    return Coframe(domain, matrix, scheme=SCHEME, name="twisted")


class TestTorsionSplit:
    def test_flrw_trace(self, flrw):
        v = tp.trace_one_form(flrw.coframe, FLRW_POINT)
        expect = np.zeros(16)
        expect[1] = -1.5  # -3h on the time leg
        assert v == pytest.approx(expect, abs=1e-9)

    def test_flrw_torsion_is_pure_vector(self, flrw):
        parts = tp.torsion_parts(flrw.coframe, FLRW_POINT)
        assert np.max(np.abs(parts["axial"])) < 1e-9
        assert np.max(np.abs(parts["tensor"])) < 1e-9
        expect = np.zeros(16)
        expect[3] = 0.5  # h theta^{01}
        assert parts["vector"][1] == pytest.approx(expect, abs=1e-9)

    def test_twisted_coframe_has_all_parts(self, twisted):
        p = np.array([0.4, 1.2, -0.8, 0.9])
        parts = tp.torsion_parts(twisted, p)
        for key in ("tensor", "vector", "axial"):
            assert np.max(np.abs(parts[key])) > 1e-4

    @pytest.mark.parametrize("point", [FLRW_POINT, np.array([3.5, 2.0, 1.0, -1.0])])
    def test_completeness(self, flrw, point):
        assert tp.completeness_residual(flrw.coframe, point) < 1e-12

    def test_orthogonality(self, twisted, flrw):
        p = np.array([0.4, 1.2, -0.8, 0.9])
        for value in tp.orthogonality_residuals(twisted, p).values():
            assert abs(value) < 1e-10
        for value in tp.orthogonality_residuals(flrw.coframe, FLRW_POINT).values():
            assert abs(value) < 1e-10
        assert tp.completeness_residual(twisted, p) < 1e-12


class TestTeleparallelDensity:
    def test_flrw_value(self, flrw):
        dens = tp.teleparallel_density(flrw.coframe, FLRW_POINT)
        assert dens[15] / 8.0 == pytest.approx(0.75, abs=1e-9)

    @pytest.mark.parametrize(
        "name,point",
        [
            ("flrw_flat", FLRW_POINT),
            ("schwarzschild", SCHW_POINT),
            ("rindler", np.array([0.1, 1.7, 0.2, -0.3])),
        ],
    )
    def test_matches_first_order_density(self, name, point):
        """Weighted torsion square is the connection-square density."""
        scen = get_scenario(name, scheme=SCHEME)
        tele = tp.teleparallel_density(scen.coframe, point)
        first = lag.first_order_density(scen.coframe, point)
        assert np.max(np.abs(tele - first)) < 1e-10

    def test_matches_on_twisted_coframe(self, twisted):
        p = np.array([0.4, 1.2, -0.8, 0.9])
        tele = tp.teleparallel_density(twisted, p)
        first = lag.first_order_density(twisted, p)
        assert np.max(np.abs(tele - first)) < 1e-10

    def test_mass_term(self, flrw):
        """Half mass-squared times the dual-volume of four unit legs."""
        plain = tp.teleparallel_density(flrw.coframe, FLRW_POINT)
        massive = tp.teleparallel_density(flrw.coframe, FLRW_POINT, mass=0.6)
        assert (massive[15] - plain[15]) / 8.0 == pytest.approx(0.72, abs=1e-12)


class TestSourceForm:
    def test_torsion_codifferential_feeds_the_current(self, flrw):
        resid = tp.source_form_residuals(flrw.coframe, FLRW_POINT)
        assert np.max(np.abs(resid)) < 1e-4
