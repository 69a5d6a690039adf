"""Sources, wave operator, superpotentials and balance laws."""

import numpy as np
import pytest

from tetrax import maxwell as mx
from tetrax.fields import FDScheme, codifferential, exterior_derivative
from tetrax.mv import hodge_c
from tetrax.scenarios import get_scenario

SCHEME = FDScheme(step=1e-3, order=2)

FLRW_POINT = np.array([2.0, 0.3, -0.4, 0.7])
SCHW_POINT = np.array([0.0, 10.0, 1.2, 2.0])
RIND_POINT = np.array([0.1, 2.0, 0.2, -0.3])

MASK1 = [1, 2, 4, 8]


@pytest.fixture(scope="module")
def flrw():
    return get_scenario("flrw_flat", scheme=SCHEME)


@pytest.fixture(scope="module")
def schwarzschild():
    return get_scenario("schwarzschild", scheme=SCHEME)


@pytest.fixture(scope="module")
def rindler():
    return get_scenario("rindler", scheme=SCHEME)


def unit(a):
    out = np.zeros(16)
    out[1 << a] = 1.0
    return out


class TestFieldStrengths:
    def test_flrw_strengths(self, flrw):
        """Spatial legs sweep time-space planes at rate h."""
        fields = mx.field_strength_fields(flrw.coframe)
        assert np.max(np.abs(fields[0].eval(FLRW_POINT))) < 1e-9
        comps = fields[1].eval(FLRW_POINT)
        expect = np.zeros(16)
        expect[3] = 1.0  # da/dt = 1 on dx0^dx1
        assert comps == pytest.approx(expect, abs=1e-9)
        tet = flrw.coframe.metric_at(FLRW_POINT).to_eta @ comps
        expect_tet = np.zeros(16)
        expect_tet[3] = 0.5  # h theta^{01}
        assert tet == pytest.approx(expect_tet, abs=1e-9)


class TestWaveOperator:
    def test_flrw_dalembert_legs(self, flrw):
        box = mx.dalembert_legs(flrw.coframe, FLRW_POINT)
        assert box[0] == pytest.approx(-0.75 * unit(0), abs=1e-7)
        for i in (1, 2, 3):
            assert box[i] == pytest.approx(-0.25 * unit(i), abs=1e-7)

    def test_split_closes_on_curved_charts(self, flrw, schwarzschild):
        """Wave operator = curvature part + rough part, leg by leg."""
        for scen, p in ((flrw, FLRW_POINT), (schwarzschild, SCHW_POINT)):
            split = mx.laplacian_split(scen.coframe, p)
            resid = split["total"] - split["ricci_part"] - split["dalembert_part"]
            assert np.max(np.abs(resid)) < 1e-6

    def test_flrw_split_values(self, flrw):
        split = mx.laplacian_split(flrw.coframe, FLRW_POINT)
        assert split["total"][0] == pytest.approx(-0.75 * unit(0), abs=1e-6)
        assert split["total"][1] == pytest.approx(0.25 * unit(1), abs=1e-6)
        assert split["ricci_part"][0] == pytest.approx(np.zeros(16), abs=1e-7)
        assert split["ricci_part"][1] == pytest.approx(0.5 * unit(1), abs=1e-7)

    def test_rindler_adjoint_laplacian_is_symmetric(self, rindler):
        """Both stretched legs see the same +1/x^2 from the adjoint route."""
        split = mx.laplacian_split(rindler.coframe, RIND_POINT)
        assert split["total"][0] == pytest.approx(0.25 * unit(0), abs=1e-6)
        assert split["total"][1] == pytest.approx(0.25 * unit(1), abs=1e-6)
        assert np.max(np.abs(split["ricci_part"])) < 1e-7

    def test_rindler_uniform_laplacian_is_asymmetric(self, rindler):
        """The plain-codifferential route splits the legs by sign.

        This asymmetry is why the adjoint variant feeds the split: with
        the uniform convention the time and space legs disagree.
        """
        cf = rindler.coframe
        values = []
        for a in (0, 1):
            leg = cf.coframe_field(a)
            dd = exterior_derivative(
                codifferential(leg, cf.metric_at, cf.scheme), cf.scheme
            )
            sd = codifferential(
                exterior_derivative(leg, cf.scheme), cf.metric_at, cf.scheme
            )
            tet = cf.metric_at(RIND_POINT).to_eta @ (dd.eval(RIND_POINT) + sd.eval(RIND_POINT))
            values.append(tet)
        assert values[0] == pytest.approx(0.25 * unit(0), abs=1e-6)
        assert values[1] == pytest.approx(-0.25 * unit(1), abs=1e-6)


class TestCurrents:
    def test_flrw_current_values(self, flrw):
        """Time current cancels exactly; space currents are -h^2 legs."""
        current = mx.current_assembly(flrw.coframe, FLRW_POINT)
        assert np.max(np.abs(current[0])) < 1e-6
        for i in (1, 2, 3):
            assert current[i] == pytest.approx(-0.25 * unit(i), abs=1e-6)

    def test_assembly_matches_star_chain(self, flrw, schwarzschild):
        for scen, p in ((flrw, FLRW_POINT), (schwarzschild, SCHW_POINT)):
            assembly = mx.current_assembly(scen.coframe, p)
            chain = mx.current_chain(scen.coframe, p)
            assert np.max(np.abs(assembly - chain)) < 1e-6

    def test_currents_are_conserved(self, schwarzschild):
        resid = mx.conservation_residuals(schwarzschild.coframe, SCHW_POINT)
        assert np.max(np.abs(resid)) < 1e-3

    def test_vacuum_current_is_pure_energy_term(self, schwarzschild):
        """No stress on a vacuum chart: the current is the self-energy piece."""
        curv = schwarzschild.coframe.curvature(SCHW_POINT)
        assert np.max(np.abs(curv.einstein_one_forms)) < 1e-7
        current = mx.current_assembly(schwarzschild.coframe, SCHW_POINT)
        assert np.max(np.abs(current)) > 1e-3  # yet the current is not zero


class TestSuperpotentials:
    def test_flrw_frozen_values(self, flrw):
        star_s = mx.superpotential_two_forms(flrw.coframe, FLRW_POINT)
        assert np.max(np.abs(star_s[0])) < 1e-9
        expect = np.zeros(16)
        expect[0b1100] = -1.0  # -2h on theta^{23}
        assert star_s[1] == pytest.approx(expect, abs=1e-9)
        star_t = mx.energy_three_forms(flrw.coframe, FLRW_POINT)
        expect_t0 = np.zeros(16)
        expect_t0[0b1110] = -0.75  # -3h^2 theta^{123}
        assert star_t[0] == pytest.approx(expect_t0, abs=1e-9)
        expect_t1 = np.zeros(16)
        expect_t1[0b1101] = 0.25  # +h^2 theta^{023}
        assert star_t[1] == pytest.approx(expect_t1, abs=1e-9)

    def test_balance_law(self, flrw, schwarzschild):
        for scen, p in ((flrw, FLRW_POINT), (schwarzschild, SCHW_POINT)):
            resid = mx.balance_residuals(scen.coframe, p)
            assert np.max(np.abs(resid)) < 1e-9

    def test_mass_shift_cancels_in_balance(self, schwarzschild):
        plain = mx.balance_residuals(schwarzschild.coframe, SCHW_POINT)
        massive = mx.balance_residuals(schwarzschild.coframe, SCHW_POINT, mass=0.7)
        assert np.max(np.abs(plain - massive)) < 1e-14

    def test_massless_reduction_is_exact(self, flrw):
        plain = mx.balance_residuals(flrw.coframe, FLRW_POINT)
        zero_mass = mx.balance_residuals(flrw.coframe, FLRW_POINT, mass=0.0)
        assert np.array_equal(plain, zero_mass)

    def test_gauge_residual(self, flrw):
        """|delta leg| peaks at 3h on the expanding chart."""
        assert mx.gauge_residual(flrw.coframe, FLRW_POINT) == pytest.approx(
            1.5, abs=1e-6
        )


class TestConjugatedDual:
    @pytest.mark.parametrize("name,point", [
        ("perturbed_flat", np.array([0.5, -1.0, 2.0, 0.25])),
        ("flrw_flat", FLRW_POINT),
        ("schwarzschild", SCHW_POINT),
    ])
    def test_conjugation_equals_congruence(self, name, point):
        """Gauge-factor conjugation of the flat dual is the metric dual."""
        scen = get_scenario(name, scheme=SCHEME)
        metric = scen.coframe.metric_at(point)
        rng = np.random.default_rng(21)
        for _ in range(5):
            probe = rng.normal(size=16)
            direct = hodge_c(np.ascontiguousarray(probe), metric)
            conj = mx.conjugated_hodge(probe, metric)
            scale = max(1.0, float(np.max(np.abs(direct))))
            assert np.max(np.abs(direct - conj)) < 1e-13 * scale

    def test_conjugated_balance(self, flrw):
        pert = get_scenario("perturbed_flat", scheme=SCHEME)
        p = np.array([0.5, -1.0, 2.0, 0.25])
        assert np.max(np.abs(mx.balance_residuals_conjugated(pert.coframe, p))) < 1e-10
        assert np.max(
            np.abs(mx.balance_residuals_conjugated(flrw.coframe, FLRW_POINT))
        ) < 1e-10
