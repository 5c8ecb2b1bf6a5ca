import math

import pytest

from contactscatter.model import Family, Kinematics, PotentialSpec, reduce
from contactscatter.oracle import (
    IntegrationConfig,
    oracle_phase_shift,
    oracle_shell_regularized,
)
from contactscatter.phase_shifts import tan_delta, tan_delta_1d

K1 = Kinematics(1.0)


def _closed_form_delta(spec, k, index):
    rp = reduce(spec, Kinematics(k))
    t = tan_delta(index, rp)
    return math.atan(t) if math.isfinite(t) else math.pi / 2.0


class TestWellIntegration:
    def test_vanishing_strength(self):
        for fam, kwargs, ch in (
            (Family.WELL_3D, {}, 0),
            (Family.WELL_2D, {"beta": 1.0, "a0": 2.0}, 0),
            (Family.WELL_1D, {}, "+"),
        ):
            spec = PotentialSpec(fam, -1e-12, 1.0, 0.4, **kwargs)
            assert abs(oracle_phase_shift(spec, K1, ch)) <= 1e-8

    def test_well3d_reference_case(self):
        spec = PotentialSpec(Family.WELL_3D, -1.0, 1.0, 0.5)
        got = oracle_phase_shift(spec, K1, 0)
        exact = _closed_form_delta(spec, 1.0, 0)
        assert abs(math.remainder(got - exact, math.pi)) <= 1e-6

    def test_well1d_near_even_half_bound(self):
        # Omega = -pi^2 is the first even-parity resonance; at small k the
        # even phase shift collapses toward a multiple of pi, with the
        # leading finite-k deviation -k a / 2
        spec = PotentialSpec(Family.WELL_1D, -math.pi**2, 1.0, 1.0)
        k = 0.01
        got = oracle_phase_shift(spec, Kinematics(k), "+")
        assert abs(math.remainder(got, math.pi)) <= 0.6 * k * 1.1
        assert got == pytest.approx(-0.5 * k, rel=2e-2)

    def test_channel_spellings(self):
        spec = PotentialSpec(Family.WELL_1D, -1.0, 1.0, 0.5)
        assert oracle_phase_shift(spec, K1, "+") == oracle_phase_shift(spec, K1, 0)
        assert oracle_phase_shift(spec, K1, "-") == oracle_phase_shift(spec, K1, 1)
        with pytest.raises(ValueError):
            oracle_phase_shift(spec, K1, "x")

    def test_rejects_shell_families(self):
        spec = PotentialSpec(Family.SHELL_3D, -1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            oracle_phase_shift(spec, K1, 0)


class TestConvergence:
    def test_step_halving_is_second_order(self):
        # the raw (unextrapolated) error must shrink by at least 3x per
        # halving once in the asymptotic regime
        spec = PotentialSpec(Family.WELL_3D, -1.0, 1.0, 0.5)
        deltas = [
            oracle_phase_shift(spec, K1, 0, IntegrationConfig(step=0.5 / n), refine=False)
            for n in (250, 500, 1000)
        ]
        shrink = abs(deltas[0] - deltas[1]) / abs(deltas[1] - deltas[2])
        assert shrink >= 3.0

    def test_matching_radius_independence(self):
        spec = PotentialSpec(Family.WELL_2D, -0.7, 1.0, 0.4, beta=1.0, a0=2.0)
        d1 = oracle_phase_shift(spec, K1, 0, IntegrationConfig(r_max=10.0))
        d2 = oracle_phase_shift(spec, K1, 0, IntegrationConfig(r_max=20.0))
        assert abs(d1 - d2) < 1e-7

    def test_config_invariants(self):
        spec = PotentialSpec(Family.WELL_3D, -1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            oracle_phase_shift(spec, K1, 0, IntegrationConfig(r_max=3.0))  # < 10/k
        with pytest.raises(ValueError):
            oracle_phase_shift(spec, K1, 0, IntegrationConfig(step=0.01))  # > a/200


class TestShellRegularization:
    def test_zero_strength(self):
        spec = PotentialSpec(Family.SHELL_3D, 0.0, 1.0, 0.5)
        assert oracle_shell_regularized(spec, K1, 0) == 0.0

    def test_shell3d_resonant_reference(self):
        spec = PotentialSpec(Family.SHELL_3D, -1.0, 1.0, 0.5)
        got = oracle_shell_regularized(spec, K1, 0)
        exact = _closed_form_delta(spec, 1.0, 0)
        assert abs(math.remainder(got - exact, math.pi)) <= 1e-5

    def test_double_delta_pair(self):
        spec = PotentialSpec(Family.DOUBLE_DELTA_1D, 2.0, 0.0, 0.3)
        rp = reduce(spec, K1)
        tp, tm = tan_delta_1d(rp)
        for ch, t in (("+", tp), ("-", tm)):
            got = oracle_shell_regularized(spec, K1, ch)
            assert abs(math.remainder(got - math.atan(t), math.pi)) <= 1e-5

    def test_ring2d_reference(self):
        spec = PotentialSpec(Family.RING_2D, -1.0, 1.0, 0.3, beta=1.0, a0=2.0)
        got = oracle_shell_regularized(spec, K1, 0)
        exact = _closed_form_delta(spec, 1.0, 0)
        assert abs(math.remainder(got - exact, math.pi)) <= 1e-5

    def test_width_validation(self):
        spec = PotentialSpec(Family.SHELL_3D, -1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            oracle_shell_regularized(spec, K1, 0, w=0.5 / 10.0)  # > a/50

    def test_rejects_well_families(self):
        spec = PotentialSpec(Family.WELL_3D, -1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            oracle_shell_regularized(spec, K1, 0)
