import math
import random

import pytest

from contactscatter.model import Family, Kinematics, PotentialSpec, reduce, reduced_at_xi
from contactscatter.oracle import oracle_phase_shift
from contactscatter.phase_shifts import (
    UnsupportedRegimeError,
    build_table,
    delta_mod_pi,
    tan_delta,
    tan_delta_1d,
    tan_delta_ring2d,
    tan_delta_shell3d,
    tan_delta_well2d,
    tan_delta_well3d,
)

K1 = Kinematics(1.0)


def _rp(family, omega, alpha, a, beta=0.0, a0=None, k=1.0):
    return reduce(PotentialSpec(family, omega, alpha, a, beta=beta, a0=a0), Kinematics(k))


class TestShell3D:
    def test_zero_strength(self):
        rp = _rp(Family.SHELL_3D, 0.0, 1.0, 0.3)
        for l in range(5):
            assert tan_delta_shell3d(l, rp) == 0.0

    def test_resonant_s_wave_approaches_three_halves_xi(self):
        rp = _rp(Family.SHELL_3D, -1.0, 1.0, 1e-3)
        assert 1e-3 * tan_delta_shell3d(0, rp) == pytest.approx(1.5, rel=1e-5)

    def test_p_wave_suppressed(self):
        rp = _rp(Family.SHELL_3D, -1.0, 1.0, 1e-2)
        t = tan_delta_shell3d(1, rp)
        assert abs(t) < 1e-5
        # frozen 50-digit evaluation of the same expression
        assert t == pytest.approx(1.6666666655238028932e-7, rel=1e-10)

    def test_alpha_scaling_identity(self):
        # the formula depends on (alpha, b) only through b*xi^(1-alpha)
        xi = 0.37
        b, alpha = -0.6, 1.4
        alpha2 = 0.3
        b2 = b * xi ** (1.0 - alpha) / xi ** (1.0 - alpha2)
        rp = _rp(Family.SHELL_3D, b, alpha, xi)
        rp2 = _rp(Family.SHELL_3D, b2, alpha2, xi)
        for l in range(4):
            assert tan_delta_shell3d(l, rp) == pytest.approx(
                tan_delta_shell3d(l, rp2), rel=1e-12
            )

    def test_exact_resonance_gives_infinite_tangent(self):
        # at alpha=1, b=-1 the s-wave denominator is O(xi^2); at a xi where
        # numerator and denominator scale apart the ratio is huge but finite,
        # while a vanishing denominator must be reported as +-inf
        rp = _rp(Family.SHELL_3D, -1.0, 1.0, 1e-8)
        t = tan_delta_shell3d(0, rp)
        assert t > 1e7  # ~ 3/(2 xi)


class TestWell3D:
    def test_symmetry_zero_at_equal_arguments(self):
        # eta == xi makes the numerator vanish identically
        rp = _rp(Family.WELL_3D, -1e-300, 1.0, 0.4)
        for l in range(6):
            assert tan_delta_well3d(l, rp) == 0.0

    def test_resonant_divergence(self):
        rp = _rp(Family.WELL_3D, -math.pi**2 / 12.0, 1.0, 1e-3)
        assert abs(tan_delta_well3d(0, rp)) > 1e2

    def test_generic_decay(self):
        rp = _rp(Family.WELL_3D, -0.5, 1.0, 1e-3)
        t = tan_delta_well3d(0, rp)
        assert abs(t) < 1e-2
        # frozen extended-precision evaluation
        assert t == pytest.approx(0.0012645209027843246317, rel=1e-9)

    def test_eta_at_least_xi(self):
        rng = random.Random(2)
        for _ in range(50):
            spec = PotentialSpec(
                Family.WELL_3D,
                -rng.uniform(0.01, 5.0),
                rng.uniform(0.0, 2.0),
                rng.uniform(0.01, 1.0),
            )
            rp = reduce(spec, K1)
            assert rp.eta >= rp.xi
            assert not rp.eta_imaginary

    def test_repulsive_well_rejected(self):
        # forced imaginary eta (out-of-contract reduced params)
        from contactscatter.model import ReducedParams

        rp = ReducedParams(Family.WELL_3D, 1.0, 0.0, 0.5, 1.0, eta=1.0, eta_imaginary=True)
        with pytest.raises(UnsupportedRegimeError):
            tan_delta_well3d(0, rp)


class TestRing2D:
    def test_zero_strength(self):
        rp = _rp(Family.RING_2D, 0.0, 1.0, 0.3, beta=1.0, a0=1.0)
        for m in range(4):
            assert tan_delta_ring2d(m, rp) == 0.0

    def test_limit_value_at_resonance(self):
        # m=0, alpha=beta=1, b=-1, xi0=1: tan d0 -> pi/(2*gamma - 2*ln 2)
        target = -13.549346938783970187
        rp = _rp(Family.RING_2D, -1.0, 1.0, 1e-8, beta=1.0, a0=1.0)
        assert tan_delta_ring2d(0, rp) == pytest.approx(target, rel=1e-4)

    def test_domain_error_beyond_xi0(self):
        from contactscatter.model import ReducedParams

        # xi >= xi0 flips the sign of the log factor; the formula refuses
        bad = ReducedParams(Family.RING_2D, 1.0, 1.0, xi=2.0, b=-1.0, xi0=1.0)
        with pytest.raises(ValueError):
            tan_delta_ring2d(0, bad)
        # in-domain evaluation works
        spec = PotentialSpec(Family.RING_2D, -1.0, 1.0, 0.5, beta=1.0, a0=1.0)
        tan_delta_ring2d(0, reduce(spec, Kinematics(1.0)))


class TestWell2D:
    def test_zero_strength(self):
        rp = _rp(Family.WELL_2D, -1e-300, 1.0, 0.3, beta=1.0, a0=1.0)
        for m in range(4):
            assert tan_delta_well2d(m, rp) == 0.0

    def test_resonant_s_wave_plateau(self):
        # alpha=beta=1, Omega=-1, xi0=1: the s-wave tangent settles on a
        # finite plateau; frozen extended-precision value at xi=1e-8, and
        # the analytic limit pi/(2*gamma - 2*ln2 - 1/2) it creeps toward
        rp = _rp(Family.WELL_2D, -1.0, 1.0, 1e-8, beta=1.0, a0=1.0)
        t = tan_delta_well2d(0, rp)
        assert t == pytest.approx(-4.2792801893110107725, rel=1e-9)
        assert t == pytest.approx(-4.2925964547453577, rel=5e-3)

    def test_m1_suppressed(self):
        rp = _rp(Family.WELL_2D, -1.0, 1.0, 1e-2, beta=1.0, a0=1.0)
        t = tan_delta_well2d(1, rp)
        assert abs(t) < 1e-3
        assert t == pytest.approx(4.5971894479901168677e-6, rel=1e-8)


class TestOneD:
    def test_double_delta_alpha0_dictionary(self):
        # alpha=0: tan d+ -> -b, tan d- -> 0
        b = 1.3
        rp = _rp(Family.DOUBLE_DELTA_1D, b, 0.0, 1e-6)
        tp, tm = tan_delta_1d(rp)
        # the finite-xi correction to tan d+ = -b is O(b^2 xi)
        assert tp == pytest.approx(-b, abs=10.0 * b * b * 1e-6)
        assert abs(tm) < 1e-5

    def test_double_delta_resonance_diverges(self):
        rp = _rp(Family.DOUBLE_DELTA_1D, -1.0, 1.0, 1e-7)
        tp, tm = tan_delta_1d(rp)
        assert abs(tp) > 1e6
        assert abs(tm) > 1e6

    def test_well1d_odd_resonance(self):
        rp = _rp(Family.WELL_1D, -math.pi**2 / 4.0, 1.0, 1e-3)
        tp, tm = tan_delta_1d(rp)
        assert abs(tm) > 1e2

    def test_well1d_at_tan_pole(self):
        # xi = pi/2 puts tan(xi) at a pole; the sin/cos ratio form must
        # return finite values
        rp = _rp(Family.WELL_1D, -1.0, 1.0, math.pi / 2.0)
        tp, tm = tan_delta_1d(rp)
        assert math.isfinite(tp) and math.isfinite(tm)

    def test_rejects_non_1d_family(self):
        rp = _rp(Family.SHELL_3D, -1.0, 1.0, 0.3)
        with pytest.raises(ValueError):
            tan_delta_1d(rp)


class TestDeltaModPi:
    def test_pole_convention(self):
        assert delta_mod_pi(math.inf) == pytest.approx(math.pi / 2)
        assert delta_mod_pi(-math.inf) == pytest.approx(math.pi / 2)
        assert delta_mod_pi(1.0) == pytest.approx(math.atan(1.0))


class TestBuildTable:
    def test_zero_strength_truncates_fast(self):
        table = build_table(PotentialSpec(Family.SHELL_3D, 0.0, 1.0, 0.3), K1)
        assert table.truncation_reason == "below-threshold"
        assert table.truncation_index == 1
        assert all(e.tan_delta == 0.0 for e in table.entries)

    def test_resonant_shell_table(self):
        table = build_table(PotentialSpec(Family.SHELL_3D, -1.0, 1.0, 1e-3), K1)
        assert table.tan(0) == pytest.approx(1500.0, rel=1e-3)
        assert all(abs(e.tan_delta) < 1e-5 for e in table.entries[1:])

    def test_1d_tables_have_two_labeled_entries(self):
        for fam, om in ((Family.DOUBLE_DELTA_1D, 0.5), (Family.WELL_1D, -0.5)):
            table = build_table(PotentialSpec(fam, om, 1.0, 0.3), K1)
            assert [e.label for e in table.entries] == ["+", "-"]
            assert table.truncation_reason == "parity-pair"

    def test_entries_consecutive_from_zero(self):
        table = build_table(
            PotentialSpec(Family.RING_2D, -1.0, 1.0, 0.2, beta=1.0, a0=1.0), K1
        )
        assert [e.index for e in table.entries] == list(range(len(table.entries)))
        assert table.truncation_index == table.entries[-1].index


class TestOracleAgreement:
    # 20 random attractive draws per well family: formula vs integration
    @pytest.mark.parametrize(
        "family,kwargs",
        [
            (Family.WELL_3D, {}),
            (Family.WELL_2D, {"beta": 1.0, "a0": 5.0}),
            (Family.WELL_1D, {}),
        ],
    )
    def test_wells_match_integration(self, family, kwargs):
        rng = random.Random(41)
        for _ in range(20):
            omega = -rng.uniform(0.05, 3.0)
            alpha = rng.uniform(0.0, 2.0)
            xi = 10.0 ** rng.uniform(-2.0, 0.0)
            spec = PotentialSpec(family, omega, alpha, xi, **kwargs)  # k=1 so a=xi
            rp = reduce(spec, K1)
            if family is Family.WELL_1D:
                channel = rng.choice(["+", "-"])
                index = 0 if channel == "+" else 1
            else:
                channel = index = rng.choice([0, 1])
            t = tan_delta(index, rp)
            exact = math.atan(t) if math.isfinite(t) else math.pi / 2.0
            got = oracle_phase_shift(spec, K1, channel)
            assert abs(math.remainder(got - exact, math.pi)) <= 1e-6
