import math

import pytest

from contactscatter.model import (
    Family,
    Kinematics,
    PotentialSpec,
    reduce,
    reduced_at_xi,
)


def test_kinematics_requires_positive_k():
    Kinematics(0.5)
    with pytest.raises(ValueError):
        Kinematics(0.0)
    with pytest.raises(ValueError):
        Kinematics(-1.0)


def test_shell3d_reduce_direct_substitution():
    spec = PotentialSpec(Family.SHELL_3D, -1.0, 1.0, 0.01)
    rp = reduce(spec, Kinematics(1.0))
    assert rp.xi == pytest.approx(0.01)
    assert rp.b == pytest.approx(-1.0)
    assert rp.eta is None
    assert rp.xi0 is None


def test_well3d_reduce_eta():
    # xi = 0.2, b = -pi^2/12, eta = sqrt(0.04 + pi^2/4)
    spec = PotentialSpec(Family.WELL_3D, -math.pi**2 / 12.0, 1.0, 0.1)
    rp = reduce(spec, Kinematics(2.0))
    assert rp.xi == pytest.approx(0.2)
    assert rp.b == pytest.approx(-math.pi**2 / 12.0)
    assert rp.eta == pytest.approx(math.sqrt(0.04 + math.pi**2 / 4.0), rel=1e-14)
    assert not rp.eta_imaginary


def test_well1d_zero_strength_collapses_eta():
    spec = PotentialSpec(Family.WELL_1D, -1e-300, 2.0, 0.5)
    rp = reduce(spec, Kinematics(1.0))
    assert rp.eta == pytest.approx(rp.xi, rel=1e-12)


def test_2d_families_carry_xi0_and_log_factor():
    spec = PotentialSpec(Family.RING_2D, -1.0, 1.0, 0.01, beta=1.0, a0=1.0)
    rp = reduce(spec, Kinematics(2.0))
    assert rp.xi0 == pytest.approx(2.0)
    assert rp.log_factor == pytest.approx(math.log(2.0 / 0.02), rel=1e-14)


def test_spec_invariants():
    with pytest.raises(ValueError):
        PotentialSpec(Family.SHELL_3D, -1.0, 1.0, 0.0)  # a > 0
    with pytest.raises(ValueError):
        PotentialSpec(Family.RING_2D, -1.0, 1.0, 0.5)  # missing a0
    with pytest.raises(ValueError):
        PotentialSpec(Family.WELL_2D, -1.0, 1.0, 0.5, beta=1.0, a0=0.4)  # a0 <= a
    for fam in (Family.WELL_3D, Family.WELL_2D, Family.WELL_1D):
        with pytest.raises(ValueError):
            PotentialSpec(fam, 1.0, 1.0, 0.5, beta=1.0, a0=2.0)  # repulsive well
    # shells may be repulsive
    PotentialSpec(Family.SHELL_3D, 0.7, 1.0, 0.5)
    PotentialSpec(Family.DOUBLE_DELTA_1D, 2.0, 0.0, 0.3)


def test_scale_consistency():
    # a -> lambda a together with k -> k/lambda leaves xi unchanged; at
    # alpha = 1 the strength b is untouched as well
    lam = 3.7
    spec = PotentialSpec(Family.SHELL_3D, -0.8, 1.0, 0.2)
    scaled = PotentialSpec(Family.SHELL_3D, -0.8, 1.0, 0.2 * lam)
    rp = reduce(spec, Kinematics(1.5))
    rp2 = reduce(scaled, Kinematics(1.5 / lam))
    assert rp2.xi == pytest.approx(rp.xi, rel=1e-14)
    assert rp2.b == pytest.approx(rp.b, rel=1e-14)

    # for alpha != 1 only xi is preserved
    spec = PotentialSpec(Family.SHELL_3D, -0.8, 1.7, 0.2)
    scaled = PotentialSpec(Family.SHELL_3D, -0.8, 1.7, 0.2 * lam)
    rp = reduce(spec, Kinematics(1.5))
    rp2 = reduce(scaled, Kinematics(1.5 / lam))
    assert rp2.xi == pytest.approx(rp.xi, rel=1e-14)
    assert rp2.b != pytest.approx(rp.b)


def test_reduced_at_xi_prescribes_xi():
    spec = PotentialSpec(Family.WELL_2D, -1.0, 1.0, 0.3, beta=1.0, a0=2.0)
    rp = reduced_at_xi(spec, 2.0, 1e-5)
    assert rp.xi == pytest.approx(1e-5, rel=1e-14)
    assert rp.xi0 == pytest.approx(4.0)  # a0 kept fixed


def test_json_round_trip():
    specs = [
        PotentialSpec(Family.SHELL_3D, -1.0, 1.5, 0.01),
        PotentialSpec(Family.WELL_2D, -0.5, 1.0, 0.3, beta=2.0, a0=4.0),
        PotentialSpec(Family.DOUBLE_DELTA_1D, 0.7, -0.5, 0.2),
    ]
    for spec in specs:
        back = PotentialSpec.from_json(spec.to_json())
        assert back == spec
