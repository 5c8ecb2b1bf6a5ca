"""Closed-form phase shifts for the six potential families at finite range.

Each family has an exact tangent formula; the delicate part is numerical,
not algebraic: near the contact resonances the denominators suffer
catastrophic cancellation, so those paths are rewritten (series for the
shell/double-delta denominators, a trigonometric identity for the 3D well
s-wave) before evaluation.  tan(delta) = +/-inf is a legitimate value and
marks an exact resonance; delta is reported mod pi in (-pi/2, pi/2] with
the convention delta = pi/2 at a pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Family, Kinematics, PotentialSpec, ReducedParams, reduce
from .special_fn import (
    ORDER_CAP,
    bessel_J,
    bessel_N,
    spherical_j,
    spherical_n,
)

#: tan(delta) is declared infinite when |denominator| < DIVERGENCE_EPS * |numerator|
DIVERGENCE_EPS = 1e-13

#: |tan delta| below this for two consecutive indices terminates a table
TRUNCATION_THRESHOLD = 1e-14


class UnsupportedRegimeError(ValueError):
    """Raised for repulsive square wells (imaginary interior wavenumber),
    which the closed forms do not cover."""


def _ratio(num: float, den: float) -> float:
    if num == 0.0:
        return 0.0
    if abs(den) <= DIVERGENCE_EPS * abs(num):
        return math.copysign(math.inf, num * den) if den != 0.0 else math.inf
    return num / den


def _one_minus_sinc2(xi: float) -> float:
    """1 - sin(2 xi)/(2 xi), evaluated without cancellation.

    This is the O(xi^2) piece of the resonant shell denominator; the naive
    form loses every significant digit below xi ~ 1e-7.
    """
    if xi >= 0.1:
        return 1.0 - math.sin(2.0 * xi) / (2.0 * xi)
    # 1 - sin(y)/y = y^2/6 - y^4/120 + ...  with y = 2 xi
    y2 = 4.0 * xi * xi
    term = y2 / 6.0
    total = term
    n = 2
    while True:
        term *= -y2 / ((2 * n) * (2 * n + 1))
        total += term
        if abs(term) < 1e-18 * total:
            return total
        n += 1


def _require_real_eta(rp: ReducedParams) -> float:
    if rp.eta is None:
        raise ValueError(f"{rp.family.value} carries no interior parameter eta")
    if rp.eta_imaginary:
        raise UnsupportedRegimeError(
            "imaginary interior wavenumber (repulsive square well) is outside "
            "the supported regime"
        )
    return rp.eta


def tan_delta_shell3d(l: int, rp: ReducedParams) -> float:
    """tan(delta_l) for the 3D spherical shell:
    b xi j_l(xi)^2 / (-xi^(alpha-1) + b xi j_l(xi) n_l(xi))."""
    xi, b, alpha = rp.xi, rp.b, rp.alpha
    jl = spherical_j(l, xi)
    num = b * xi * jl * jl
    if l == 0 and alpha == 1.0 and xi < 0.1:
        # xi j0 n0 = -(1 - c) with c = 1 - sin(2 xi)/(2 xi); grouping the
        # constant parts keeps the O(xi^2) resonant denominator exact
        c = _one_minus_sinc2(xi)
        den = -(1.0 + b) + b * c
    else:
        den = -(xi ** (alpha - 1.0)) + b * xi * jl * spherical_n(l, xi)
    return _ratio(num, den)


def tan_delta_well3d(l: int, rp: ReducedParams) -> float:
    """tan(delta_l) for the 3D spherical square well (attractive only)."""
    eta = _require_real_eta(rp)
    xi = rp.xi
    if eta == xi:
        return 0.0
    num = eta * spherical_j(l, xi) * spherical_j(l + 1, eta) - xi * spherical_j(
        l + 1, xi
    ) * spherical_j(l, eta)
    if l == 0:
        # identity: eta n0(xi) j1(eta) - xi n1(xi) j0(eta)
        #         = cos(xi) cos(eta)/xi + sin(xi) sin(eta)/eta,
        # which avoids the 1/xi^2-scale cancellation at the resonances
        den = math.cos(xi) * math.cos(eta) / xi + math.sin(xi) * math.sin(eta) / eta
    else:
        den = eta * spherical_n(l, xi) * spherical_j(l + 1, eta) - xi * spherical_n(
            l + 1, xi
        ) * spherical_j(l, eta)
    return _ratio(num, den)


def tan_delta_ring2d(m: int, rp: ReducedParams) -> float:
    """tan(delta_m) for the 2D circular ring:
    b pi J_m(xi)^2 / (-2 xi^(alpha-1) L^beta + b pi J_m(xi) N_m(xi)),
    with L = -ln(xi/xi0) > 0."""
    xi, b, alpha, beta = rp.xi, rp.b, rp.alpha, rp.beta
    if rp.xi0 is None or xi >= rp.xi0:
        raise ValueError(
            f"ring formula requires 0 < xi < xi0 (log factor positive), "
            f"got xi={xi} xi0={rp.xi0}"
        )
    lf = rp.log_factor
    jm = bessel_J(m, xi)
    num = b * math.pi * jm * jm
    den = -2.0 * xi ** (alpha - 1.0) * lf**beta + b * math.pi * jm * bessel_N(m, xi)
    return _ratio(num, den)


def tan_delta_well2d(m: int, rp: ReducedParams) -> float:
    """tan(delta_m) for the 2D square well (attractive only)."""
    eta = _require_real_eta(rp)
    xi = rp.xi
    if eta == xi:
        return 0.0
    num = eta * bessel_J(m, xi) * bessel_J(m + 1, eta) - xi * bessel_J(
        m + 1, xi
    ) * bessel_J(m, eta)
    den = eta * bessel_N(m, xi) * bessel_J(m + 1, eta) - xi * bessel_N(
        m + 1, xi
    ) * bessel_J(m, eta)
    return _ratio(num, den)


def tan_delta_1d(rp: ReducedParams, family: Family | None = None) -> tuple[float, float]:
    """(tan delta_plus, tan delta_minus) for the 1D families."""
    family = family or rp.family
    xi, b = rp.xi, rp.b
    if family is Family.DOUBLE_DELTA_1D:
        alpha = rp.alpha
        cos2 = math.cos(xi) ** 2
        sin2 = math.sin(xi) ** 2
        if alpha == 1.0 and xi < 0.1:
            # sin(xi)cos(xi) = xi (1 - c); the grouped forms keep the
            # O(xi^3) resonant denominators exact
            c = _one_minus_sinc2(xi)
            den_p = (b - 1.0) * xi - b * xi * c
            den_m = (1.0 + b) * xi - b * xi * c
        else:
            sc = 0.5 * math.sin(2.0 * xi)
            den_p = -(xi**alpha) + b * sc
            den_m = xi**alpha + b * sc
        return _ratio(b * cos2, den_p), _ratio(-b * sin2, den_m)
    if family is Family.WELL_1D:
        eta = _require_real_eta(rp)
        if eta == xi:
            return 0.0, 0.0
        sx, cx = math.sin(xi), math.cos(xi)
        se, ce = math.sin(eta), math.cos(eta)
        # sin/cos ratio form of the tan-based expressions: well-defined at
        # the poles of tan and free of inf*0
        tp = _ratio(eta * se * cx - xi * sx * ce, xi * cx * ce + eta * sx * se)
        tm = _ratio(xi * se * cx - eta * sx * ce, eta * cx * ce + xi * sx * se)
        return tp, tm
    raise ValueError(f"{family.value} is not a 1D family")


def delta_mod_pi(tan_delta: float) -> float:
    """Phase shift mod pi in (-pi/2, pi/2], with delta = pi/2 at a pole."""
    if math.isinf(tan_delta):
        return 0.5 * math.pi
    return math.atan(tan_delta)


@dataclass(frozen=True)
class PhaseShiftEntry:
    index: int
    label: str
    tan_delta: float
    delta: float


@dataclass(frozen=True)
class PhaseShiftTable:
    """Per-partial-wave phase shifts at one wavenumber, with truncation
    metadata.  1D tables hold exactly the two parity entries '+' and '-'."""

    family: Family
    k: float
    entries: tuple[PhaseShiftEntry, ...]
    truncation_index: int
    truncation_reason: str  # "below-threshold" | "cap" | "parity-pair"

    def tan(self, index: int) -> float:
        return self.entries[index].tan_delta

    def delta(self, index: int) -> float:
        return self.entries[index].delta


def tan_delta(index: int, rp: ReducedParams) -> float:
    """Family dispatch for a single partial wave (2D/3D index, or 0/1 for
    the 1D even/odd channels)."""
    if rp.family is Family.SHELL_3D:
        return tan_delta_shell3d(index, rp)
    if rp.family is Family.WELL_3D:
        return tan_delta_well3d(index, rp)
    if rp.family is Family.RING_2D:
        return tan_delta_ring2d(index, rp)
    if rp.family is Family.WELL_2D:
        return tan_delta_well2d(index, rp)
    pair = tan_delta_1d(rp)
    return pair[index]


def build_table(
    spec: PotentialSpec,
    kin: Kinematics,
    l_max_hint: int | None = None,
) -> PhaseShiftTable:
    """Evaluate the family formula for indices 0, 1, 2, ... until two
    consecutive entries fall below the truncation threshold or the order
    cap is reached."""
    rp = reduce(spec, kin)
    if spec.family in (Family.DOUBLE_DELTA_1D, Family.WELL_1D):
        tp, tm = tan_delta_1d(rp)
        entries = (
            PhaseShiftEntry(0, "+", tp, delta_mod_pi(tp)),
            PhaseShiftEntry(1, "-", tm, delta_mod_pi(tm)),
        )
        return PhaseShiftTable(spec.family, kin.k, entries, 1, "parity-pair")

    min_index = l_max_hint if l_max_hint is not None else 1
    entries = []
    below_streak = 0
    index = 0
    reason = "cap"
    while index <= ORDER_CAP:
        t = tan_delta(index, rp)
        entries.append(PhaseShiftEntry(index, str(index), t, delta_mod_pi(t)))
        below_streak = below_streak + 1 if abs(t) < TRUNCATION_THRESHOLD else 0
        if below_streak >= 2 and index >= min_index:
            reason = "below-threshold"
            break
        index += 1
    return PhaseShiftTable(spec.family, kin.k, tuple(entries), entries[-1].index, reason)
