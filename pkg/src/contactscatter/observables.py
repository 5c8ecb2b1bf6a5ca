"""Scattering observables from phase-shift tables: amplitudes and cross
sections in 2D/3D, reflection/transmission amplitudes in 1D."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .model import Family
from .phase_shifts import PhaseShiftTable, delta_mod_pi
from .special_fn import legendre_P

_3D_FAMILIES = (Family.SHELL_3D, Family.WELL_3D)
_2D_FAMILIES = (Family.RING_2D, Family.WELL_2D)


def _require_family(table: PhaseShiftTable, families, what: str) -> None:
    if table.family not in families:
        raise ValueError(f"{what} requires a {families} table, got {table.family.value}")


def _s_matrix_terms(table: PhaseShiftTable) -> list[complex]:
    # exp(2 i delta) - 1 per entry
    return [cmath.exp(2j * e.delta) - 1.0 for e in table.entries]


@dataclass(frozen=True)
class Amplitude3D:
    """Partial-wave scattering amplitude f(theta) in 3D:
    f = (1/2ik) sum_l (2l+1)[exp(2 i delta_l) - 1] P_l(cos theta)."""

    k: float
    partial_terms: tuple[complex, ...]  # (2l+1)(exp(2 i delta_l) - 1)

    def __call__(self, theta: float) -> complex:
        u = math.cos(theta)
        s = sum(
            term * legendre_P(l, u) for l, term in enumerate(self.partial_terms)
        )
        return s / (2j * self.k)


@dataclass(frozen=True)
class Amplitude2D:
    """Partial-wave scattering amplitude f(theta) in 2D:
    f = -i/sqrt(2 pi k) sum_m [exp(2 i delta_|m|) - 1] e^(i m theta),
    the sum running over all integers m with delta reused for -m."""

    k: float
    terms: tuple[complex, ...]  # exp(2 i delta_m) - 1, m = 0, 1, ...

    def __call__(self, theta: float) -> complex:
        s = self.terms[0] if self.terms else 0.0
        for m in range(1, len(self.terms)):
            s += self.terms[m] * 2.0 * math.cos(m * theta)
        return -1j / math.sqrt(2.0 * math.pi * self.k) * s


def amplitude_3d(table: PhaseShiftTable) -> Amplitude3D:
    _require_family(table, _3D_FAMILIES, "amplitude_3d")
    terms = tuple(
        (2 * l + 1) * t for l, t in enumerate(_s_matrix_terms(table))
    )
    return Amplitude3D(k=table.k, partial_terms=terms)


def amplitude_2d(table: PhaseShiftTable) -> Amplitude2D:
    _require_family(table, _2D_FAMILIES, "amplitude_2d")
    return Amplitude2D(k=table.k, terms=tuple(_s_matrix_terms(table)))


def sigma_theta_3d(table: PhaseShiftTable, theta: float) -> float:
    """Differential cross section |f(theta)|^2 in 3D."""
    return abs(amplitude_3d(table)(theta)) ** 2


def sigma_theta_2d(table: PhaseShiftTable, theta: float) -> float:
    """Differential cross section |f(theta)|^2 in 2D."""
    return abs(amplitude_2d(table)(theta)) ** 2


def sigma_total_3d(table: PhaseShiftTable) -> float:
    """sigma_t = (4 pi / k^2) sum_l (2l+1) sin^2(delta_l)."""
    _require_family(table, _3D_FAMILIES, "sigma_total_3d")
    k = table.k
    return (
        4.0
        * math.pi
        / (k * k)
        * sum((2 * e.index + 1) * math.sin(e.delta) ** 2 for e in table.entries)
    )


def sigma_total_2d(table: PhaseShiftTable) -> float:
    """sigma_t = (4/k)(sin^2 delta_0 + 2 sum_{m>=1} sin^2 delta_m)."""
    _require_family(table, _2D_FAMILIES, "sigma_total_2d")
    s = 0.0
    for e in table.entries:
        w = 1.0 if e.index == 0 else 2.0
        s += w * math.sin(e.delta) ** 2
    return 4.0 / table.k * s


@dataclass(frozen=True)
class OneDScattering:
    """Reflection and transmission amplitudes for the 1D families."""

    R: complex
    T: complex

    @property
    def unitarity_defect(self) -> float:
        return abs(abs(self.R) ** 2 + abs(self.T) ** 2 - 1.0)


def one_d_scattering(tan_plus: float, tan_minus: float) -> OneDScattering:
    """R = (e^(2i d+) - e^(2i d-))/2, T = (e^(2i d+) + e^(2i d-))/2,
    with +/-inf tangents meaning delta = pi/2."""
    ep = cmath.exp(2j * delta_mod_pi(tan_plus))
    em = cmath.exp(2j * delta_mod_pi(tan_minus))
    return OneDScattering(R=0.5 * (ep - em), T=0.5 * (ep + em))


def one_d_from_table(table: PhaseShiftTable) -> OneDScattering:
    if table.family not in (Family.DOUBLE_DELTA_1D, Family.WELL_1D):
        raise ValueError(f"one_d_from_table requires a 1D table, got {table.family.value}")
    return one_d_scattering(table.entries[0].tan_delta, table.entries[1].tan_delta)
