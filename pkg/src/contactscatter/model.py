"""Potential families, kinematics and the reduced dimensionless parameters.

Natural units hbar = mu = 1 are used throughout, so E = k^2/2 and the
classical velocity equals k.  Everything downstream is a pure function of
these records.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum


class Family(str, Enum):
    SHELL_3D = "shell3d"
    WELL_3D = "well3d"
    RING_2D = "ring2d"
    WELL_2D = "well2d"
    DOUBLE_DELTA_1D = "double_delta1d"
    WELL_1D = "well1d"


#: families where the potential is a finite square well rather than a shell
WELL_FAMILIES = frozenset({Family.WELL_3D, Family.WELL_2D, Family.WELL_1D})

#: families that carry the logarithmic scale a0 and the exponent beta
TWO_D_FAMILIES = frozenset({Family.RING_2D, Family.WELL_2D})


@dataclass(frozen=True)
class Kinematics:
    """Scattering-state kinematics: wavenumber k > 0 (E = k^2/2)."""

    k: float

    def __post_init__(self):
        if not self.k > 0.0:
            raise ValueError(f"wavenumber must be positive, got {self.k}")


@dataclass(frozen=True)
class PotentialSpec:
    """One of the six potential families with its parameters.

    omega is the dimensionless strength, alpha the singularity exponent,
    beta the logarithmic exponent (2D families only), a the range and a0
    the logarithmic length scale (2D families only, a0 > a).
    """

    family: Family
    omega: float
    alpha: float
    a: float
    beta: float = 0.0
    a0: float | None = None

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValueError(f"range a must be positive, got {self.a}")
        if self.family in TWO_D_FAMILIES:
            if self.a0 is None:
                raise ValueError(f"{self.family.value} requires the log scale a0")
            if not self.a0 > self.a:
                raise ValueError(
                    f"a0 must exceed a so that -ln(a/a0) > 0, got a0={self.a0} a={self.a}"
                )
        if self.family in WELL_FAMILIES and not self.omega < 0.0:
            raise ValueError(
                f"{self.family.value} is only defined for attractive strengths (omega < 0), "
                f"got omega={self.omega}"
            )

    def to_json_dict(self) -> dict:
        return {
            "family": self.family.value,
            "omega": self.omega,
            "alpha": self.alpha,
            "beta": self.beta,
            "a": self.a,
            "a0": self.a0,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "PotentialSpec":
        return cls(
            family=Family(d["family"]),
            omega=float(d["omega"]),
            alpha=float(d["alpha"]),
            beta=float(d.get("beta", 0.0) or 0.0),
            a=float(d["a"]),
            a0=None if d.get("a0") is None else float(d["a0"]),
        )

    @classmethod
    def from_json(cls, s: str) -> "PotentialSpec":
        return cls.from_json_dict(json.loads(s))


@dataclass(frozen=True)
class ReducedParams:
    """Dimensionless combinations xi = k a, b = Omega k^(alpha-1), and for
    the well families the interior parameter eta.

    eta is stored as a magnitude plus a reality flag; for attractive wells
    the radicand xi^2 + (positive) is always positive, so eta_imaginary can
    only trip on out-of-contract inputs.
    """

    family: Family
    alpha: float
    beta: float
    xi: float
    b: float
    xi0: float | None = None
    eta: float | None = None
    eta_imaginary: bool = False

    @property
    def log_factor(self) -> float:
        """-ln(xi/xi0) = ln(xi0/xi), positive on the supported domain."""
        if self.xi0 is None:
            raise ValueError("log factor only defined for 2D families")
        return math.log(self.xi0 / self.xi)


def _eta_from_radicand(radicand: float) -> tuple[float, bool]:
    if radicand >= 0.0:
        return math.sqrt(radicand), False
    return math.sqrt(-radicand), True


def reduce(spec: PotentialSpec, kin: Kinematics) -> ReducedParams:
    """Map a potential plus kinematics to the dimensionless parameters that
    every phase-shift formula consumes."""
    k = kin.k
    xi = k * spec.a
    b = spec.omega * k ** (spec.alpha - 1.0)
    xi0 = k * spec.a0 if spec.family in TWO_D_FAMILIES else None
    eta = None
    eta_imag = False
    if spec.family is Family.WELL_3D:
        eta, eta_imag = _eta_from_radicand(xi * xi - 3.0 * b * xi ** (1.0 - spec.alpha))
    elif spec.family is Family.WELL_2D:
        lf = math.log(xi0 / xi)
        eta, eta_imag = _eta_from_radicand(
            xi * xi - 2.0 * b * xi ** (1.0 - spec.alpha) * lf ** (-spec.beta)
        )
    elif spec.family is Family.WELL_1D:
        eta, eta_imag = _eta_from_radicand(xi * xi - b * xi ** (1.0 - spec.alpha))
    return ReducedParams(
        family=spec.family,
        alpha=spec.alpha,
        beta=spec.beta,
        xi=xi,
        b=b,
        xi0=xi0,
        eta=eta,
        eta_imaginary=eta_imag,
    )


def reduced_at_xi(spec: PotentialSpec, k: float, xi: float) -> ReducedParams:
    """Reduced parameters at a prescribed xi (i.e. range a = xi/k), keeping
    the logarithmic scale a0 fixed.  This is the knob the contact-limit
    analysis turns: a -> 0 with everything else held."""
    scaled = PotentialSpec(
        family=spec.family,
        omega=spec.omega,
        alpha=spec.alpha,
        beta=spec.beta,
        a=xi / k,
        a0=spec.a0,
    )
    return reduce(scaled, Kinematics(k))


@dataclass(frozen=True)
class WavefunctionPieces:
    """Amplitudes of a matched zero-energy solution; interior amplitude is
    normalized to 1 at the matching point."""

    interior_amplitude: float
    exterior_amplitude: float
    parity: int | None = None
