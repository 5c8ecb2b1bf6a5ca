"""Scattering from contact-limit potentials in one, two and three
dimensions: closed-form partial-wave phase shifts for delta-shell and
square-well families, cross sections, the a -> 0 contact-limit
classification, resonant strength sets, half-bound states, and an
independent ODE-integration oracle.
"""

from .limits import (
    HalfBoundReport,
    InconclusiveLimitError,
    LimitClassification,
    ResonanceSet,
    Verdict,
    audit,
    classify_limit,
    enumerate_resonances,
    half_bound_check,
    symbolic_classify,
)
from .model import Family, Kinematics, PotentialSpec, ReducedParams, reduce
from .observables import (
    Amplitude2D,
    Amplitude3D,
    OneDScattering,
    amplitude_2d,
    amplitude_3d,
    one_d_from_table,
    sigma_theta_2d,
    sigma_theta_3d,
    sigma_total_2d,
    sigma_total_3d,
)
from .oracle import IntegrationConfig, OracleError, oracle_phase_shift, oracle_shell_regularized
from .phase_shifts import (
    PhaseShiftTable,
    UnsupportedRegimeError,
    build_table,
    delta_mod_pi,
    tan_delta,
)

__all__ = [
    "Amplitude2D",
    "Amplitude3D",
    "Family",
    "HalfBoundReport",
    "InconclusiveLimitError",
    "IntegrationConfig",
    "Kinematics",
    "LimitClassification",
    "OneDScattering",
    "OracleError",
    "PhaseShiftTable",
    "PotentialSpec",
    "ReducedParams",
    "ResonanceSet",
    "UnsupportedRegimeError",
    "Verdict",
    "amplitude_2d",
    "amplitude_3d",
    "audit",
    "build_table",
    "classify_limit",
    "delta_mod_pi",
    "enumerate_resonances",
    "half_bound_check",
    "one_d_from_table",
    "oracle_phase_shift",
    "oracle_shell_regularized",
    "reduce",
    "sigma_theta_2d",
    "sigma_theta_3d",
    "sigma_total_2d",
    "sigma_total_3d",
    "symbolic_classify",
    "tan_delta",
]

__version__ = "0.1.0"
