"""Capacity calculator for the discrete quadrature (DQ) model of bosonic
gaussian channels."""
from .dq_engine import (
    ThermalDecomposition,
    classical_capacity,
    cq_tradeoff_region,
    environment_leakage,
    private_capacity,
    quantum_capacity,
    thermal_decomposition,
)
from .exceptions import (
    DQError,
    InvalidPowerError,
    MalformedInputError,
    NoReferenceError,
    UnsupportedRegimeError,
)
from .kernels import BACKEND
from .multiuser import (
    RateRegion,
    broadcast_region,
    mac_region,
    region_boundary,
    region_contains,
)
from .optimizer import GridSpec, maximize_classical, refine, search
from .phase_model import (
    AdditiveGaussian,
    Attenuation,
    ClassicalNoise,
    Dephasing,
    ModulationScheme,
    PowerBudget,
    ThermalNoise,
    TileDims,
    effective_tile,
    state_count,
    validate_scheme,
)
from .reference import (
    GapReport,
    attenuation_capacity_exact,
    attenuation_quantum_exact,
    classical_noise_lower_bound,
    dephasing_holevo,
    g,
    gap_report,
)
from .result import CapacityResult

__version__ = "0.1.0"
