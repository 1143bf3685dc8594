"""Quench dynamics, return rates, and transition-event analysis for spin-S
U(1) link models on a periodic chain."""

from .analysis import (
    COINCIDES_WITH_DQPT,
    DQPT_CROSSING,
    MIDPOINT_BETWEEN,
    OP_ZERO,
    RR_LOCAL_MIN,
    UNMATCHED,
    CoincidenceReport,
    Event,
    Pairing,
    classify,
    detect_events,
    find_dqpts,
    find_op_zeros,
    find_rr_minima,
)
from .basis import (
    BasisState,
    PhysicalBasis,
    enumerate_basis,
    gauss_charge,
    vacuum_config,
    vacuum_state,
)
from .hamiltonian import SparseHamiltonian, apply, build_hamiltonian, build_qlm, build_tsm
from .model import ModelSpec, SpinValue
from .observables import (
    ObservableSample,
    QuenchSampler,
    RateComponents,
    chiral_condensate,
    electric_flux,
    rate_components,
)
from .propagator import PropagatorConfig, PropagatorError, evolve, step
from .series import QuenchTimeSeries

__version__ = "0.1.0"

__all__ = [
    "BasisState",
    "CoincidenceReport",
    "Event",
    "ModelSpec",
    "ObservableSample",
    "Pairing",
    "PhysicalBasis",
    "PropagatorConfig",
    "PropagatorError",
    "QuenchSampler",
    "QuenchTimeSeries",
    "RateComponents",
    "SparseHamiltonian",
    "SpinValue",
    "apply",
    "build_hamiltonian",
    "build_qlm",
    "build_tsm",
    "chiral_condensate",
    "classify",
    "detect_events",
    "electric_flux",
    "enumerate_basis",
    "evolve",
    "find_dqpts",
    "find_op_zeros",
    "find_rr_minima",
    "gauss_charge",
    "rate_components",
    "step",
    "vacuum_config",
    "vacuum_state",
    "DQPT_CROSSING",
    "OP_ZERO",
    "RR_LOCAL_MIN",
    "COINCIDES_WITH_DQPT",
    "MIDPOINT_BETWEEN",
    "UNMATCHED",
]
