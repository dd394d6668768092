"""Simulation and first-order analysis of entanglement purification circuits."""

from purecliff.circuit import (
    Circuit,
    Gate,
    Measure,
    NetworkTransmit,
    NoisySite,
    ParityCheck,
    Register,
    TrajectoryResult,
    execute,
    probe_runs,
    validate,
)
from purecliff.circuit_io import CircuitParseError, deserialize, serialize
from purecliff.exact import (
    exact_success_and_fidelity,
    invert_input_fidelity,
    raw_state_fidelity,
)
from purecliff.montecarlo import MonteCarloReport, mc_csv, run_mc
from purecliff.noise import (
    FaultAlternative,
    FaultSite,
    NoiseModel,
    enumerate_fault_sites,
    sample_faults,
)
from purecliff.pauli import PauliOperator, commutes, multiply
from purecliff.perturbative import (
    AmbiguityError,
    ExpansionReport,
    LinearPolynomial,
    cross_validate,
    expand,
    expansion_csv,
)
from purecliff.protocols import (
    PROTOCOL_NAMES,
    STATE_NAMES,
    CatalogError,
    ConstructionError,
    ProtocolSpec,
    StateSpec,
    build_stabilizer_check,
    builtin,
    rank_stabilizers,
    state_spec,
)
from purecliff.sweep import SweepSpec, run_sweep
from purecliff.tableau import CliffordGate, StabilizerTableau

__all__ = [
    "AmbiguityError",
    "CatalogError",
    "Circuit",
    "CircuitParseError",
    "CliffordGate",
    "ConstructionError",
    "ExpansionReport",
    "FaultAlternative",
    "FaultSite",
    "Gate",
    "LinearPolynomial",
    "Measure",
    "MonteCarloReport",
    "NetworkTransmit",
    "NoiseModel",
    "NoisySite",
    "PROTOCOL_NAMES",
    "ParityCheck",
    "PauliOperator",
    "ProtocolSpec",
    "Register",
    "STATE_NAMES",
    "StabilizerTableau",
    "StateSpec",
    "SweepSpec",
    "TrajectoryResult",
    "build_stabilizer_check",
    "builtin",
    "commutes",
    "cross_validate",
    "deserialize",
    "enumerate_fault_sites",
    "exact_success_and_fidelity",
    "execute",
    "expand",
    "expansion_csv",
    "invert_input_fidelity",
    "mc_csv",
    "multiply",
    "probe_runs",
    "rank_stabilizers",
    "raw_state_fidelity",
    "run_mc",
    "run_sweep",
    "sample_faults",
    "serialize",
    "state_spec",
    "validate",
]

__version__ = "0.1.0"
