"""Fault sites and their probability weights.

Three channels: per-Pauli depolarization of each network-transmitted qubit
(probability eps for each of X, Y, Z), gate depolarization applied after the
ideal gate (total rate p_gate split uniformly over the 3 or 15 nontrivial
Paulis on the gate's qubits), and classical measurement bit flips (p_meas).
Conditional correction gates and, unless requested, state-preparation gates
carry no gate noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from purecliff.pauli import PauliOperator
from purecliff.circuit import Circuit, Gate, Measure, NetworkTransmit, NoisySite

__all__ = [
    "FaultAlternative",
    "FaultSite",
    "NoiseModel",
    "enumerate_fault_sites",
    "sample_faults",
    "total_first_order_weight",
]

PARAMS = ("eps", "p_gate", "p_meas")


@dataclass(frozen=True)
class NoiseModel:
    eps: float = 0.0
    p_gate: float = 0.0
    p_meas: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.eps <= 1.0 / 3.0 + 1e-15:
            raise ValueError(f"eps must lie in [0, 1/3], got {self.eps}")
        for name in ("p_gate", "p_meas"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    def value(self, param: str) -> float:
        if param not in PARAMS:
            raise KeyError(param)
        return getattr(self, param)


@dataclass(frozen=True)
class FaultAlternative:
    """One way a site can fail, with weight coeff * param."""

    param: str
    coeff: Fraction
    probability: float  # numeric weight under the enumerating model
    qubits: tuple = ()
    paulis: tuple = ()  # letters aligned with qubits; empty for a bit flip

    @property
    def is_flip(self) -> bool:
        return not self.qubits

    def error_operator(self, n_qubits: int) -> PauliOperator:
        op = PauliOperator.identity(n_qubits)
        for q, letter in zip(self.qubits, self.paulis):
            if letter != "I":
                op = op * PauliOperator.single(n_qubits, q, letter)
        return op

    def describe(self) -> str:
        if self.is_flip:
            return "flip"
        return ",".join(f"{letter}{q}" for q, letter in zip(self.qubits, self.paulis) if letter != "I")


@dataclass(frozen=True)
class FaultSite:
    op_index: int
    kind: str  # "network", "gate" or "measurement"
    qubits: tuple = ()
    label: str = None
    alternatives: tuple = field(default=(), compare=False)

    def describe(self) -> str:
        where = f"op{self.op_index}"
        if self.kind == "measurement":
            return f"{where}:meas[{self.label}]"
        return f"{where}:{self.kind}[{','.join(map(str, self.qubits))}]"


def _network_site(op_index: int, qubit: int, model: NoiseModel) -> FaultSite:
    alts = tuple(
        FaultAlternative("eps", Fraction(1), model.eps, (qubit,), (letter,))
        for letter in "XYZ"
    )
    return FaultSite(op_index, "network", (qubit,), alternatives=alts)


def _gate_site(op_index: int, targets: tuple, model: NoiseModel) -> FaultSite:
    if len(targets) == 1:
        coeff = Fraction(1, 3)
        letter_sets = [(letter,) for letter in "XYZ"]
    else:
        coeff = Fraction(1, 15)
        letter_sets = [p for p in product("IXYZ", repeat=2) if p != ("I", "I")]
    alts = tuple(
        FaultAlternative("p_gate", coeff, float(coeff) * model.p_gate, targets, letters)
        for letters in letter_sets
    )
    return FaultSite(op_index, "gate", targets, alternatives=alts)


def enumerate_fault_sites(circuit: Circuit, model: NoiseModel, noisy_prep: bool = False):
    """All fault sites of the circuit, ordered by op index then qubit.

    Channels with zero rate contribute no sites.  Gates flagged as state
    preparation are skipped unless noisy_prep is set; conditional gates are
    always noiseless.
    """
    sites = []
    for i, op in enumerate(circuit.ops):
        if isinstance(op, (NetworkTransmit, NoisySite)):
            if model.eps > 0:
                for q in sorted(op.qubits):
                    sites.append(_network_site(i, q, model))
        elif isinstance(op, Gate):
            if model.p_gate > 0 and op.condition is None and (noisy_prep or not op.is_prep):
                sites.append(_gate_site(i, op.gate.targets, model))
        elif isinstance(op, Measure):
            if model.p_meas > 0:
                alt = FaultAlternative("p_meas", Fraction(1), model.p_meas)
                sites.append(FaultSite(i, "measurement", (), op.label, (alt,)))
    return sites


def sample_faults(sites, rng: np.random.Generator) -> dict:
    """Independently draw at most one alternative per site.

    Exact probabilities, not first-order: a transmitted qubit suffers each
    of X, Y, Z with probability eps and nothing with 1 - 3*eps.  One uniform
    variate is consumed per site whatever the outcome, so the stream stays
    aligned across runs.
    """
    assignment = {}
    for site in sites:
        u = rng.random()
        acc = 0.0
        for alt in site.alternatives:
            acc += alt.probability
            if u < acc:
                assignment[site] = alt
                break
    return assignment


def total_first_order_weight(sites) -> dict:
    """Sum of alternative coefficients per parameter (symbolic weights)."""
    totals = {}
    for site in sites:
        for alt in site.alternatives:
            totals[alt.param] = totals.get(alt.param, Fraction(0)) + alt.coeff
    return totals
