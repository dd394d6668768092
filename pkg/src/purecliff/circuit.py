"""Circuit intermediate representation and its execution semantics.

A Circuit is an ordered op list over named registers: Clifford gates
(optionally classically conditioned on an earlier measurement bit, optionally
tagged as state preparation), network transmissions (the attachment points
for transmission noise), explicit extra noise sites, single-qubit
measurements with classical labels, and parity checks over those labels.

Execution applies an externally chosen fault assignment (see noise module)
and reports whether every parity check passed and whether the purified
register ended up in the target state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from purecliff.pauli import PauliOperator
from purecliff.tableau import (
    CliffordGate,
    StabilizerTableau,
    restrict,
    states_equal,
)

__all__ = [
    "Circuit",
    "FaultAssignmentError",
    "Gate",
    "Measure",
    "NetworkTransmit",
    "NoisySite",
    "ParityCheck",
    "PresetCoins",
    "Register",
    "TrajectoryResult",
    "execute",
    "probe_coin_vectors",
    "probe_runs",
    "validate",
]


class FaultAssignmentError(ValueError):
    """A fault key does not name a valid site of the circuit."""


@dataclass(frozen=True)
class Register:
    name: str
    role: str  # "purified" or "sacrificial"
    qubit_count: int
    home_qubit: int
    nodes: tuple = None  # physical node of each qubit, or None if unplaced

    def __post_init__(self):
        if self.nodes is not None:
            object.__setattr__(self, "nodes", tuple(int(v) for v in self.nodes))


@dataclass(frozen=True)
class Gate:
    gate: CliffordGate
    is_prep: bool = False
    condition: tuple = None  # (label, value) or None


@dataclass(frozen=True)
class NetworkTransmit:
    qubits: tuple

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))


@dataclass(frozen=True)
class NoisySite:
    channel_id: str
    qubits: tuple

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))


@dataclass(frozen=True)
class Measure:
    qubit: int
    basis: str  # X, Y or Z
    label: str


@dataclass(frozen=True)
class ParityCheck:
    labels: tuple
    expected_parity: str  # "even" or "odd"

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def expected_bit(self) -> int:
        return 0 if self.expected_parity == "even" else 1


@dataclass
class Circuit:
    registers: list
    initial_states: list  # one StabilizerTableau per register
    target_state: StabilizerTableau  # over the purified register
    ops: list

    # -- indexing ------------------------------------------------------

    @property
    def n_qubits(self) -> int:
        return sum(r.qubit_count for r in self.registers)

    def register_offset(self, name: str) -> int:
        off = 0
        for r in self.registers:
            if r.name == name:
                return off
            off += r.qubit_count
        raise KeyError(f"no register named {name!r}")

    def purified_register(self):
        for r in self.registers:
            if r.role == "purified":
                return r
        raise ValueError("circuit has no purified register")

    def purified_qubits(self) -> list:
        r = self.purified_register()
        off = self.register_offset(r.name)
        return list(range(off, off + r.qubit_count))

    def owner(self, qubit: int):
        off = 0
        for r in self.registers:
            if qubit < off + r.qubit_count:
                return r, qubit - off
            off += r.qubit_count
        raise IndexError(f"qubit {qubit} out of range")

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.registers == other.registers
            and self.ops == other.ops
            and len(self.initial_states) == len(other.initial_states)
            and all(
                a.render() == b.render()
                for a, b in zip(self.initial_states, other.initial_states)
            )
            and self.target_state.render() == other.target_state.render()
        )


@dataclass(frozen=True)
class TrajectoryResult:
    passed: bool
    purified_equals_target: bool
    bits: dict = field(compare=False)
    check_bits: tuple = ()
    coins_drawn: int = 0


class PresetCoins:
    """Coin source replaying a fixed bit vector, padding with zeros."""

    def __init__(self, bits=()):
        self.bits = list(bits)
        self.drawn = 0

    def __call__(self) -> int:
        b = self.bits[self.drawn] if self.drawn < len(self.bits) else 0
        self.drawn += 1
        return int(b) & 1


def _coin_callable(coins):
    if coins is None:
        return PresetCoins()
    if callable(coins):
        return coins
    if isinstance(coins, (int, np.integer)):
        rng = np.random.default_rng(int(coins))
        return lambda: int(rng.integers(2))
    if isinstance(coins, np.random.Generator):
        return lambda: int(coins.integers(2))
    raise TypeError(f"cannot use {coins!r} as a coin source")


def product_tableau(parts) -> StabilizerTableau:
    """Block-diagonal tensor product of independent register states."""
    total = sum(t.n for t in parts)
    x = np.zeros((2 * total, total), np.uint8)
    z = np.zeros((2 * total, total), np.uint8)
    r = np.zeros(2 * total, np.uint8)
    off = 0
    for t in parts:
        cols = slice(off, off + t.n)
        x[off : off + t.n, cols] = t.x[: t.n]
        z[off : off + t.n, cols] = t.z[: t.n]
        x[total + off : total + off + t.n, cols] = t.x[t.n :]
        z[total + off : total + off + t.n, cols] = t.z[t.n :]
        r[total + off : total + off + t.n] = t.r[t.n :]
        off += t.n
    return StabilizerTableau(total, x, z, r)


def _site_faults(fault_assignment, circuit):
    """Group a fault assignment by op index, validating each key."""
    by_op = {}
    for site, alternative in fault_assignment.items():
        if not (0 <= site.op_index < len(circuit.ops)):
            raise FaultAssignmentError(f"fault site op index {site.op_index} out of range")
        op = circuit.ops[site.op_index]
        ok = (
            (site.kind == "network" and isinstance(op, (NetworkTransmit, NoisySite)))
            or (site.kind == "gate" and isinstance(op, Gate))
            or (site.kind == "measurement" and isinstance(op, Measure))
        )
        if not ok:
            raise FaultAssignmentError(
                f"fault site kind {site.kind!r} does not match op {site.op_index}"
            )
        if site.kind == "network" and not set(site.qubits) <= set(op.qubits):
            raise FaultAssignmentError(f"fault qubits {site.qubits} not transmitted at op {site.op_index}")
        if site.kind == "gate" and site.qubits != op.gate.targets:
            raise FaultAssignmentError(f"fault qubits {site.qubits} do not match gate at op {site.op_index}")
        if site.kind == "measurement" and site.label != op.label:
            raise FaultAssignmentError(f"fault label {site.label!r} does not match op {site.op_index}")
        by_op.setdefault(site.op_index, []).append((site, alternative))
    return by_op


def execute(circuit: Circuit, fault_assignment=None, coins=None) -> TrajectoryResult:
    """One trajectory under a fixed fault assignment.

    `coins` supplies outcome bits for genuinely random measurements; it may
    be a callable, a seed, a numpy Generator, or None (all-zero coins).
    """
    coin = _coin_callable(coins)
    by_op = _site_faults(fault_assignment or {}, circuit)
    state = product_tableau(circuit.initial_states)
    n = state.n
    bits = {}
    check_bits = []
    passed = True
    drawn_before = getattr(coin, "drawn", None)

    for i, op in enumerate(circuit.ops):
        faults = by_op.get(i, ())
        if isinstance(op, Gate):
            if op.condition is not None:
                label, value = op.condition
                if bits[label] == value:
                    state.apply_gate(op.gate)
            else:
                state.apply_gate(op.gate)
            for site, alt in faults:
                state.apply_pauli(alt.error_operator(n))
        elif isinstance(op, (NetworkTransmit, NoisySite)):
            for site, alt in faults:
                state.apply_pauli(alt.error_operator(n))
        elif isinstance(op, Measure):
            obs = PauliOperator.single(n, op.qubit, op.basis)
            outcome = state.measure(obs, coin)
            bit = 0 if outcome == 1 else 1
            for site, alt in faults:
                bit ^= 1
            bits[op.label] = bit
        elif isinstance(op, ParityCheck):
            parity = 0
            for label in op.labels:
                parity ^= bits[label]
            check_bits.append(parity)
            if parity != op.expected_bit:
                passed = False
        else:
            raise TypeError(f"unknown op {op!r}")

    kept = [q for q in circuit.purified_qubits() if not _measured(circuit, q)]
    final = restrict(state, kept)
    offset = circuit.register_offset(circuit.purified_register().name)
    kept_local = [q - offset for q in kept]
    if len(kept_local) == circuit.target_state.n:
        target = circuit.target_state
    else:
        target = restrict(circuit.target_state, kept_local)
    match = states_equal(final, target)
    drawn = getattr(coin, "drawn", None)
    coins_drawn = (drawn - drawn_before) if (drawn is not None and drawn_before is not None) else drawn or 0
    return TrajectoryResult(
        passed=passed,
        purified_equals_target=match,
        bits=bits,
        check_bits=tuple(check_bits),
        coins_drawn=coins_drawn,
    )


def _measured(circuit: Circuit, qubit: int) -> bool:
    return any(isinstance(op, Measure) and op.qubit == qubit for op in circuit.ops)


def probe_coin_vectors(k: int):
    """The coin vectors that pin down any affine outcome law: all zeros,
    each unit vector, and all ones."""
    vectors = [[0] * k]
    for i in range(k):
        unit = [0] * k
        unit[i] = 1
        vectors.append(unit)
    if k:
        vectors.append([1] * k)
    return vectors


def probe_runs(circuit: Circuit, fault_assignment=None):
    """Execute once per probe coin vector; returns the TrajectoryResults.

    Measurement outcomes in a stabilizer circuit are affine GF(2) functions
    of the coin bits (coins only ever enter row signs, never bit content,
    and conditional gates are restricted to Paulis).  Agreement of the
    check bits and the match flag across these probes therefore proves the
    run's classification is coin-independent.
    """
    first = execute(circuit, fault_assignment, PresetCoins())
    runs = [first]
    for vec in probe_coin_vectors(first.coins_drawn)[1:]:
        runs.append(execute(circuit, fault_assignment, PresetCoins(vec)))
    return runs


def validate(circuit: Circuit) -> list:
    """Structural and behavioral diagnostics; empty list means valid."""
    out = []
    n = circuit.n_qubits

    purified = [r for r in circuit.registers if r.role == "purified"]
    if len(purified) != 1:
        out.append(f"expected exactly one purified register, found {len(purified)}")
    names = [r.name for r in circuit.registers]
    if len(set(names)) != len(names):
        out.append("register names are not unique")
    for r in circuit.registers:
        if r.role not in ("purified", "sacrificial"):
            out.append(f"register {r.name}: unknown role {r.role!r}")
        if r.qubit_count < 1:
            out.append(f"register {r.name}: empty register")
        elif not 0 <= r.home_qubit < r.qubit_count:
            out.append(f"register {r.name}: home qubit {r.home_qubit} out of range")
        if r.nodes is not None and len(r.nodes) != r.qubit_count:
            out.append(f"register {r.name}: node list length mismatch")
    if len(circuit.initial_states) != len(circuit.registers):
        out.append("need one initial state per register")
    else:
        for r, t in zip(circuit.registers, circuit.initial_states):
            if t.n != r.qubit_count:
                out.append(f"register {r.name}: initial state has {t.n} qubits")
    if purified and circuit.target_state.n != purified[0].qubit_count:
        out.append("target state size does not match the purified register")
    if out:
        return out

    measured_at = {}
    labels = {}
    placed = all(r.nodes is not None for r in circuit.registers)
    node_of = {}
    if placed:
        off = 0
        for r in circuit.registers:
            for k in range(r.qubit_count):
                node_of[off + k] = r.nodes[r.home_qubit]
            off += r.qubit_count

    def check_unmeasured(i, qubits):
        for q in qubits:
            if q in measured_at:
                out.append(f"op {i}: qubit {q} already measured at op {measured_at[q]}")

    for i, op in enumerate(circuit.ops):
        if isinstance(op, Gate):
            targets = op.gate.targets
            if any(not 0 <= q < n for q in targets):
                out.append(f"op {i}: gate target out of range")
                continue
            check_unmeasured(i, targets)
            if op.condition is not None:
                label = op.condition[0]
                if label not in labels:
                    out.append(f"op {i}: condition references unknown label {label!r}")
                if op.gate.kind not in ("X", "Y", "Z"):
                    out.append(f"op {i}: conditional gates must be Pauli, got {op.gate.kind}")
            if placed and len(targets) == 2 and node_of[targets[0]] != node_of[targets[1]]:
                out.append(
                    f"op {i}: two-qubit gate spans nodes "
                    f"{node_of[targets[0]]} and {node_of[targets[1]]}"
                )
        elif isinstance(op, (NetworkTransmit, NoisySite)):
            if any(not 0 <= q < n for q in op.qubits):
                out.append(f"op {i}: qubit out of range")
                continue
            check_unmeasured(i, op.qubits)
            if isinstance(op, NetworkTransmit) and placed:
                for q in op.qubits:
                    r, local = circuit.owner(q)
                    if local == r.home_qubit:
                        out.append(f"op {i}: home qubit of register {r.name} transmitted")
                    node_of[q] = r.nodes[local]
        elif isinstance(op, Measure):
            if not 0 <= op.qubit < n:
                out.append(f"op {i}: measured qubit out of range")
                continue
            if op.basis not in ("X", "Y", "Z"):
                out.append(f"op {i}: unknown basis {op.basis!r}")
            check_unmeasured(i, (op.qubit,))
            if op.label in labels:
                out.append(f"op {i}: duplicate measurement label {op.label!r}")
            labels[op.label] = i
            measured_at[op.qubit] = i
        elif isinstance(op, ParityCheck):
            if op.expected_parity not in ("even", "odd"):
                out.append(f"op {i}: unknown parity {op.expected_parity!r}")
            if not op.labels:
                out.append(f"op {i}: empty parity check")
            for label in op.labels:
                if label not in labels:
                    out.append(f"op {i}: parity check references unknown label {label!r}")
        else:
            out.append(f"op {i}: unknown op type {type(op).__name__}")

    off = 0
    for r in circuit.registers:
        if r.role == "sacrificial":
            loose = [q for q in range(off, off + r.qubit_count) if q not in measured_at]
            if loose:
                out.append(f"register {r.name}: sacrificial qubits {loose} never measured")
        off += r.qubit_count

    if out:
        return out

    # behavioral pass: noiseless runs must satisfy every check and hit the
    # target for every coin assignment (probed exactly, see probe_runs)
    try:
        runs = probe_runs(circuit, {})
    except ValueError as exc:
        return [f"noiseless execution failed: {exc}"]
    reference = runs[0]
    for probe_index, run in enumerate(runs):
        if run.check_bits != reference.check_bits:
            out.append("parity check outcomes depend on measurement randomness")
            break
    for run in runs:
        if not run.passed:
            failing = [
                j for j, (bit, op) in enumerate(
                    zip(run.check_bits, [o for o in circuit.ops if isinstance(o, ParityCheck)])
                )
                if bit != op.expected_bit
            ]
            out.append(f"noiseless run fails parity check(s) {failing}")
            break
    for run in runs:
        if not run.purified_equals_target:
            out.append("noiseless run does not reproduce the target state")
            break
    return out
