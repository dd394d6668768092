"""Catalog of entangled states and built-in purification protocols.

States are generated at their home node and all other qubits are shipped
over the network (one NetworkTransmit per state, the noise attachment
point).  Purification consumes sacrificial entangled resources to measure
stabilizers of the kept state without non-local gates: every two-qubit gate
in a built-in circuit acts within a single network node.

Protocol families per purified state (GHZ3, GHZ4, 4-qubit linear cluster):

* ``-p1`` / ``-p2``  the two complementary hashing stages, each sacrificing
  one full copy of the state: p1 fuses copy->copy with CNOTs and reads the
  Z-type stabilizers, p2 reads the X-type stabilizer (bases mixed per the
  two-coloring for the cluster state);
* ``-p1p2``  both stages chained, two sacrificial copies;
* ``-het``  heterogeneous circuits sacrificing smaller states (Bell pairs,
  plus one GHZ3 for the cluster) with guard ancillas that watch for errors
  leaking out of the checker ancillas themselves;
* ``raw-``  bare distribution with no purification, for baselines.

Checked stabilizers for the het circuits are the top of rank_stabilizers
restricted to stabilizers that avoid the home qubit (the home qubit never
travels, so stabilizers touching it fire less often).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from purecliff.pauli import PauliOperator
from purecliff.tableau import CliffordGate, StabilizerTableau
from purecliff.circuit import (
    Circuit,
    Gate,
    Measure,
    NetworkTransmit,
    ParityCheck,
    Register,
    validate,
)

__all__ = [
    "CatalogError",
    "ConstructionError",
    "PROTOCOL_NAMES",
    "ProtocolSpec",
    "STATE_NAMES",
    "StateSpec",
    "build_stabilizer_check",
    "builtin",
    "distribute",
    "rank_stabilizers",
    "state_spec",
]


class CatalogError(KeyError):
    """Unknown state or protocol name."""


class ConstructionError(ValueError):
    """A check gadget cannot be built from the given pieces."""


@dataclass(frozen=True)
class StateSpec:
    """An entangled resource: stabilizer generators plus how to prepare it."""

    name: str
    generators: tuple
    home_qubit: int
    prep: tuple  # CliffordGates on local indices, from |0...0>

    @property
    def n_qubits(self) -> int:
        return len(self.generators)

    @property
    def tableau(self) -> StabilizerTableau:
        return StabilizerTableau.from_strings(self.generators)

    def transmitted_qubits(self) -> list:
        return [q for q in range(self.n_qubits) if q != self.home_qubit]


def _g(kind, *targets):
    return CliffordGate(kind, targets)


_CATALOG = {
    "Bell": StateSpec(
        "Bell", ("+XX", "+ZZ"), 0, (_g("H", 0), _g("CNOT", 0, 1))
    ),
    "BellZX": StateSpec(
        # graph-state form of the pair: |0+> + |1->
        "BellZX", ("+XZ", "+ZX"), 0, (_g("H", 0), _g("H", 1), _g("CZ", 0, 1))
    ),
    "GHZ3": StateSpec(
        "GHZ3",
        ("+XXX", "+ZZI", "+IZZ"),
        0,
        (_g("H", 0), _g("CNOT", 0, 1), _g("CNOT", 1, 2)),
    ),
    "GHZ4": StateSpec(
        "GHZ4",
        ("+XXXX", "+ZZII", "+IZZI", "+IIZZ"),
        0,
        (_g("H", 0), _g("CNOT", 0, 1), _g("CNOT", 1, 2), _g("CNOT", 2, 3)),
    ),
    "Cluster4": StateSpec(
        "Cluster4",
        ("+XZII", "+ZXZI", "+IZXZ", "+IIZX"),
        0,
        (
            _g("H", 0), _g("H", 1), _g("H", 2), _g("H", 3),
            _g("CZ", 0, 1), _g("CZ", 1, 2), _g("CZ", 2, 3),
        ),
    ),
    "GHZ3c": StateSpec(
        # GHZ3 with the first qubit rotated into the X frame
        "GHZ3c",
        ("+ZXX", "+XZI", "+IZZ"),
        0,
        (_g("H", 0), _g("CNOT", 0, 1), _g("CNOT", 1, 2), _g("H", 0)),
    ),
    "GHZ4c": StateSpec(
        "GHZ4c",
        ("+ZXXX", "+XZII", "+IZZI", "+IIZZ"),
        0,
        (_g("H", 0), _g("CNOT", 0, 1), _g("CNOT", 1, 2), _g("CNOT", 2, 3), _g("H", 0)),
    ),
}

STATE_NAMES = tuple(_CATALOG)


def state_spec(name: str) -> StateSpec:
    try:
        return _CATALOG[name]
    except KeyError:
        raise CatalogError(f"unknown state {name!r}; known: {', '.join(STATE_NAMES)}") from None


def distribute(state: StateSpec, offset: int = 0) -> list:
    """Preparation gates plus one transmission of every non-home qubit."""
    ops = [
        Gate(CliffordGate(g.kind, tuple(offset + t for t in g.targets)), is_prep=True)
        for g in state.prep
    ]
    sent = tuple(offset + q for q in state.transmitted_qubits())
    if sent:
        ops.append(NetworkTransmit(sent))
    return ops


def rank_stabilizers(state: StateSpec) -> list:
    """Nontrivial stabilizer group elements with their sensitivity counts.

    The count is the number of single-qubit X/Y/Z errors on transmitted
    qubits that anticommute with the element; sorted descending, ties broken
    by the text rendering of the operator.
    """
    rows = [PauliOperator.from_string(s) for s in state.generators]
    n = state.n_qubits
    elements = []
    for mask in range(1, 2**n):
        acc = PauliOperator.identity(n)
        for i, row in enumerate(rows):
            if (mask >> i) & 1:
                acc = acc * row
        elements.append(acc)
    errors = [
        PauliOperator.single(n, q, letter)
        for q in state.transmitted_qubits()
        for letter in "XYZ"
    ]
    ranked = [
        (el, sum(0 if el.commutes_with(e) else 1 for e in errors)) for el in elements
    ]
    ranked.sort(key=lambda pair: (-pair[1], str(pair[0])))
    return ranked


# -- generic stabilizer-check gadget -----------------------------------


def _controlled_letter_ops(ancilla: int, data: int, letter: str) -> list:
    """Gates applying `letter` on data controlled by the ancilla qubit."""
    if letter == "X":
        return [Gate(_g("CNOT", ancilla, data))]
    if letter == "Z":
        return [Gate(_g("CZ", ancilla, data))]
    if letter == "Y":
        # controlled-Y via basis change on the data qubit: S X S^dag = Y
        return [
            Gate(_g("S", data)), Gate(_g("S", data)), Gate(_g("S", data)),
            Gate(_g("CNOT", ancilla, data)),
            Gate(_g("S", data)),
        ]
    raise ConstructionError(f"cannot couple through letter {letter!r}")


def _shor_check_ops(anc_qubits, letters, data_qubits, labels, expected) -> list:
    """Couple each ancilla qubit into its data qubit, then read the ancilla
    out in X; the parity of the outcomes is the checked observable."""
    ops = []
    for a, letter, d in zip(anc_qubits, letters, data_qubits):
        ops.extend(_controlled_letter_ops(a, d, letter))
    for a, label in zip(anc_qubits, labels):
        ops.append(Measure(a, "X", label))
    ops.append(ParityCheck(tuple(labels), expected))
    return ops


class _NoCoin:
    def __call__(self):
        raise ConstructionError("checked operator is not a stabilizer of the state")


def build_stabilizer_check(
    purified: StateSpec,
    checked: PauliOperator,
    sacrifice: StateSpec,
    wiring: dict,
    purified_offset: int = 0,
    sacrifice_offset: int = None,
    label_prefix: str = "chk",
) -> list:
    """Ops measuring `checked` on the purified register non-locally.

    The sacrificial state's qubits act as controls (one per qubit of the
    checked operator's support, per `wiring`: sacrifice local index ->
    purified local index) and are then all measured in X; the parity check
    expects even when the group element carries a + sign, odd for -.
    """
    if sacrifice_offset is None:
        sacrifice_offset = purified.n_qubits
    if checked.n_qubits != purified.n_qubits:
        raise ConstructionError("checked operator size does not match the purified state")
    outcome = purified.tableau.measure(checked, _NoCoin())
    support = checked.support
    if sorted(wiring.values()) != sorted(support):
        raise ConstructionError(
            f"wiring targets {sorted(wiring.values())} do not cover the support {list(support)}"
        )
    if set(wiring.keys()) != set(range(sacrifice.n_qubits)):
        raise ConstructionError("every sacrifice qubit must be wired")
    if len(support) != sacrifice.n_qubits:
        raise ConstructionError(
            f"a {sacrifice.n_qubits}-qubit sacrifice cannot span a weight-{len(support)} check"
        )
    anc = [sacrifice_offset + s for s in sorted(wiring)]
    data = [purified_offset + wiring[s] for s in sorted(wiring)]
    letters = [checked.letters()[wiring[s]] for s in sorted(wiring)]
    labels = [f"{label_prefix}{s}" for s in sorted(wiring)]
    expected = "even" if outcome == 1 else "odd"
    return _shor_check_ops(anc, letters, data, labels, expected)


# -- protocol assembly --------------------------------------------------


@dataclass(frozen=True)
class ProtocolSpec:
    name: str
    purified_state: StateSpec
    sacrificial_states: tuple
    circuit: Circuit = field(compare=False)


class _Builder:
    def __init__(self):
        self.registers = []
        self.initials = []
        self.specs = []
        self.ops = []

    def add(self, name: str, role: str, spec: StateSpec, nodes) -> int:
        offset = sum(r.qubit_count for r in self.registers)
        self.registers.append(
            Register(name, role, spec.n_qubits, spec.home_qubit, tuple(nodes))
        )
        self.initials.append(StabilizerTableau.zero_state(spec.n_qubits))
        self.specs.append(spec)
        return offset

    def distribute_all(self):
        offset = 0
        for reg, spec in zip(self.registers, self.specs):
            self.ops.extend(distribute(spec, offset))
            offset += reg.qubit_count

    def gate(self, kind, *qubits):
        self.ops.append(Gate(_g(kind, *qubits)))

    def measure(self, qubit, basis, label):
        self.ops.append(Measure(qubit, basis, label))

    def check(self, expected, *labels):
        self.ops.append(ParityCheck(tuple(labels), expected))

    def circuit(self, target: StabilizerTableau) -> Circuit:
        return Circuit(self.registers, self.initials, target, self.ops)


def _raw(state_name: str) -> tuple:
    spec = state_spec(state_name)
    b = _Builder()
    b.add("A", "purified", spec, range(1, spec.n_qubits + 1))
    b.distribute_all()
    return b.circuit(spec.tableau), spec, ()


def _hashing_stage_1(b: _Builder, a_off: int, s_off: int, name: str, n: int):
    """Fuse a sacrificial copy onto the kept one and read its Z parities."""
    for q in range(n):
        b.gate("CNOT", a_off + q, s_off + q)
    for q in range(n):
        b.measure(s_off + q, "Z", f"{name}{q}")
    for q in range(n - 1):
        b.check("even", f"{name}{q}", f"{name}{q + 1}")


def _hashing_stage_2(b: _Builder, a_off: int, s_off: int, name: str, n: int):
    """Sacrificial copy controls CNOTs into the kept one; X parity check."""
    for q in range(n):
        b.gate("CNOT", s_off + q, a_off + q)
    for q in range(n):
        b.measure(s_off + q, "X", f"{name}{q}")
    b.check("even", *[f"{name}{q}" for q in range(n)])


def _ghz_hashing(state_name: str, stages: str) -> tuple:
    """Chain hashing stages in the order the `stages` string lists them.

    Both orders detect the same single faults, but they differ at second
    order in the error rate: leading with the X-parity stage leaves the
    two-copy circuit with the same quadratic fidelity dip as the Bell-pair
    recipes, while leading with the Z-parity stage roughly doubles it.
    """
    spec = state_spec(state_name)
    n = spec.n_qubits
    nodes = range(1, n + 1)
    b = _Builder()
    a = b.add("A", "purified", spec, nodes)
    plan = []
    for ch in stages:
        if ch == "1":
            plan.append((_hashing_stage_1, "b", b.add("B", "sacrificial", spec, nodes)))
        else:
            plan.append((_hashing_stage_2, "c", b.add("C", "sacrificial", spec, nodes)))
    b.distribute_all()
    for stage, name, off in plan:
        stage(b, a, off, name, n)
    return b.circuit(spec.tableau), spec, tuple(spec for _ in plan)


def _cluster_stage(b: _Builder, a_off: int, s_off: int, name: str, flip: bool):
    """One purification stage for the 4-qubit linear cluster.

    The cluster graph is bicolorable (odd|even qubits); on one color the
    sacrificial copy controls CNOTs into the kept copy and is read in X, on
    the other the direction and basis are reversed.  `flip` swaps the roles
    of the two colors, giving the complementary stage.
    """
    x_color = [q for q in range(4) if (q % 2 == 0) != flip]
    z_color = [q for q in range(4) if (q % 2 == 0) == flip]
    for q in range(4):
        if q in x_color:
            b.gate("CNOT", s_off + q, a_off + q)
        else:
            b.gate("CNOT", a_off + q, s_off + q)
    for q in range(4):
        b.measure(s_off + q, "X" if q in x_color else "Z", f"{name}{q}")
    # each cluster generator X_q Z_neighbors pairs one X readout with the
    # Z readouts next to it
    for q in x_color:
        labels = [f"{name}{q}"] + [f"{name}{p}" for p in (q - 1, q + 1) if 0 <= p < 4]
        b.check("even", *sorted(labels))


def _cluster_hashing(stages: str) -> tuple:
    spec = state_spec("Cluster4")
    nodes = range(1, 5)
    b = _Builder()
    a = b.add("A", "purified", spec, nodes)
    sacrifices = []
    if "1" in stages:
        sacrifices.append((b.add("B", "sacrificial", spec, nodes), "b", False))
    if "2" in stages:
        sacrifices.append((b.add("C", "sacrificial", spec, nodes), "c", True))
    b.distribute_all()
    for off, name, flip in sacrifices:
        _cluster_stage(b, a, off, name, flip)
    return b.circuit(spec.tableau), spec, tuple(spec for _ in sacrifices)


def _ghz3_het() -> tuple:
    """GHZ3 purified with two Bell pairs between nodes 2 and 3.

    Pair b absorbs the Z-type parity of the kept state's transmitted qubits
    (kept qubits control CNOTs into b, b read in Z); pair c then checks b's
    own X parity the same non-local way, catching the Z errors that b would
    otherwise copy back onto the kept state.
    """
    ghz = state_spec("GHZ3")
    bell = state_spec("Bell")
    b = _Builder()
    a = b.add("A", "purified", ghz, (1, 2, 3))
    pb = b.add("b", "sacrificial", bell, (2, 3))
    pc = b.add("c", "sacrificial", bell, (2, 3))
    b.distribute_all()
    b.gate("CNOT", a + 1, pb + 0)
    b.gate("CNOT", a + 2, pb + 1)
    b.gate("CNOT", pc + 0, pb + 0)
    b.gate("CNOT", pc + 1, pb + 1)
    b.measure(pb + 0, "Z", "b0")
    b.measure(pb + 1, "Z", "b1")
    b.measure(pc + 0, "X", "c0")
    b.measure(pc + 1, "X", "c1")
    b.check("even", "b0", "b1")
    b.check("even", "c0", "c1")
    return b.circuit(ghz.tableau), ghz, (bell, bell)


def _cluster4_het() -> tuple:
    """Cluster state purified with two Bell pairs and one GHZ3.

    Gadget v reads the right-edge generator IIZX with a graph-form pair,
    gadget w reads IZXZ with a GHZ3 whose qubits control into the kept
    state, and pair u guards w: u and w each catch the errors leaking from
    the other, leaving only a Z flip on kept qubit 1 undetectable.
    """
    cluster = state_spec("Cluster4")
    bell = state_spec("Bell")
    zx = state_spec("BellZX")
    ghz = state_spec("GHZ3")
    b = _Builder()
    a = b.add("A", "purified", cluster, (1, 2, 3, 4))
    pv = b.add("v", "sacrificial", zx, (3, 4))
    pw = b.add("w", "sacrificial", ghz, (2, 3, 4))
    pu = b.add("u", "sacrificial", bell, (3, 4))
    b.distribute_all()
    # v: parity(v0 in Z, v1 in X) reads Z_A2 X_A3 (generator IIZX)
    b.gate("CNOT", a + 2, pv + 0)
    b.gate("CNOT", pv + 1, a + 3)
    b.measure(pv + 0, "Z", "v0")
    b.measure(pv + 1, "X", "v1")
    b.check("even", "v0", "v1")
    # w: X parity of the GHZ3 reads Z_A1 X_A2 Z_A3 (generator IZXZ)
    b.gate("CZ", pw + 0, a + 1)
    b.gate("CNOT", pw + 1, a + 2)
    b.gate("CZ", pw + 2, a + 3)
    # u guards w's two travelling qubits: X parity of u reads Z_w1 Z_w2
    b.gate("CZ", pu + 0, pw + 1)
    b.gate("CZ", pu + 1, pw + 2)
    for q, label in ((pw + 0, "w0"), (pw + 1, "w1"), (pw + 2, "w2")):
        b.measure(q, "X", label)
    b.check("even", "w0", "w1", "w2")
    b.measure(pu + 0, "X", "u0")
    b.measure(pu + 1, "X", "u1")
    b.check("even", "u0", "u1")
    return b.circuit(cluster.tableau), cluster, (zx, ghz, bell)


def _ghz4_het() -> tuple:
    """GHZ4 purified with three Bell pairs, one per non-home node pair.

    Found by randomized wiring search (scripts/find_ghz4_het.py) over
    CZ/CNOT couplings with kernel-derived checks, then verified fault by
    fault.  Pairs b and v hang Z probes off the travelling kept qubits via
    CZ; the third pair u closes a cycle through b and v (CZ onto b's home
    qubit, absorbing v's home qubit with a CNOT) so that the two parity
    checks mix labels across all three pairs.  Every X or Y on a travelling
    qubit and every ancilla error flips a check; only the three Z flips on
    the kept qubits slip through, the floor set by the checks having no
    X support on the kept register.
    """
    ghz = state_spec("GHZ4")
    bell = state_spec("Bell")
    b = _Builder()
    a = b.add("A", "purified", ghz, (1, 2, 3, 4))
    pb = b.add("b", "sacrificial", bell, (2, 4))
    pv = b.add("v", "sacrificial", bell, (3, 4))
    pu = b.add("u", "sacrificial", bell, (3, 2))
    b.distribute_all()
    b.gate("CZ", pb + 0, a + 1)
    b.gate("CZ", pb + 1, a + 3)
    b.gate("CZ", pb + 1, pv + 1)
    b.gate("CZ", pv + 0, a + 2)
    b.gate("CZ", pv + 1, a + 3)
    b.gate("CZ", pu + 1, pb + 0)
    b.gate("CNOT", pv + 0, pu + 0)
    b.measure(pb + 0, "X", "b0")
    b.measure(pb + 1, "X", "b1")
    b.measure(pv + 0, "X", "v0")
    b.measure(pv + 1, "X", "v1")
    b.measure(pu + 1, "X", "u1")
    b.measure(pu + 0, "Z", "u0")
    b.check("even", "v0", "v1", "u1")
    b.check("even", "b0", "b1", "u0")
    return b.circuit(ghz.tableau), ghz, (bell, bell, bell)


_BUILDERS = {
    "raw-ghz3": lambda: _raw("GHZ3"),
    "raw-ghz4": lambda: _raw("GHZ4"),
    "raw-cluster4": lambda: _raw("Cluster4"),
    "ghz3-p1": lambda: _ghz_hashing("GHZ3", "1"),
    "ghz3-p2": lambda: _ghz_hashing("GHZ3", "2"),
    "ghz3-p1p2": lambda: _ghz_hashing("GHZ3", "12"),
    "ghz4-p1": lambda: _ghz_hashing("GHZ4", "1"),
    "ghz4-p2": lambda: _ghz_hashing("GHZ4", "2"),
    # X-parity stage first: see _ghz_hashing on the second-order difference
    "ghz4-p1p2": lambda: _ghz_hashing("GHZ4", "21"),
    "cluster4-p1": lambda: _cluster_hashing("1"),
    "cluster4-p2": lambda: _cluster_hashing("2"),
    "cluster4-p1p2": lambda: _cluster_hashing("12"),
    "ghz3-het": _ghz3_het,
    "ghz4-het": _ghz4_het,
    "cluster4-het": _cluster4_het,
}

PROTOCOL_NAMES = tuple(sorted(_BUILDERS))


def builtin(name: str) -> ProtocolSpec:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise CatalogError(
            f"unknown protocol {name!r}; known: {', '.join(PROTOCOL_NAMES)}"
        ) from None
    circuit, purified, sacrifices = build()
    diagnostics = validate(circuit)
    if diagnostics:
        raise AssertionError(f"builtin {name} is broken: {diagnostics}")
    return ProtocolSpec(name, purified, tuple(sacrifices), circuit)
