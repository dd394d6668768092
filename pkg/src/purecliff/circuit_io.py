"""Line-oriented text format for circuits.

Layout, in fixed order: a version tag, register declarations, one `initial`
block per register (stabilizer rows of its starting state), the `target`
rows for the purified register, the op list, and a closing `end`.  Blank
lines and `#` comments are allowed anywhere.

    purecliff-circuit/1
    register A purified qubits=3 home=0 nodes=1,2,3
    initial A +ZII +IZI +IIZ
    target +XXX +ZZI +IZZ
    op gate H 0 prep
    op transmit 1 2
    op measure 3 Z m0
    op gate X 1 if m0=1
    op check even m0 m1
    end
"""

from __future__ import annotations

from purecliff.circuit import (
    Circuit,
    Gate,
    Measure,
    NetworkTransmit,
    NoisySite,
    ParityCheck,
    Register,
)
from purecliff.tableau import GATE_ARITY, CliffordGate, StabilizerTableau

__all__ = ["CircuitParseError", "FORMAT_VERSION", "deserialize", "serialize"]

FORMAT_VERSION = "purecliff-circuit/1"


class CircuitParseError(ValueError):
    """Malformed circuit text; the message carries the offending line."""


def _rows(state: StabilizerTableau) -> list:
    return state.render().split("\n")


def serialize(circuit: Circuit) -> str:
    lines = [FORMAT_VERSION]
    for reg in circuit.registers:
        line = f"register {reg.name} {reg.role} qubits={reg.qubit_count} home={reg.home_qubit}"
        if reg.nodes is not None:
            line += " nodes=" + ",".join(str(n) for n in reg.nodes)
        lines.append(line)
    for reg, state in zip(circuit.registers, circuit.initial_states):
        lines.append(f"initial {reg.name} " + " ".join(_rows(state)))
    lines.append("target " + " ".join(_rows(circuit.target_state)))
    for op in circuit.ops:
        if isinstance(op, Gate):
            line = f"op gate {op.gate.kind} " + " ".join(str(t) for t in op.gate.targets)
            if op.is_prep:
                line += " prep"
            if op.condition is not None:
                label, value = op.condition
                line += f" if {label}={value}"
            lines.append(line)
        elif isinstance(op, NetworkTransmit):
            lines.append("op transmit " + " ".join(str(q) for q in op.qubits))
        elif isinstance(op, NoisySite):
            lines.append(
                f"op noisy {op.channel_id} " + " ".join(str(q) for q in op.qubits)
            )
        elif isinstance(op, Measure):
            lines.append(f"op measure {op.qubit} {op.basis} {op.label}")
        elif isinstance(op, ParityCheck):
            lines.append(f"op check {op.expected_parity} " + " ".join(op.labels))
        else:
            raise TypeError(f"cannot serialize op {op!r}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def _fail(lineno: int, message: str):
    raise CircuitParseError(f"line {lineno}: {message}")


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        _fail(lineno, f"{what} must be an integer, got {token!r}")


def _state(tokens, lineno, what) -> StabilizerTableau:
    if not tokens:
        _fail(lineno, f"{what} needs at least one stabilizer row")
    try:
        return StabilizerTableau.from_strings(tokens)
    except ValueError as exc:
        _fail(lineno, f"bad {what}: {exc}")


def _parse_gate(tokens, lineno) -> Gate:
    if not tokens:
        _fail(lineno, "gate op needs a kind")
    kind = tokens[0]
    if kind not in GATE_ARITY:
        _fail(lineno, f"unknown gate kind {kind!r}")
    arity = GATE_ARITY[kind]
    targets = tuple(_int(t, lineno, "gate target") for t in tokens[1 : 1 + arity])
    rest = tokens[1 + arity :]
    is_prep = False
    condition = None
    while rest:
        if rest[0] == "prep":
            is_prep = True
            rest = rest[1:]
        elif rest[0] == "if" and len(rest) == 2 and "=" in rest[1]:
            label, _, value = rest[1].partition("=")
            if value not in ("0", "1"):
                _fail(lineno, f"condition value must be 0 or 1, got {value!r}")
            condition = (label, int(value))
            rest = rest[2:]
        else:
            _fail(lineno, f"unexpected gate tokens {rest!r}")
    if len(targets) != arity:
        _fail(lineno, f"{kind} needs {arity} targets")
    try:
        return Gate(CliffordGate(kind, targets), is_prep=is_prep, condition=condition)
    except ValueError as exc:
        _fail(lineno, str(exc))


def _parse_op(tokens, lineno):
    if not tokens:
        _fail(lineno, "empty op")
    head, rest = tokens[0], tokens[1:]
    if head == "gate":
        return _parse_gate(rest, lineno)
    if head == "transmit":
        if not rest:
            _fail(lineno, "transmit needs qubits")
        return NetworkTransmit(tuple(_int(t, lineno, "qubit") for t in rest))
    if head == "noisy":
        if len(rest) < 2:
            _fail(lineno, "noisy needs a channel id and qubits")
        return NoisySite(rest[0], tuple(_int(t, lineno, "qubit") for t in rest[1:]))
    if head == "measure":
        if len(rest) != 3:
            _fail(lineno, "measure needs: qubit basis label")
        qubit = _int(rest[0], lineno, "qubit")
        if rest[1] not in ("X", "Y", "Z"):
            _fail(lineno, f"bad measurement basis {rest[1]!r}")
        return Measure(qubit, rest[1], rest[2])
    if head == "check":
        if len(rest) < 2 or rest[0] not in ("even", "odd"):
            _fail(lineno, "check needs: even|odd labels...")
        return ParityCheck(tuple(rest[1:]), rest[0])
    _fail(lineno, f"unknown op {head!r}")


def deserialize(text: str) -> Circuit:
    lines = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((i, stripped))
    if not lines:
        raise CircuitParseError("line 1: empty circuit text")
    lineno, version = lines[0]
    if version != FORMAT_VERSION:
        _fail(lineno, f"unsupported version {version!r}, expected {FORMAT_VERSION!r}")

    registers = []
    initials = {}
    target = None
    ops = []
    ended = False
    section = "register"
    for lineno, line in lines[1:]:
        if ended:
            _fail(lineno, "content after end")
        tokens = line.split()
        head = tokens[0]
        if head == "register":
            if section != "register":
                _fail(lineno, "register declarations must precede everything else")
            if len(tokens) < 5:
                _fail(lineno, "register needs: name role qubits=N home=N [nodes=...]")
            name, role = tokens[1], tokens[2]
            fields = {}
            for tok in tokens[3:]:
                key, _, value = tok.partition("=")
                fields[key] = value
            missing = {"qubits", "home"} - set(fields)
            if missing:
                _fail(lineno, f"register missing {sorted(missing)}")
            nodes = None
            if "nodes" in fields:
                nodes = tuple(
                    _int(t, lineno, "node") for t in fields["nodes"].split(",")
                )
            try:
                reg = Register(
                    name,
                    role,
                    _int(fields["qubits"], lineno, "qubits"),
                    _int(fields["home"], lineno, "home"),
                    nodes,
                )
            except ValueError as exc:
                _fail(lineno, str(exc))
            registers.append(reg)
        elif head == "initial":
            section = "initial"
            if len(tokens) < 2:
                _fail(lineno, "initial needs a register name")
            name = tokens[1]
            if name not in {r.name for r in registers}:
                _fail(lineno, f"initial for unknown register {name!r}")
            if name in initials:
                _fail(lineno, f"duplicate initial for register {name!r}")
            initials[name] = _state(tokens[2:], lineno, "initial state")
        elif head == "target":
            section = "target"
            if target is not None:
                _fail(lineno, "duplicate target")
            target = _state(tokens[1:], lineno, "target state")
        elif head == "op":
            section = "op"
            if target is None:
                _fail(lineno, "ops must come after the target")
            ops.append(_parse_op(tokens[1:], lineno))
        elif head == "end":
            ended = True
        else:
            _fail(lineno, f"unknown directive {head!r}")

    last_line = lines[-1][0]
    if not ended:
        _fail(last_line, "missing end")
    if not registers:
        _fail(last_line, "no registers declared")
    if target is None:
        _fail(last_line, "no target state")
    missing = [r.name for r in registers if r.name not in initials]
    if missing:
        _fail(last_line, f"missing initial states for {missing}")
    for reg in registers:
        if initials[reg.name].n != reg.qubit_count:
            raise CircuitParseError(
                f"initial state for {reg.name!r} has {initials[reg.name].n} qubits, "
                f"register declares {reg.qubit_count}"
            )
    return Circuit(
        registers,
        [initials[r.name] for r in registers],
        target,
        ops,
    )
