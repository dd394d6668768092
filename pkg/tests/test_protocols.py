import pytest

from purecliff.circuit import (
    Circuit,
    Gate,
    Measure,
    NetworkTransmit,
    ParityCheck,
    Register,
    execute,
    validate,
)
from purecliff.pauli import PauliOperator
from purecliff.protocols import (
    PROTOCOL_NAMES,
    STATE_NAMES,
    CatalogError,
    ConstructionError,
    build_stabilizer_check,
    builtin,
    distribute,
    rank_stabilizers,
    state_spec,
)
from purecliff.tableau import CliffordGate, StabilizerTableau, states_equal


class TestStateCatalog:
    def test_names(self):
        assert set(STATE_NAMES) == {
            "Bell", "BellZX", "GHZ3", "GHZ4", "Cluster4", "GHZ3c", "GHZ4c",
        }

    def test_unknown_state(self):
        with pytest.raises(CatalogError, match="unknown state"):
            state_spec("W3")

    def test_prep_produces_the_generators(self):
        for name in STATE_NAMES:
            spec = state_spec(name)
            t = StabilizerTableau.zero_state(spec.n_qubits)
            for g in spec.prep:
                t.apply_gate(g)
            assert states_equal(t, spec.tableau), name

    def test_transmitted_qubits_skip_home(self):
        spec = state_spec("GHZ4")
        assert spec.home_qubit not in spec.transmitted_qubits()
        assert len(spec.transmitted_qubits()) == 3

    def test_distribute_shape(self):
        ops = distribute(state_spec("GHZ3"), offset=5)
        *prep, sent = ops
        assert all(isinstance(g, Gate) and g.is_prep for g in prep)
        assert isinstance(sent, NetworkTransmit)
        assert sent.qubits == (6, 7)


class TestRankStabilizers:
    def test_ghz3_counts(self):
        ranked = {str(op): count for op, count in rank_stabilizers(state_spec("GHZ3"))}
        assert len(ranked) == 7
        assert ranked["+IZZ"] == 4
        assert ranked["+ZZI"] == 2
        assert ranked["+ZIZ"] == 2

    def test_bell_counts(self):
        ranked = {str(op): count for op, count in rank_stabilizers(state_spec("Bell"))}
        assert ranked == {"+XX": 2, "+ZZ": 2, "-YY": 2}

    def test_sorted_descending_with_text_tiebreak(self):
        ranked = rank_stabilizers(state_spec("GHZ4"))
        keys = [(-count, str(op)) for op, count in ranked]
        assert keys == sorted(keys)
        assert len(ranked) == 15

    def test_counts_bounded_by_error_menu(self):
        for name in STATE_NAMES:
            spec = state_spec(name)
            menu = 3 * len(spec.transmitted_qubits())
            for _, count in rank_stabilizers(spec):
                assert 0 <= count <= menu


def ghz3_with_bell_check(pre_error=None):
    """GHZ3 plus one Bell pair measuring the IZZ stabilizer non-locally."""
    ghz = state_spec("GHZ3")
    bell = state_spec("Bell")
    regs = [
        Register("A", "purified", 3, 0, (1, 2, 3)),
        Register("s", "sacrificial", 2, 0, (2, 3)),
    ]
    ops = distribute(ghz, 0) + distribute(bell, 3)
    if pre_error is not None:
        for q, letter in pre_error:
            ops.append(Gate(CliffordGate(letter, (q,))))
    ops += build_stabilizer_check(
        ghz,
        PauliOperator.from_string("+IZZ"),
        bell,
        {0: 1, 1: 2},
    )
    initials = [StabilizerTableau.zero_state(3), StabilizerTableau.zero_state(2)]
    return Circuit(regs, initials, ghz.tableau, ops)


class TestStabilizerCheck:
    def test_noiseless_run_passes(self):
        c = ghz3_with_bell_check()
        assert validate(c) == []
        r = execute(c)
        assert r.passed and r.purified_equals_target

    def test_anticommuting_error_flips_parity(self):
        # X on the second GHZ qubit anticommutes with IZZ
        r = execute(ghz3_with_bell_check(pre_error=[(1, "X")]))
        assert not r.passed

    def test_stabilizer_error_is_invisible(self):
        # Z1 Z2 is itself a stabilizer: parity passes, state untouched
        r = execute(ghz3_with_bell_check(pre_error=[(1, "Z"), (2, "Z")]))
        assert r.passed and r.purified_equals_target

    def test_all_sacrifice_qubits_measured(self):
        ops = ghz3_with_bell_check().ops
        measured = {op.qubit for op in ops if isinstance(op, Measure)}
        assert {3, 4} <= measured

    def test_fragment_ends_with_parity_check(self):
        tail = ghz3_with_bell_check().ops[-1]
        assert isinstance(tail, ParityCheck)
        assert tail.expected_parity == "even"

    def test_group_element_sign_sets_parity(self):
        # -YY stabilizes the pair, so measuring +YY comes out odd
        bell = state_spec("Bell")
        even = build_stabilizer_check(
            bell, PauliOperator.from_string("-YY"), bell, {0: 0, 1: 1}
        )
        assert even[-1].expected_parity == "even"
        odd = build_stabilizer_check(
            bell, PauliOperator.from_string("+YY"), bell, {0: 0, 1: 1}
        )
        assert odd[-1].expected_parity == "odd"

    def test_non_stabilizer_rejected(self):
        ghz = state_spec("GHZ3")
        with pytest.raises(ConstructionError, match="not a stabilizer"):
            build_stabilizer_check(
                ghz, PauliOperator.from_string("+XII"), state_spec("Bell"), {0: 0, 1: 1}
            )

    def test_wiring_must_cover_support(self):
        ghz = state_spec("GHZ3")
        with pytest.raises(ConstructionError, match="support"):
            build_stabilizer_check(
                ghz, PauliOperator.from_string("+IZZ"), state_spec("Bell"), {0: 0, 1: 2}
            )

    def test_wide_check_needs_matching_sacrifice(self):
        # a Bell pair cannot span the weight-3 stabilizer XXX
        ghz = state_spec("GHZ3")
        with pytest.raises(ConstructionError, match="support"):
            build_stabilizer_check(
                ghz,
                PauliOperator.from_string("+XXX"),
                state_spec("Bell"),
                {0: 0, 1: 1},
            )

    def test_size_mismatch_rejected(self):
        with pytest.raises(ConstructionError, match="size"):
            build_stabilizer_check(
                state_spec("GHZ3"),
                PauliOperator.from_string("+ZZ"),
                state_spec("Bell"),
                {0: 0, 1: 1},
            )


class TestBuiltinCatalog:
    def test_roster(self):
        assert len(PROTOCOL_NAMES) == 15
        assert set(PROTOCOL_NAMES) == {
            "raw-ghz3", "raw-ghz4", "raw-cluster4",
            "ghz3-p1", "ghz3-p2", "ghz3-p1p2", "ghz3-het",
            "ghz4-p1", "ghz4-p2", "ghz4-p1p2", "ghz4-het",
            "cluster4-p1", "cluster4-p2", "cluster4-p1p2", "cluster4-het",
        }

    def test_unknown_protocol(self):
        with pytest.raises(CatalogError, match="unknown protocol"):
            builtin("ghz5-het")

    def test_every_builtin_validates(self):
        for name in PROTOCOL_NAMES:
            assert validate(builtin(name).circuit) == [], name

    def test_het_sacrifice_lists(self):
        assert [s.name for s in builtin("ghz3-het").sacrificial_states] == ["Bell", "Bell"]
        assert [s.name for s in builtin("ghz4-het").sacrificial_states] == [
            "Bell", "Bell", "Bell",
        ]

    def test_raw_protocols_have_no_purification_ops(self):
        p = builtin("raw-ghz3")
        assert p.sacrificial_states == ()
        kinds = {type(op) for op in p.circuit.ops}
        assert kinds <= {Gate, NetworkTransmit}
        assert all(op.is_prep for op in p.circuit.ops if isinstance(op, Gate))
        (sent,) = [op for op in p.circuit.ops if isinstance(op, NetworkTransmit)]
        assert len(sent.qubits) == 2

    def test_purified_state_kinds(self):
        for name in PROTOCOL_NAMES:
            expected = {"ghz3": "GHZ3", "ghz4": "GHZ4", "clus": "Cluster4",
                        "raw-": None}[name[:4]]
            purified = builtin(name).purified_state.name
            if name.startswith("raw-"):
                assert purified in ("GHZ3", "GHZ4", "Cluster4")
            else:
                assert purified == expected

    def test_sacrificial_transmission_counts(self):
        # one travelling qubit per Bell pair, all but one per bigger state
        for name in PROTOCOL_NAMES:
            p = builtin(name)
            circuit = p.circuit
            sent = set()
            for op in circuit.ops:
                if isinstance(op, NetworkTransmit):
                    sent.update(op.qubits)
            for reg, spec in zip(circuit.registers[1:], p.sacrificial_states):
                off = circuit.register_offset(reg.name)
                travelling = [
                    q for q in range(off, off + reg.qubit_count) if q in sent
                ]
                assert len(travelling) == spec.n_qubits - 1, (name, reg.name)

    def test_no_three_qubit_sacrifice_for_ghz4(self):
        for name in ("ghz4-p1", "ghz4-p2", "ghz4-p1p2", "ghz4-het"):
            for spec in builtin(name).sacrificial_states:
                assert spec.n_qubits != 3, name

    def test_two_qubit_gates_are_node_local(self):
        for name in PROTOCOL_NAMES:
            circuit = builtin(name).circuit
            node_of = {}
            off = 0
            for reg in circuit.registers:
                for local, node in enumerate(reg.nodes):
                    node_of[off + local] = node
                off += reg.qubit_count
            for op in circuit.ops:
                if isinstance(op, Gate) and len(op.gate.targets) == 2 and not op.is_prep:
                    a, b = op.gate.targets
                    assert node_of[a] == node_of[b], (name, op)

    def test_specs_compare_by_content_not_circuit(self):
        a = builtin("ghz3-het")
        b = builtin("ghz3-het")
        assert a == b
