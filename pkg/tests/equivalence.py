"""Random Clifford-circuit cases and the tableau-vs-dense comparison logic.

Shared between the unit tests (small smoke runs) and the acceptance suite
(the full 1000-case bar).  The tableau side's outcome law is reconstructed
exactly: outcome bits are affine GF(2) functions of the measurement coins,
so running the circuit with the all-zero coin vector plus each unit vector
determines the whole distribution (uniform over an affine subspace).
"""

from dataclasses import dataclass

import numpy as np

from purecliff.pauli import PauliOperator
from purecliff.tableau import CliffordGate, StabilizerTableau

from oracles import DenseSim, dense

GATE_POOL = ["H", "S", "X", "Y", "Z", "CNOT", "CZ"]
MEASURE_BASES = ["X", "Y", "Z"]


@dataclass
class CircuitCase:
    n: int
    ops: list  # ("gate", kind, targets) | ("measure", basis, qubit)


def random_case(rng: np.random.Generator, max_qubits=4, max_gates=20) -> CircuitCase:
    n = int(rng.integers(1, max_qubits + 1))
    n_gates = int(rng.integers(1, max_gates + 1))
    n_measures = int(rng.integers(1, 2 * n + 1))
    ops = []
    for _ in range(n_gates):
        kind = GATE_POOL[rng.integers(len(GATE_POOL))]
        if kind in ("CNOT", "CZ"):
            if n < 2:
                kind = "H"
                ops.append(("gate", kind, (int(rng.integers(n)),)))
                continue
            a, b = rng.choice(n, size=2, replace=False)
            ops.append(("gate", kind, (int(a), int(b))))
        else:
            ops.append(("gate", kind, (int(rng.integers(n)),)))
    for _ in range(n_measures):
        basis = MEASURE_BASES[rng.integers(3)]
        ops.append(("measure", basis, int(rng.integers(n))))
    rng.shuffle(ops)
    return CircuitCase(n, ops)


class ScriptedCoins:
    """Coin source replaying a fixed bit vector, padding with zeros."""

    def __init__(self, bits=()):
        self.bits = list(bits)
        self.drawn = 0

    def __call__(self) -> int:
        b = self.bits[self.drawn] if self.drawn < len(self.bits) else 0
        self.drawn += 1
        return b


def run_tableau(case: CircuitCase, coins):
    state = StabilizerTableau.zero_state(case.n)
    outcome_bits = []
    for op in case.ops:
        if op[0] == "gate":
            state.apply_gate(CliffordGate(op[1], op[2]))
        else:
            obs = PauliOperator.single(case.n, op[2], op[1])
            m = state.measure(obs, coins)
            outcome_bits.append(0 if m == 1 else 1)
    return tuple(outcome_bits), state


def tableau_outcome_law(case: CircuitCase):
    """Exact outcome distribution of the tableau simulation.

    Returns (probs, zero_state, zero_bits, affine) where probs maps outcome
    bit-tuples to exact probabilities, zero_state/zero_bits come from the
    all-zero coin run, and affine = (base, columns) reconstructs outcomes
    from coins.
    """
    zero_bits, zero_state = run_tableau(case, ScriptedCoins())
    probe = ScriptedCoins()
    run_tableau(case, probe)
    k = probe.drawn
    base = np.array(zero_bits, np.uint8)
    cols = []
    for i in range(k):
        unit = [0] * k
        unit[i] = 1
        bits, _ = run_tableau(case, ScriptedCoins(unit))
        cols.append(np.array(bits, np.uint8) ^ base)
    probs = {}
    if k == 0:
        probs[tuple(base.tolist())] = 1.0
    else:
        l_matrix = np.array(cols, np.uint8)  # (k, n_measurements)
        for c in range(2**k):
            coin_vec = np.array([(c >> i) & 1 for i in range(k)], np.uint8)
            bits = tuple((base ^ (coin_vec @ l_matrix) % 2).tolist())
            probs[bits] = probs.get(bits, 0.0) + 1.0 / 2**k
    return probs, zero_state, zero_bits, (base, cols)


def dense_distribution(case: CircuitCase, tol=1e-12):
    """Exact outcome distribution from the 2**n state-vector simulation."""
    results = {}
    post_states = {}

    def walk(sim: DenseSim, op_index: int, bits: tuple, prob: float):
        if prob < tol:
            return
        for i in range(op_index, len(case.ops)):
            op = case.ops[i]
            if op[0] == "gate":
                sim.apply(op[1], op[2])
            else:
                letters = ["I"] * case.n
                letters[op[2]] = op[1]
                obs = dense_pauli("".join(letters))
                p0 = sim.outcome_probability(obs, 0)
                for outcome, p_branch in ((0, p0), (1, 1.0 - p0)):
                    if p_branch < tol:
                        continue
                    child = DenseSim(case.n)
                    child.psi = sim.psi.copy()
                    child.collapse(obs, outcome)
                    walk(child, i + 1, bits + (outcome,), prob * p_branch)
                return
        results[bits] = results.get(bits, 0.0) + prob
        post_states[bits] = sim.psi
    sim = DenseSim(case.n)
    walk(sim, 0, (), 1.0)
    return results, post_states


def dense_pauli(letters: str) -> np.ndarray:
    from oracles import pauli_matrix

    return pauli_matrix(letters)


def tableau_state_matches_vector(state: StabilizerTableau, psi: np.ndarray, atol=1e-9):
    """True iff psi is the +1 eigenvector of every stabilizer row."""
    for row in state.stabilizer_rows():
        m = dense(row)
        if abs(np.vdot(psi, m @ psi) - 1.0) > atol:
            return False
    return True


def compare_case(case: CircuitCase, atol=1e-9):
    """Full comparison; returns a list of human-readable discrepancies."""
    problems = []
    tab_probs, zero_state, zero_bits, _ = tableau_outcome_law(case)
    dense_probs, dense_posts = dense_distribution(case)
    keys = set(tab_probs) | set(dense_probs)
    for key in sorted(keys):
        pt = tab_probs.get(key, 0.0)
        pd = dense_probs.get(key, 0.0)
        if abs(pt - pd) > atol:
            problems.append(f"outcome {key}: tableau {pt} vs dense {pd}")
    if zero_bits in dense_posts:
        if not tableau_state_matches_vector(zero_state, dense_posts[zero_bits], atol):
            problems.append(f"post-state mismatch on outcome path {zero_bits}")
    else:
        problems.append(f"zero-coin path {zero_bits} impossible in dense sim")
    return problems


def chi2_statistic(counts: dict, probs: dict, shots: int):
    """Pearson statistic and degrees of freedom against exact cell probs."""
    stat = 0.0
    cells = 0
    for key, p in probs.items():
        expected = p * shots
        observed = counts.get(key, 0)
        stat += (observed - expected) ** 2 / expected
        cells += 1
    extras = set(counts) - set(probs)
    if extras:
        return float("inf"), cells
    return stat, cells - 1


def chi2_critical(df: int, z: float = 6.0) -> float:
    """Wilson-Hilferty upper quantile approximation, generous tail."""
    if df < 1:
        return 0.0
    term = 1.0 - 2.0 / (9 * df) + z * np.sqrt(2.0 / (9 * df))
    return df * term**3


def sample_affine(rng: np.random.Generator, base, cols, shots: int):
    """Shots from the tableau outcome law by drawing uniform coins."""
    k = len(cols)
    counts = {}
    if k == 0:
        counts[tuple(base.tolist())] = shots
        return counts
    l_matrix = np.array(cols, np.uint8)
    coins = rng.integers(0, 2, size=(shots, k), dtype=np.uint8)
    outcomes = (coins @ l_matrix + base) % 2
    uniq, n = np.unique(outcomes, axis=0, return_counts=True)
    for row, c in zip(uniq, n):
        counts[tuple(row.tolist())] = int(c)
    return counts
