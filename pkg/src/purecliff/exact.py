"""Exhaustive fault-pattern enumeration: exact acceptance and fidelity.

Every subset of fault sites can fire one of its alternatives; summing the
probability of each full assignment gives the exact acceptance probability
and output fidelity at the given noise strengths, with no sampling and no
truncation.  The cost is the product over sites of (alternatives + 1), so
this is meant for the small circuits: a raw distribution has at most three
network sites, the lean purification circuits six.

A single zero-coin execution per pattern is exact for circuits that pass
validation.  Outcome bits are affine in the measurement coins with a fault
independent linear part, so a deterministic noiseless run keeps every check
bit deterministic under any Pauli fault pattern; and the faulty final state
is a fixed Pauli frame applied to the (coin independent) noiseless output,
so the match flag cannot depend on the coins either.
"""

from __future__ import annotations

import itertools

from purecliff.circuit import Circuit, execute
from purecliff.noise import NoiseModel, enumerate_fault_sites
from purecliff.protocols import StateSpec, distribute, state_spec
from purecliff.circuit import Register
from purecliff.tableau import StabilizerTableau

__all__ = [
    "enumerate_patterns",
    "exact_success_and_fidelity",
    "invert_input_fidelity",
    "pattern_count",
    "raw_state_fidelity",
]

_PATTERN_LIMIT = 2_000_000


def pattern_count(sites) -> int:
    count = 1
    for site in sites:
        count *= 1 + len(site.alternatives)
    return count


def enumerate_patterns(sites):
    """Yield (assignment, probability) over all joint fault assignments."""
    menus = []
    for site in sites:
        options = [(None, 1.0 - sum(a.probability for a in site.alternatives))]
        options += [(alt, alt.probability) for alt in site.alternatives]
        menus.append(options)
    for combo in itertools.product(*menus):
        prob = 1.0
        assignment = {}
        for site, (alt, p) in zip(sites, combo):
            prob *= p
            if alt is not None:
                assignment[site] = alt
        yield assignment, prob


def exact_success_and_fidelity(circuit: Circuit, sites) -> tuple:
    """(acceptance probability, fidelity of the kept state given acceptance).

    Fidelity is None when nothing is ever accepted.
    """
    total = pattern_count(sites)
    if total > _PATTERN_LIMIT:
        raise ValueError(
            f"{total} fault patterns exceed the enumeration limit {_PATTERN_LIMIT}"
        )
    p_pass = 0.0
    p_good = 0.0
    for assignment, prob in enumerate_patterns(sites):
        if prob == 0.0:
            continue
        result = execute(circuit, assignment)
        if result.passed:
            p_pass += prob
            if result.purified_equals_target:
                p_good += prob
    if p_pass <= 0.0:
        return 0.0, None
    return p_pass, p_good / p_pass


def _raw_circuit(state: StateSpec) -> Circuit:
    reg = Register("A", "purified", state.n_qubits, state.home_qubit,
                   tuple(range(1, state.n_qubits + 1)))
    return Circuit(
        [reg],
        [StabilizerTableau.zero_state(state.n_qubits)],
        state.tableau,
        distribute(state),
    )


def raw_state_fidelity(state, eps: float) -> float:
    """Fidelity of a bare noisy distribution of the state at strength eps."""
    if isinstance(state, str):
        state = state_spec(state)
    if eps == 0.0:
        return 1.0
    circuit = _raw_circuit(state)
    sites = enumerate_fault_sites(circuit, NoiseModel(eps=eps))
    _, fidelity = exact_success_and_fidelity(circuit, sites)
    return fidelity


def invert_input_fidelity(state, f_in: float, tol: float = 1e-12) -> float:
    """The eps whose raw distribution fidelity equals f_in, by bisection.

    Raw fidelity falls strictly from 1 before flattening out; for some
    states it turns back up shortly before eps = 1/3 (GHZ3 bottoms out at
    0.3), so only f_in above the endpoint value f(1/3) is accepted.  On
    that range the crossing is unique and the bracket [lo, hi] maintains
    f(lo) >= f_in > f(hi) at every step, monotone or not.
    """
    if isinstance(state, str):
        state = state_spec(state)
    lo, hi = 0.0, 1.0 / 3.0
    f_lo = 1.0
    f_hi = raw_state_fidelity(state, hi)
    if not (f_hi - tol <= f_in <= f_lo + tol):
        raise ValueError(
            f"input fidelity {f_in} outside the reachable range "
            f"[{f_hi:.6f}, 1.0] for {state.name}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if raw_state_fidelity(state, mid) >= f_in:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
