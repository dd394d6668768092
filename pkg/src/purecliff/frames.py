"""Vectorized Monte Carlo core: Pauli frames over bit-packed trial batches.

A validated circuit has a deterministic noiseless run (the reference), and
a Pauli fault pattern turns a trial into reference-plus-frame: outcome bits
flip where the frame anticommutes with the measured observable, and the
kept state becomes frame * target.  Tracking only the frame makes a trial
two bits per qubit, so a batch of 64 trials lives in one uint64 per qubit
per plane and every update is bitwise.

Frame updates ignore phases: acceptance needs only outcome-bit flips, and
the kept state matches the target exactly when the residual frame commutes
with every target stabilizer generator (the stabilizer group is its own
centralizer), both phase-free questions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from purecliff.circuit import (
    Circuit,
    Gate,
    Measure,
    NetworkTransmit,
    NoisySite,
    ParityCheck,
    execute,
)
from purecliff.noise import NoiseModel, enumerate_fault_sites

__all__ = ["CHUNK_TRIALS", "FramePlan", "compile_plan", "run_batch", "sample_site_choices"]

CHUNK_TRIALS = 65536

try:
    _popcount = np.bitwise_count
except AttributeError:  # older numpy
    def _popcount(words):
        return np.unpackbits(words.view(np.uint8)).astype(np.uint32)


def _count_bits(words) -> int:
    return int(_popcount(words).sum())


def _pack(bools: np.ndarray) -> np.ndarray:
    """Boolean (batch,) -> uint64 words, bit t of word w = trial 64*w + t."""
    return np.packbits(bools, bitorder="little").view(np.uint64)


@dataclass(frozen=True)
class FramePlan:
    """A circuit compiled for frame simulation under a fixed noise model."""

    circuit: Circuit
    sites: tuple
    steps: tuple        # ("gate", kind, targets) | ("cond", paulis, qubits, label)
                        # | ("site", site_index) | ("measure", basis, qubit, label)
                        # | ("check", label_tuple)
    cumprobs: tuple     # per site: cumulative alternative probabilities
    gen_x: np.ndarray   # target generators restricted to kept qubits
    gen_z: np.ndarray
    kept: tuple


def compile_plan(circuit: Circuit, model: NoiseModel, noisy_prep: bool = False) -> FramePlan:
    reference = execute(circuit)
    if not (reference.passed and reference.purified_equals_target):
        raise ValueError("frame simulation needs a circuit with a clean noiseless run")

    sites = enumerate_fault_sites(circuit, model, noisy_prep=noisy_prep)
    by_op = {}
    for index, site in enumerate(sites):
        by_op.setdefault(site.op_index, []).append(index)

    steps = []
    for i, op in enumerate(circuit.ops):
        attached = by_op.get(i, ())
        if isinstance(op, Gate):
            if op.condition is None:
                steps.append(("gate", op.gate.kind, op.gate.targets))
            else:
                # frame picks up the Pauli wherever the trial's condition bit
                # differs from the reference run's
                label, _ = op.condition
                steps.append(("cond", op.gate.kind, op.gate.targets, label))
            for s in attached:
                steps.append(("site", s))
        elif isinstance(op, (NetworkTransmit, NoisySite)):
            for s in attached:
                steps.append(("site", s))
        elif isinstance(op, Measure):
            steps.append(("measure", op.basis, op.qubit, op.label))
            for s in attached:
                steps.append(("site", s))
        elif isinstance(op, ParityCheck):
            steps.append(("check", op.labels))

    kept = tuple(
        q
        for q in circuit.purified_qubits()
        if not any(isinstance(op, Measure) and op.qubit == q for op in circuit.ops)
    )
    offset = circuit.register_offset(circuit.purified_register().name)
    target = circuit.target_state
    gen_x = np.zeros((target.n, len(kept)), np.uint8)
    gen_z = np.zeros((target.n, len(kept)), np.uint8)
    for row in range(target.n):
        gen_x[row] = target.x[target.n + row][[q - offset for q in kept]]
        gen_z[row] = target.z[target.n + row][[q - offset for q in kept]]

    cumprobs = tuple(
        tuple(np.cumsum([a.probability for a in site.alternatives]).tolist())
        for site in sites
    )
    return FramePlan(circuit, tuple(sites), tuple(steps), cumprobs, gen_x, gen_z, kept)


def sample_site_choices(plan: FramePlan, rng: np.random.Generator, batch: int):
    """Per site, the chosen alternative index per trial (len(alts) = none).

    One uniform draw per site per trial, in site order, so the stream is
    fixed by (seed, batch) regardless of how results are consumed.
    """
    choices = []
    for cum in plan.cumprobs:
        u = rng.random(batch)
        choices.append(np.searchsorted(np.asarray(cum), u, side="right"))
    return choices


def _apply_pauli_masked(fx, fz, paulis, qubits, mask):
    for letter, q in zip(paulis, qubits):
        if letter in ("X", "Y"):
            fx[q] ^= mask
        if letter in ("Z", "Y"):
            fz[q] ^= mask


def run_batch(plan: FramePlan, choices, batch: int, valid: int = None):
    """(passes, goods, pass_words, good_words) for one batch of trials.

    `valid` counts only the first trials of the batch (the rest is padding
    when the requested trial total is not a multiple of 64).
    """
    if batch % 64:
        raise ValueError("batch must be a multiple of 64")
    words = batch // 64
    n = plan.circuit.n_qubits
    fx = np.zeros((n, words), np.uint64)
    fz = np.zeros((n, words), np.uint64)
    flips = {}
    fail = np.zeros(words, np.uint64)

    site_masks = []
    for site, choice in zip(plan.sites, choices):
        masks = [
            _pack(choice == j) for j in range(len(site.alternatives))
        ]
        site_masks.append(masks)

    for step in plan.steps:
        kind = step[0]
        if kind == "gate":
            _, gkind, targets = step
            if gkind == "H":
                q = targets[0]
                fx[q], fz[q] = fz[q].copy(), fx[q].copy()
            elif gkind == "S":
                q = targets[0]
                fz[q] ^= fx[q]
            elif gkind == "CNOT":
                c, t = targets
                fx[t] ^= fx[c]
                fz[c] ^= fz[t]
            elif gkind == "CZ":
                a, b = targets
                fz[b] ^= fx[a]
                fz[a] ^= fx[b]
            # X, Y, Z: a Pauli commutes with the frame up to phase
        elif kind == "cond":
            _, gkind, targets, label = step
            mask = flips[label]
            _apply_pauli_masked(fx, fz, gkind, targets, mask)
        elif kind == "site":
            site = plan.sites[step[1]]
            for alt, mask in zip(site.alternatives, site_masks[step[1]]):
                if alt.is_flip:
                    flips[site.label] ^= mask
                else:
                    _apply_pauli_masked(fx, fz, alt.paulis, alt.qubits, mask)
        elif kind == "measure":
            _, basis, q, label = step
            if basis == "Z":
                flip = fx[q].copy()
            elif basis == "X":
                flip = fz[q].copy()
            else:
                flip = fx[q] ^ fz[q]
            flips[label] = flip
        else:  # check
            parity = np.zeros(words, np.uint64)
            for label in step[1]:
                parity ^= flips[label]
            fail |= parity

    mismatch = np.zeros(words, np.uint64)
    for row in range(plan.gen_x.shape[0]):
        anti = np.zeros(words, np.uint64)
        for j, q in enumerate(plan.kept):
            if plan.gen_z[row, j]:
                anti ^= fx[q]
            if plan.gen_x[row, j]:
                anti ^= fz[q]
        mismatch |= anti

    pass_words = ~fail
    good_words = pass_words & ~mismatch
    if valid is not None and valid != batch:
        keep = _pack(np.arange(batch) < valid)
        pass_words = pass_words & keep
        good_words = good_words & keep
    return _count_bits(pass_words), _count_bits(good_words), pass_words, good_words
