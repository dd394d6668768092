"""CHP-style stabilizer tableau simulation of Clifford circuits.

The tableau keeps n destabilizer rows followed by n stabilizer rows, each a
Hermitian Pauli stored as X bits, Z bits, and a sign bit.  Gates conjugate
every row; measurements use the standard anticommuting-row replacement, with
deterministic outcomes recovered from the destabilizer pairing.  Stabilizer
row signs are exact; destabilizer signs carry no meaning and are pinned to +.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from purecliff.pauli import _MUL_PHASE, DimensionError, PauliOperator

__all__ = [
    "CliffordGate",
    "InvalidObservableError",
    "StabilizerTableau",
    "apply_gate",
    "apply_pauli",
    "canonicalize",
    "measure",
    "restrict",
    "states_equal",
]

GATE_ARITY = {"H": 1, "S": 1, "X": 1, "Y": 1, "Z": 1, "CNOT": 2, "CZ": 2}


class InvalidObservableError(ValueError):
    """Measurement observable is not a Hermitian Pauli."""


@dataclass(frozen=True)
class CliffordGate:
    kind: str
    targets: tuple

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind not in GATE_ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.targets) != GATE_ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {GATE_ARITY[self.kind]} target(s)")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"{self.kind} targets must be distinct")

    def __str__(self):
        return f"{self.kind} {' '.join(map(str, self.targets))}"


def _rank_gf2(rows: np.ndarray) -> int:
    m = rows.copy() % 2
    rank = 0
    for col in range(m.shape[1]):
        pivots = np.nonzero(m[rank:, col])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        m[[rank, p]] = m[[p, rank]]
        hits = np.nonzero(m[:, col])[0]
        for i in hits:
            if i != rank:
                m[i] ^= m[rank]
        rank += 1
        if rank == m.shape[0]:
            break
    return rank


def _solve_gf2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """One solution x of a @ x = b (mod 2); a must have full row rank."""
    n_rows, n_cols = a.shape
    aug = np.concatenate([a % 2, b.reshape(-1, 1) % 2], axis=1).astype(np.uint8)
    pivot_cols = []
    rank = 0
    for col in range(n_cols):
        pivots = np.nonzero(aug[rank:, col])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        aug[[rank, p]] = aug[[p, rank]]
        for i in np.nonzero(aug[:, col])[0]:
            if i != rank:
                aug[i] ^= aug[rank]
        pivot_cols.append(col)
        rank += 1
        if rank == n_rows:
            break
    if np.any(aug[rank:, -1]):
        raise ValueError("inconsistent GF(2) system")
    x = np.zeros(n_cols, np.uint8)
    for row, col in enumerate(pivot_cols):
        x[col] = aug[row, -1]
    return x


class StabilizerTableau:
    """Pure stabilizer state on n qubits."""

    def __init__(self, n: int, x: np.ndarray, z: np.ndarray, r: np.ndarray):
        self.n = n
        self.x = x  # (2n, n) uint8; rows [0:n] destabilizers, [n:2n] stabilizers
        self.z = z
        self.r = r  # (2n,) sign bits, phase (-1)**r

    # -- constructors ------------------------------------------------

    @classmethod
    def zero_state(cls, n: int) -> "StabilizerTableau":
        x = np.zeros((2 * n, n), np.uint8)
        z = np.zeros((2 * n, n), np.uint8)
        x[:n] = np.eye(n, dtype=np.uint8)
        z[n:] = np.eye(n, dtype=np.uint8)
        return cls(n, x, z, np.zeros(2 * n, np.uint8))

    @classmethod
    def from_stabilizers(cls, generators) -> "StabilizerTableau":
        """Build a tableau from n independent commuting Hermitian generators.

        Destabilizers are completed by solving the symplectic pairing
        conditions over GF(2).
        """
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one generator")
        n = gens[0].n_qubits
        if len(gens) != n:
            raise ValueError(f"need exactly {n} generators for {n} qubits")
        for g in gens:
            if g.n_qubits != n:
                raise DimensionError("generators act on different qubit counts")
            if not g.is_hermitian:
                raise ValueError(f"generator {g} is not Hermitian")
        for i in range(n):
            for j in range(i + 1, n):
                if not gens[i].commutes_with(gens[j]):
                    raise ValueError(f"generators {gens[i]} and {gens[j]} anticommute")
        sx = np.array([g.x for g in gens], np.uint8)
        sz = np.array([g.z for g in gens], np.uint8)
        if _rank_gf2(np.concatenate([sx, sz], axis=1)) != n:
            raise ValueError("generators are not independent over GF(2)")

        # destabilizer bits: <d_i, s_j> = delta_ij, then pairwise commuting
        a = np.concatenate([sz, sx], axis=1)  # symplectic pairing matrix
        d = np.zeros((n, 2 * n), np.uint8)
        eye = np.eye(n, dtype=np.uint8)
        for i in range(n):
            d[i] = _solve_gf2(a, eye[i])
        s = np.concatenate([sx, sz], axis=1)
        for i in range(n):
            for j in range(i + 1, n):
                pair = int(d[i, :n] @ d[j, n:] + d[i, n:] @ d[j, :n]) % 2
                if pair:
                    d[j] ^= s[i]

        x = np.zeros((2 * n, n), np.uint8)
        z = np.zeros((2 * n, n), np.uint8)
        r = np.zeros(2 * n, np.uint8)
        x[:n], z[:n] = d[:, :n], d[:, n:]
        x[n:], z[n:] = sx, sz
        r[n:] = [g.phase_exp // 2 for g in gens]
        return cls(n, x, z, r)

    @classmethod
    def from_strings(cls, texts) -> "StabilizerTableau":
        return cls.from_stabilizers([PauliOperator.from_string(t) for t in texts])

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.n, self.x.copy(), self.z.copy(), self.r.copy())

    # -- views -------------------------------------------------------

    def _row(self, i: int) -> PauliOperator:
        return PauliOperator(self.x[i].copy(), self.z[i].copy(), 2 * int(self.r[i]))

    def stabilizer_rows(self):
        return [self._row(self.n + i) for i in range(self.n)]

    def destabilizer_rows(self):
        return [self._row(i) for i in range(self.n)]

    def render(self) -> str:
        """One stabilizer row per line, e.g. '+XXX'."""
        return "\n".join(str(row) for row in self.stabilizer_rows())

    def __repr__(self):
        return f"<StabilizerTableau {self.n} qubits {' '.join(str(r) for r in self.stabilizer_rows())}>"

    # -- gates -------------------------------------------------------

    def apply_gate(self, gate: CliffordGate):
        for t in gate.targets:
            if not 0 <= t < self.n:
                raise DimensionError(f"gate target {t} out of range for {self.n} qubits")
        x, z, r = self.x, self.z, self.r
        if gate.kind == "H":
            (q,) = gate.targets
            r ^= x[:, q] & z[:, q]
            x[:, q], z[:, q] = z[:, q].copy(), x[:, q].copy()
        elif gate.kind == "S":
            (q,) = gate.targets
            r ^= x[:, q] & z[:, q]
            z[:, q] ^= x[:, q]
        elif gate.kind == "X":
            (q,) = gate.targets
            r ^= z[:, q]
        elif gate.kind == "Y":
            (q,) = gate.targets
            r ^= x[:, q] ^ z[:, q]
        elif gate.kind == "Z":
            (q,) = gate.targets
            r ^= x[:, q]
        elif gate.kind == "CNOT":
            c, t = gate.targets
            r ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
            x[:, t] ^= x[:, c]
            z[:, c] ^= z[:, t]
        elif gate.kind == "CZ":
            c, t = gate.targets
            r ^= x[:, c] & x[:, t] & (z[:, c] ^ z[:, t])
            z[:, t] ^= x[:, c]
            z[:, c] ^= x[:, t]
        self._zero_destab_signs()

    def apply_pauli(self, error: PauliOperator):
        """Conjugate by a Pauli: flip signs of anticommuting rows."""
        if error.n_qubits != self.n:
            raise DimensionError("error size does not match state")
        anti = (self.x @ error.z + self.z @ error.x) % 2
        self.r ^= anti.astype(np.uint8)
        self._zero_destab_signs()

    def _zero_destab_signs(self):
        self.r[: self.n] = 0

    # -- measurement -------------------------------------------------

    def _anticommute_mask(self, obs: PauliOperator) -> np.ndarray:
        return ((self.x @ obs.z + self.z @ obs.x) % 2).astype(np.uint8)

    def _mul_rows(self, dst: int, src: int):
        """row[dst] <- row[src] * row[dst], exact sign (rows must commute)."""
        t = int(_MUL_PHASE[2 * self.x[src] + self.z[src], 2 * self.x[dst] + self.z[dst]].sum())
        self.r[dst] ^= self.r[src] ^ ((t % 4) >> 1)
        self.x[dst] ^= self.x[src]
        self.z[dst] ^= self.z[src]

    def measure(self, observable: PauliOperator, coin) -> int:
        """Measure a Hermitian Pauli; returns +1 or -1.

        `coin` is a 0/1-returning callable consulted only when the outcome
        is genuinely random.
        """
        if observable.n_qubits != self.n:
            raise DimensionError("observable size does not match state")
        if not observable.is_hermitian:
            raise InvalidObservableError(f"observable {observable} is not Hermitian")
        n = self.n
        anti = self._anticommute_mask(observable)
        stab_anti = np.nonzero(anti[n:])[0]
        if stab_anti.size:
            p = n + int(stab_anti[0])
            for j in stab_anti[1:]:
                self._mul_rows(n + int(j), p)
            for i in np.nonzero(anti[:n])[0]:
                if int(i) != p - n:
                    self.x[i] ^= self.x[p]
                    self.z[i] ^= self.z[p]
            self.x[p - n] = self.x[p]
            self.z[p - n] = self.z[p]
            b = int(coin()) & 1
            self.x[p] = observable.x
            self.z[p] = observable.z
            self.r[p] = (observable.phase_exp // 2 + b) % 2
            self._zero_destab_signs()
            return 1 - 2 * b
        # deterministic: the signed observable is already in the group
        acc_x = np.zeros(n, np.uint8)
        acc_z = np.zeros(n, np.uint8)
        acc_r = 0
        for j in np.nonzero(anti[:n])[0]:
            s = n + int(j)
            t = int(_MUL_PHASE[2 * acc_x + acc_z, 2 * self.x[s] + self.z[s]].sum())
            acc_r ^= int(self.r[s]) ^ ((t % 4) >> 1)
            acc_x ^= self.x[s]
            acc_z ^= self.z[s]
        if not (np.array_equal(acc_x, observable.x) and np.array_equal(acc_z, observable.z)):
            raise AssertionError("destabilizer pairing is inconsistent")
        return 1 if acc_r == observable.phase_exp // 2 else -1

    # -- invariant check (used heavily by the tests) -------------------

    def check_invariants(self):
        n = self.n
        sx, sz = self.x[n:], self.z[n:]
        overlap = (sx @ sz.T + sz @ sx.T) % 2
        if np.any(overlap):
            raise AssertionError("stabilizer rows do not all commute")
        if _rank_gf2(np.concatenate([sx, sz], axis=1)) != n:
            raise AssertionError("stabilizer rows are dependent")
        dx, dz = self.x[:n], self.z[:n]
        pairing = (dx @ sz.T + dz @ sx.T) % 2
        if not np.array_equal(pairing, np.eye(n, dtype=pairing.dtype)):
            raise AssertionError("destabilizer pairing broken")


# -- functional wrappers ----------------------------------------------


def apply_gate(state: StabilizerTableau, gate: CliffordGate) -> StabilizerTableau:
    out = state.copy()
    out.apply_gate(gate)
    return out


def apply_pauli(state: StabilizerTableau, error: PauliOperator) -> StabilizerTableau:
    out = state.copy()
    out.apply_pauli(error)
    return out


def measure(state: StabilizerTableau, observable: PauliOperator, coin):
    out = state.copy()
    outcome = out.measure(observable, coin)
    return outcome, out


def canonicalize(state: StabilizerTableau) -> StabilizerTableau:
    """Unique generator set: full row reduction over the column order
    x_0..x_{n-1}, z_0..z_{n-1}, signs carried exactly.

    Stabilizer row operations are mirrored on the destabilizers so the
    pairing invariant survives (S_i *= S_j pairs with D_j ^= D_i).
    """
    t = state.copy()
    n = t.n
    rank = 0
    for kind, q in [("x", q) for q in range(n)] + [("z", q) for q in range(n)]:
        block = t.x if kind == "x" else t.z
        hits = [i for i in range(rank, n) if block[n + i, q]]
        if not hits:
            continue
        p = hits[0]
        if p != rank:
            for arr in (t.x, t.z):
                arr[[n + rank, n + p]] = arr[[n + p, n + rank]]
                arr[[rank, p]] = arr[[p, rank]]
            t.r[[n + rank, n + p]] = t.r[[n + p, n + rank]]
        for i in range(n):
            if i != rank and block[n + i, q]:
                t._mul_rows(n + i, n + rank)
                t.x[rank] ^= t.x[i]
                t.z[rank] ^= t.z[i]
        rank += 1
    t._zero_destab_signs()
    return t


def states_equal(a: StabilizerTableau, b: StabilizerTableau) -> bool:
    if a.n != b.n:
        raise DimensionError(f"state size mismatch: {a.n} vs {b.n}")
    ca, cb = canonicalize(a), canonicalize(b)
    n = a.n
    return (
        np.array_equal(ca.x[n:], cb.x[n:])
        and np.array_equal(ca.z[n:], cb.z[n:])
        and np.array_equal(ca.r[n:], cb.r[n:])
    )


def restrict(state: StabilizerTableau, keep) -> StabilizerTableau:
    """Reduced state on the kept qubits.

    Valid only when the state is a product across the cut (true after the
    complement has been measured out); raises ValueError otherwise.  Works
    by row-reducing with the complement's columns leading, so rows whose
    pivot lands in the kept block have no support outside it.
    """
    keep = list(keep)
    n = state.n
    drop = [q for q in range(n) if q not in keep]
    t = state.copy()
    rank = 0
    order = [(k, q) for q in drop for k in ("x", "z")] + [
        (k, q) for q in keep for k in ("x", "z")
    ]
    for kind, q in order:
        block = t.x if kind == "x" else t.z
        hits = [i for i in range(rank, n) if block[n + i, q]]
        if not hits:
            continue
        p = hits[0]
        if p != rank:
            for arr in (t.x, t.z):
                arr[[n + rank, n + p]] = arr[[n + p, n + rank]]
            t.r[[n + rank, n + p]] = t.r[[n + p, n + rank]]
        for i in range(n):
            if i != rank and block[n + i, q]:
                t._mul_rows(n + i, n + rank)
        rank += 1
    kept_rows = []
    for i in range(n):
        row = t._row(n + i)
        if all(row.x[q] == 0 and row.z[q] == 0 for q in drop):
            kept_rows.append(row.restrict(keep))
    if len(kept_rows) != len(keep):
        raise ValueError("state is entangled across the requested cut")
    return StabilizerTableau.from_stabilizers(kept_rows)
