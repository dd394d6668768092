"""Signed n-qubit Pauli operators in binary symplectic form.

A Pauli is two bit vectors (X part, Z part) plus a global phase i**k.
The letter on qubit q is I, X, Z, or Y according to its (x, z) bit pair,
with Y meaning the Hermitian matrix i*X*Z.  Hermitian operators have
k in {0, 2}, i.e. an overall sign of +1 or -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DimensionError",
    "PauliOperator",
    "commutes",
    "multiply",
]


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


_PHASE_STR = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = "IZXY"  # indexed by 2x + z

# i-exponent picked up by letter(a) * letter(b), indexed [2x1+z1, 2x2+z2].
# The cycle X->Y->Z->X gains +i, the reverse direction -i.
_MUL_PHASE = np.array(
    [
        [0, 0, 0, 0],
        [0, 0, 1, 3],
        [0, 3, 0, 1],
        [0, 1, 3, 0],
    ],
    dtype=np.uint8,
)


def _as_bits(v, n_expected=None):
    a = np.asarray(v, dtype=np.uint8)
    if a.ndim != 1:
        raise ValueError("bit vector must be one-dimensional")
    if np.any(a > 1):
        raise ValueError("bit vector entries must be 0 or 1")
    if n_expected is not None and a.size != n_expected:
        raise DimensionError(f"expected {n_expected} qubits, got {a.size}")
    return a


@dataclass(eq=False)
class PauliOperator:
    """A Pauli operator i**phase_exp * (letter_1 x ... x letter_n)."""

    x: np.ndarray
    z: np.ndarray
    phase_exp: int = 0

    def __post_init__(self):
        self.x = _as_bits(self.x)
        self.z = _as_bits(self.z, self.x.size)
        self.phase_exp = int(self.phase_exp) % 4
        self.x.flags.writeable = False
        self.z.flags.writeable = False

    # -- constructors ------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliOperator":
        return cls(np.zeros(n_qubits, np.uint8), np.zeros(n_qubits, np.uint8))

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str) -> "PauliOperator":
        """The weight-1 operator with `letter` on one qubit."""
        if letter not in _LETTER_BITS:
            raise ValueError(f"unknown Pauli letter {letter!r}")
        x = np.zeros(n_qubits, np.uint8)
        z = np.zeros(n_qubits, np.uint8)
        x[qubit], z[qubit] = _LETTER_BITS[letter]
        return cls(x, z)

    @classmethod
    def from_string(cls, text: str) -> "PauliOperator":
        """Parse strings like "+XIZ", "-ZZ", "iY" or "XX" (implicit +)."""
        s = text.strip()
        phase = 0
        if s.startswith(("+", "-")):
            phase = 0 if s[0] == "+" else 2
            s = s[1:]
        if s.startswith(("i", "j")):
            phase += 1
            s = s[1:]
        if not s:
            raise ValueError(f"no Pauli letters in {text!r}")
        try:
            pairs = [_LETTER_BITS[c] for c in s]
        except KeyError as exc:
            raise ValueError(f"unknown Pauli letter {exc.args[0]!r} in {text!r}") from None
        x, z = zip(*pairs)
        return cls(np.array(x, np.uint8), np.array(z, np.uint8), phase)

    # -- views -------------------------------------------------------

    @property
    def n_qubits(self) -> int:
        return self.x.size

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    @property
    def is_identity(self) -> bool:
        return self.weight == 0 and self.phase_exp == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def support(self) -> tuple:
        return tuple(np.nonzero(self.x | self.z)[0].tolist())

    def letters(self) -> str:
        return "".join(_BITS_LETTER[2 * xb + zb] for xb, zb in zip(self.x, self.z))

    def __str__(self) -> str:
        return _PHASE_STR[self.phase_exp] + self.letters()

    def __repr__(self) -> str:
        return f"PauliOperator.from_string({str(self)!r})"

    def embed(self, n_total: int, positions) -> "PauliOperator":
        """Place this operator on the listed qubits of a larger system."""
        positions = list(positions)
        if len(positions) != self.n_qubits:
            raise DimensionError("position list does not match operator size")
        x = np.zeros(n_total, np.uint8)
        z = np.zeros(n_total, np.uint8)
        x[positions] = self.x
        z[positions] = self.z
        return PauliOperator(x, z, self.phase_exp)

    def restrict(self, positions) -> "PauliOperator":
        """Keep only the listed qubits; the rest must be identity."""
        positions = list(positions)
        mask = np.ones(self.n_qubits, bool)
        mask[positions] = False
        if np.any(self.x[mask]) or np.any(self.z[mask]):
            raise ValueError("operator has support outside the kept qubits")
        return PauliOperator(self.x[positions], self.z[positions], self.phase_exp)

    # -- algebra -----------------------------------------------------

    def commutes_with(self, other: "PauliOperator") -> bool:
        return commutes(self, other)

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (
            self.phase_exp == other.phase_exp
            and self.x.size == other.x.size
            and bool(np.array_equal(self.x, other.x))
            and bool(np.array_equal(self.z, other.z))
        )

    def __hash__(self) -> int:
        return hash((self.phase_exp, self.x.tobytes(), self.z.tobytes()))


def _check_sizes(a: PauliOperator, b: PauliOperator):
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"size mismatch: {a.n_qubits} vs {b.n_qubits} qubits")


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    """True iff the symplectic inner product of a and b is even."""
    _check_sizes(a, b)
    overlap = int(np.sum(a.x & b.z)) + int(np.sum(a.z & b.x))
    return overlap % 2 == 0


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """The Pauli product a*b with exact phase accumulation."""
    _check_sizes(a, b)
    t = int(_MUL_PHASE[2 * a.x + a.z, 2 * b.x + b.z].sum())
    return PauliOperator(a.x ^ b.x, a.z ^ b.z, (a.phase_exp + b.phase_exp + t) % 4)
