"""First-order branch expansion of a purification circuit.

To first order in the noise parameters a run is either fault-free or hit by
exactly one fault alternative at one site.  Executing every such branch and
classifying it (detected by a parity check / undetected but harmless /
undetected and harmful) gives the acceptance probability and the output
fidelity as degree-one polynomials with exact rational coefficients:

    success  = 1 - sum of detected branch weights
    fidelity = 1 - sum of undetected harmful branch weights

The classification must not depend on measurement randomness.  Outcome bits
are affine GF(2) functions of the coin bits, and a Pauli fault shifts only
the affine offset, so probing the coin vectors 0, e_1..e_k, and 1 decides
coin independence exactly; a disagreement raises AmbiguityError.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from purecliff.circuit import probe_runs
from purecliff.noise import PARAMS, NoiseModel, enumerate_fault_sites

__all__ = [
    "AmbiguityError",
    "ExpansionReport",
    "LinearPolynomial",
    "cross_validate",
    "expand",
    "expansion_csv",
]


class AmbiguityError(RuntimeError):
    """A branch's classification depends on measurement coin flips."""


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class LinearPolynomial:
    """constant + sum of coeff * parameter, with exact Fraction coefficients."""

    constant: Fraction = Fraction(0)
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        clean = {
            p: Fraction(c) for p, c in self.coefficients.items() if Fraction(c) != 0
        }
        unknown = set(clean) - set(PARAMS)
        if unknown:
            raise ValueError(f"unknown parameters {sorted(unknown)}")
        object.__setattr__(self, "coefficients", clean)

    def coefficient(self, param: str) -> Fraction:
        return self.coefficients.get(param, Fraction(0))

    def evaluate(self, model: NoiseModel) -> float:
        return float(self.constant) + sum(
            float(c) * model.value(p) for p, c in self.coefficients.items()
        )

    def __eq__(self, other):
        if not isinstance(other, LinearPolynomial):
            return NotImplemented
        return (
            self.constant == other.constant and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.constant, tuple(sorted(self.coefficients.items()))))

    def __str__(self):
        parts = []
        if self.constant != 0:
            parts.append(_fmt(self.constant))
        for param in PARAMS:
            c = self.coefficient(param)
            if c == 0:
                continue
            term = param if abs(c) == 1 else f"{_fmt(abs(c))}*{param}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts) if parts else "0"


DETECTED = "detected"
HARMLESS = "undetected_harmless"
HARMFUL = "undetected_harmful"


@dataclass(frozen=True)
class ExpansionReport:
    protocol: str
    success: LinearPolynomial
    fidelity: LinearPolynomial
    branch_count: int
    classified_faults: dict

    def summary(self) -> str:
        return (
            f"success = {self.success}\n"
            f"fidelity = {self.fidelity}\n"
            f"branches = {self.branch_count}"
        )


def _classify(circuit, site, alternative) -> str:
    runs = probe_runs(circuit, {site: alternative})
    flags = {(r.passed, r.purified_equals_target) for r in runs}
    if len(flags) != 1:
        raise AmbiguityError(
            f"classification of {alternative.describe()} at {site.describe()} "
            "depends on measurement outcomes"
        )
    passed, match = flags.pop()
    if not passed:
        return DETECTED
    return HARMLESS if match else HARMFUL


def expand(protocol, model: NoiseModel, noisy_prep: bool = False) -> ExpansionReport:
    """Classify every first-order fault branch of a built-in protocol."""
    circuit = protocol.circuit
    base = probe_runs(circuit)
    if any(not (r.passed and r.purified_equals_target) for r in base):
        raise AmbiguityError(f"noiseless run of {protocol.name} is not clean")

    sites = enumerate_fault_sites(circuit, model, noisy_prep=noisy_prep)
    classified = {DETECTED: [], HARMLESS: [], HARMFUL: []}
    branches = 1
    for site in sites:
        for alt in site.alternatives:
            branches += 1
            classified[_classify(circuit, site, alt)].append((site, alt))

    def one_minus(entries):
        coeffs = {}
        for _, alt in entries:
            coeffs[alt.param] = coeffs.get(alt.param, Fraction(0)) + alt.coeff
        return LinearPolynomial(Fraction(1), {p: -c for p, c in coeffs.items()})

    return ExpansionReport(
        protocol=protocol.name,
        success=one_minus(classified[DETECTED]),
        fidelity=one_minus(classified[HARMFUL]),
        branch_count=branches,
        classified_faults=classified,
    )


def expansion_csv(reports) -> str:
    """One row per (protocol, quantity) with the polynomial coefficients."""
    lines = ["protocol,parameter,constant,coeff_eps,coeff_p_gate,coeff_p_meas"]
    for report in reports:
        for quantity, poly in (("success", report.success), ("fidelity", report.fidelity)):
            cells = [report.protocol, quantity, _fmt(poly.constant)]
            cells += [_fmt(poly.coefficient(p)) for p in PARAMS]
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def cross_validate(
    protocol,
    model: NoiseModel,
    trials: int,
    seed: int,
    allowance: float = 50.0,
) -> dict:
    """Check the expansion against a Monte Carlo run at the same parameters.

    Returns per-quantity dicts with the polynomial value, the estimate, and
    a flag raised when they differ by more than three binomial sigmas plus
    an `allowance * scale**2` budget for genuine second-order terms, where
    scale is the largest noise parameter.
    """
    from purecliff.montecarlo import run_mc

    report = expand(protocol, model)
    mc = run_mc(protocol, model, trials, seed)
    scale = max(model.eps, model.p_gate, model.p_meas)
    budget = allowance * scale * scale
    out = {}
    for quantity, poly, estimate, count in (
        ("success", report.success, mc.success, trials),
        ("fidelity", report.fidelity, mc.fidelity, mc.passes),
    ):
        predicted = poly.evaluate(model)
        if estimate is None or count == 0:
            out[quantity] = {
                "predicted": predicted,
                "estimate": None,
                "flagged": True,
            }
            continue
        sigma = (max(estimate * (1.0 - estimate), 1e-12) / count) ** 0.5
        out[quantity] = {
            "predicted": predicted,
            "estimate": estimate,
            "flagged": abs(estimate - predicted) > 3.0 * sigma + budget,
        }
    return out
