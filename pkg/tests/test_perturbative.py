"""First-order expansion: polynomial table, CSV, ambiguity, MC cross-check.

Every coefficient below was verified against per-site exact enumeration
(singleton-site pattern sums are exactly linear in the site's rate), and the
network-noise rows additionally against hand-counted anticommutation sets.
"""

from fractions import Fraction
from types import SimpleNamespace

import pytest

from purecliff.circuit import (
    Circuit,
    Gate,
    Measure,
    ParityCheck,
    Register,
)
from purecliff.noise import NoiseModel, enumerate_fault_sites
from purecliff.perturbative import (
    DETECTED,
    HARMFUL,
    HARMLESS,
    AmbiguityError,
    LinearPolynomial,
    _classify,
    cross_validate,
    expand,
    expansion_csv,
)
from purecliff.protocols import PROTOCOL_NAMES, builtin
from purecliff.tableau import CliffordGate, StabilizerTableau

EPS_ONLY = NoiseModel(eps=1e-3)
FULL = NoiseModel(eps=1e-3, p_gate=1e-3, p_meas=1e-3)

# protocol -> (success, fidelity) under network noise alone, then under the
# full model, then branch counts for each. Coefficients are rate independent;
# the models above only select which channels contribute terms.
EXPANSIONS = {
    "raw-ghz3": ("1", "1 - 6*eps", "1", "1 - 6*eps", 7, 7),
    "raw-ghz4": ("1", "1 - 9*eps", "1", "1 - 9*eps", 10, 10),
    "raw-cluster4": ("1", "1 - 9*eps", "1", "1 - 9*eps", 10, 10),
    "ghz3-p1": (
        "1 - 8*eps", "1 - 4*eps",
        "1 - 8*eps - 8/5*p_gate - 3*p_meas", "1 - 4*eps - 6/5*p_gate",
        13, 61,
    ),
    "ghz3-p2": (
        "1 - 8*eps", "1 - 4*eps",
        "1 - 8*eps - 8/5*p_gate - 3*p_meas", "1 - 4*eps - 6/5*p_gate",
        13, 61,
    ),
    "ghz3-p1p2": (
        "1 - 16*eps", "1 - 2*eps",
        "1 - 16*eps - 4*p_gate - 6*p_meas", "1 - 2*eps - 8/5*p_gate",
        19, 115,
    ),
    "ghz3-het": (
        "1 - 10*eps", "1 - 2*eps",
        "1 - 10*eps - 16/5*p_gate - 4*p_meas", "1 - 2*eps - 2/5*p_gate",
        13, 77,
    ),
    "ghz4-p1": (
        "1 - 12*eps", "1 - 6*eps",
        "1 - 12*eps - 32/15*p_gate - 4*p_meas", "1 - 6*eps - 8/5*p_gate",
        19, 83,
    ),
    "ghz4-p2": (
        "1 - 12*eps", "1 - 6*eps",
        "1 - 12*eps - 32/15*p_gate - 4*p_meas", "1 - 6*eps - 8/5*p_gate",
        19, 83,
    ),
    "ghz4-p1p2": (
        "1 - 24*eps", "1 - 3*eps",
        "1 - 24*eps - 16/3*p_gate - 8*p_meas", "1 - 3*eps - 32/15*p_gate",
        28, 156,
    ),
    "ghz4-het": (
        "1 - 15*eps", "1 - 3*eps",
        "1 - 15*eps - 16/3*p_gate - 6*p_meas", "1 - 3*eps - 17/15*p_gate",
        19, 130,
    ),
    "cluster4-p1": (
        "1 - 12*eps", "1 - 6*eps",
        "1 - 12*eps - 32/15*p_gate - 4*p_meas", "1 - 6*eps - 8/5*p_gate",
        19, 83,
    ),
    "cluster4-p2": (
        "1 - 12*eps", "1 - 6*eps",
        "1 - 12*eps - 32/15*p_gate - 4*p_meas", "1 - 6*eps - 8/5*p_gate",
        19, 83,
    ),
    "cluster4-p1p2": (
        "1 - 24*eps", "1 - 3*eps",
        "1 - 24*eps - 16/3*p_gate - 8*p_meas", "1 - 3*eps - 32/15*p_gate",
        28, 156,
    ),
    "cluster4-het": (
        "1 - 20*eps", "1 - eps",
        "1 - 20*eps - 16/3*p_gate - 7*p_meas", "1 - eps - 16/15*p_gate",
        22, 134,
    ),
}


class TestLinearPolynomial:
    def test_render_integer_coefficient(self):
        p = LinearPolynomial(Fraction(1), {"eps": Fraction(-10)})
        assert str(p) == "1 - 10*eps"

    def test_render_fraction_coefficient(self):
        p = LinearPolynomial(Fraction(1), {"p_gate": Fraction(-16, 3)})
        assert str(p) == "1 - 16/3*p_gate"

    def test_render_unit_coefficient_drops_star(self):
        assert str(LinearPolynomial(Fraction(1), {"eps": Fraction(-1)})) == "1 - eps"
        assert str(LinearPolynomial(Fraction(0), {"eps": Fraction(1)})) == "eps"
        assert str(LinearPolynomial(Fraction(0), {"eps": Fraction(-1)})) == "-eps"

    def test_render_zero_and_constant(self):
        assert str(LinearPolynomial()) == "0"
        assert str(LinearPolynomial(Fraction(3, 4))) == "3/4"

    def test_render_parameter_order_is_fixed(self):
        p = LinearPolynomial(
            Fraction(1),
            {"p_meas": Fraction(-6), "eps": Fraction(-15), "p_gate": Fraction(-16, 3)},
        )
        assert str(p) == "1 - 15*eps - 16/3*p_gate - 6*p_meas"

    def test_evaluate(self):
        p = LinearPolynomial(Fraction(1), {"eps": Fraction(-8), "p_meas": Fraction(-3)})
        model = NoiseModel(eps=0.01, p_gate=0.5, p_meas=0.002)
        assert p.evaluate(model) == pytest.approx(1 - 0.08 - 0.006)

    def test_zero_coefficients_are_dropped(self):
        a = LinearPolynomial(Fraction(1), {"eps": Fraction(0)})
        b = LinearPolynomial(Fraction(1))
        assert a == b and hash(a) == hash(b)
        assert a.coefficient("eps") == 0

    def test_unknown_parameter_rejected(self):
        with pytest.raises(ValueError, match="unknown parameters"):
            LinearPolynomial(Fraction(1), {"gamma": Fraction(1)})

    def test_equality_and_hash(self):
        a = LinearPolynomial(Fraction(1), {"eps": Fraction(-2)})
        b = LinearPolynomial(Fraction(1), {"eps": Fraction(-2)})
        assert a == b and hash(a) == hash(b)
        assert a != LinearPolynomial(Fraction(1), {"eps": Fraction(-3)})
        assert a.__eq__(42) is NotImplemented


class TestExpandTable:
    @pytest.mark.parametrize("name", sorted(EXPANSIONS))
    def test_network_noise_polynomials(self, name):
        report = expand(builtin(name), EPS_ONLY)
        s, f, _, _, branches, _ = EXPANSIONS[name]
        assert str(report.success) == s
        assert str(report.fidelity) == f
        assert report.branch_count == branches

    @pytest.mark.parametrize("name", sorted(EXPANSIONS))
    def test_full_model_polynomials(self, name):
        report = expand(builtin(name), FULL)
        _, _, s, f, _, branches = EXPANSIONS[name]
        assert str(report.success) == s
        assert str(report.fidelity) == f
        assert report.branch_count == branches

    def test_covers_whole_catalog(self):
        assert set(EXPANSIONS) == set(PROTOCOL_NAMES)

    def test_coefficients_do_not_depend_on_rates(self):
        a = expand(builtin("ghz4-het"), FULL)
        b = expand(builtin("ghz4-het"), NoiseModel(eps=0.05, p_gate=0.01, p_meas=0.2))
        assert a.success == b.success and a.fidelity == b.fidelity

    def test_zero_rate_channels_contribute_no_terms(self):
        report = expand(builtin("ghz4-het"), EPS_ONLY)
        assert set(report.success.coefficients) == {"eps"}
        assert set(report.fidelity.coefficients) == {"eps"}

    def test_classified_fault_counts(self):
        # ghz3-het: 4 travelling qubits, 12 single-Pauli branches; the two
        # kept-qubit Z flips commute with both checks and corrupt the state
        report = expand(builtin("ghz3-het"), EPS_ONLY)
        counts = {k: len(v) for k, v in report.classified_faults.items()}
        assert counts == {DETECTED: 10, HARMLESS: 0, HARMFUL: 2}

        report = expand(builtin("ghz4-het"), EPS_ONLY)
        counts = {k: len(v) for k, v in report.classified_faults.items()}
        assert counts == {DETECTED: 15, HARMLESS: 0, HARMFUL: 3}

    def test_branches_count_every_alternative_once(self):
        report = expand(builtin("cluster4-p1p2"), FULL)
        classified = sum(len(v) for v in report.classified_faults.values())
        assert report.branch_count == 1 + classified

    def test_summary_text(self):
        report = expand(builtin("cluster4-het"), EPS_ONLY)
        assert report.summary() == (
            "success = 1 - 20*eps\nfidelity = 1 - eps\nbranches = 22"
        )

    def test_noisy_prep_adds_gate_terms(self):
        off = expand(builtin("ghz3-p1"), FULL)
        on = expand(builtin("ghz3-p1"), FULL, noisy_prep=True)
        assert on.success.coefficient("p_gate") < off.success.coefficient("p_gate")
        assert on.fidelity.coefficient("p_gate") < off.fidelity.coefficient("p_gate")
        assert on.branch_count > off.branch_count
        # eps terms are untouched: prep happens before transmission
        assert on.success.coefficient("eps") == off.success.coefficient("eps")

    def test_raw_prep_faults_are_never_detected(self):
        # no checks to catch them, so success stays flat and fidelity drops
        report = expand(builtin("raw-ghz3"), NoiseModel(p_gate=1e-3), noisy_prep=True)
        assert str(report.success) == "1"
        assert str(report.fidelity) == "1 - 12/5*p_gate"
        assert report.branch_count == 34


class TestExpansionCsv:
    def test_header_and_rows(self):
        reports = [
            expand(builtin("cluster4-het"), EPS_ONLY),
            expand(builtin("ghz4-het"), FULL),
        ]
        lines = expansion_csv(reports).splitlines()
        assert lines[0] == "protocol,parameter,constant,coeff_eps,coeff_p_gate,coeff_p_meas"
        assert lines[1] == "cluster4-het,success,1,-20,0,0"
        assert lines[2] == "cluster4-het,fidelity,1,-1,0,0"
        assert lines[3] == "ghz4-het,success,1,-15,-16/3,-6"
        assert lines[4] == "ghz4-het,fidelity,1,-3,-17/15,0"

    def test_trailing_newline_and_row_count(self):
        text = expansion_csv([expand(builtin("raw-ghz3"), EPS_ONLY)])
        assert text.endswith("\n")
        assert len(text.splitlines()) == 3


def coin_dependent_circuit():
    """Measures one half of a fresh pair in Z: the check reads a fair coin."""
    regs = [
        Register("A", "purified", 2, 0),
        Register("p", "sacrificial", 2, 0),
    ]
    target = StabilizerTableau.from_strings(["+XX", "+ZZ"])
    ops = [
        Gate(CliffordGate("H", (0,)), is_prep=True),
        Gate(CliffordGate("CNOT", (0, 1)), is_prep=True),
        Gate(CliffordGate("H", (2,)), is_prep=True),
        Gate(CliffordGate("CNOT", (2, 3)), is_prep=True),
        Measure(2, "Z", "m0"),
        Measure(3, "X", "m1"),
        ParityCheck(("m0",), "even"),
    ]
    initials = [StabilizerTableau.zero_state(2), StabilizerTableau.zero_state(2)]
    return Circuit(regs, initials, target, ops)


class TestAmbiguity:
    def test_expand_rejects_unclean_noiseless_run(self):
        fake = SimpleNamespace(name="coin-check", circuit=coin_dependent_circuit())
        with pytest.raises(AmbiguityError, match="not clean"):
            expand(fake, NoiseModel(p_meas=1e-3))

    def test_classify_reports_coin_dependence(self):
        circuit = coin_dependent_circuit()
        sites = enumerate_fault_sites(circuit, NoiseModel(p_meas=1e-3))
        site = sites[0]
        with pytest.raises(AmbiguityError, match="depends on measurement outcomes"):
            _classify(circuit, site, site.alternatives[0])

    def test_builtins_never_ambiguous(self):
        for name in PROTOCOL_NAMES:
            expand(builtin(name), FULL)  # raises if any branch is ambiguous


class TestCrossValidate:
    def test_agreement_at_small_rate(self):
        out = cross_validate(builtin("ghz3-p1"), NoiseModel(eps=0.004), 200_000, seed=7)
        assert not out["success"]["flagged"]
        assert not out["fidelity"]["flagged"]
        assert out["success"]["predicted"] == pytest.approx(1 - 8 * 0.004)

    def test_zero_allowance_flags_second_order(self):
        # exact success at eps = 0.02 sits 0.0123 above the linear prediction,
        # far outside 3 sigma at this trial count
        out = cross_validate(
            builtin("ghz3-p1"), NoiseModel(eps=0.02), 200_000, seed=7, allowance=0.0
        )
        assert out["success"]["flagged"]

    def test_allowance_absorbs_second_order(self):
        out = cross_validate(builtin("ghz3-p1"), NoiseModel(eps=0.02), 200_000, seed=7)
        assert not out["success"]["flagged"]
        assert not out["fidelity"]["flagged"]
