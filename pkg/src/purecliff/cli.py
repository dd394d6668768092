"""Command-line front end.

Subcommands: simulate (one Monte Carlo point), expand (first-order
polynomials), sweep (CSV scan over a parameter axis), export-circuit /
import-circuit, list-protocols, validate.

Exit codes: 0 success, 1 catalog or validation error, 2 I/O or parse
error, 3 cross-validation mismatch between engines.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from purecliff.circuit import validate
from purecliff.circuit_io import CircuitParseError, deserialize, serialize
from purecliff.exact import invert_input_fidelity
from purecliff.montecarlo import mc_csv, run_mc
from purecliff.noise import NoiseModel
from purecliff.perturbative import cross_validate, expand, expansion_csv
from purecliff.protocols import PROTOCOL_NAMES, CatalogError, ConstructionError, builtin
from purecliff.sweep import SweepSpec, run_sweep

__all__ = ["main"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_CROSS_VALIDATION = 3


def _value_list(text: str) -> tuple:
    """Comma-separated floats; a start:stop:count token expands linearly."""
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            parts = token.split(":")
            if len(parts) != 3:
                raise argparse.ArgumentTypeError(
                    f"range takes start:stop:count, got {token!r}"
                )
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            values.extend(float(v) for v in np.linspace(start, stop, count))
        else:
            values.append(float(token))
    return tuple(values)


def _write(text: str, out: str) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _model(args, eps: float) -> NoiseModel:
    return NoiseModel(eps=eps, p_gate=args.p_gate, p_meas=args.p_meas)


def _resolve_eps(args, protocol) -> float:
    if args.f_in is not None:
        return invert_input_fidelity(protocol.purified_state, args.f_in)
    if args.eps is None:
        raise ValueError("one of --eps or --f-in is required")
    return args.eps


def _cmd_simulate(args) -> int:
    protocol = builtin(args.protocol)
    eps = _resolve_eps(args, protocol)
    model = _model(args, eps)
    report = run_mc(
        protocol, model, trials=args.trials, seed=args.seed, noisy_prep=args.noisy_prep
    )
    _write(mc_csv([report]), args.out)
    if args.engine == "mc":
        return EXIT_OK
    verdicts = cross_validate(protocol, model, args.trials, args.seed)
    flagged = False
    for quantity, row in verdicts.items():
        status = "FLAGGED" if row["flagged"] else "ok"
        flagged = flagged or row["flagged"]
        est = "none" if row["estimate"] is None else "%.6g" % row["estimate"]
        print(
            f"cross-validation {quantity}: predicted={row['predicted']:.6g} "
            f"estimate={est} {status}",
            file=sys.stderr,
        )
    return EXIT_CROSS_VALIDATION if flagged else EXIT_OK


def _cmd_expand(args) -> int:
    names = args.protocol or list(PROTOCOL_NAMES)
    model = _model(args, args.eps if args.eps is not None else 0.01)
    reports = [
        expand(builtin(name), model, noisy_prep=args.noisy_prep) for name in names
    ]
    if args.csv:
        _write(expansion_csv(reports), args.out)
    else:
        blocks = [f"{r.protocol}:\n{r.summary()}" for r in reports]
        _write("\n\n".join(blocks) + "\n", args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if (args.eps is None) == (args.f_in is None):
        raise ValueError("exactly one of --eps or --f-in sets the sweep axis")
    if args.eps is not None:
        x_axis, x_values = "eps", args.eps
    else:
        x_axis, x_values = "input_fidelity", args.f_in
    spec = SweepSpec(
        protocols=tuple(args.protocol),
        x_axis=x_axis,
        x_values=x_values,
        p_gate_values=args.p_gate,
        p_meas_values=args.p_meas,
        trials=args.trials,
        seed=args.seed,
        engine=args.engine,
        pair_operational=args.pair_operational,
        noisy_prep=args.noisy_prep,
    )
    _write(run_sweep(spec), args.out)
    return EXIT_OK


def _cmd_export(args) -> int:
    protocol = builtin(args.protocol)
    _write(serialize(protocol.circuit), args.out)
    return EXIT_OK


def _cmd_import(args) -> int:
    with open(args.file) as fh:
        circuit = deserialize(fh.read())
    diagnostics = validate(circuit)
    regs = ",".join(r.name for r in circuit.registers)
    print(f"parsed {args.file}: {circuit.n_qubits} qubits, registers {regs}, "
          f"{len(circuit.ops)} ops")
    if diagnostics:
        for line in diagnostics:
            print(f"  {line}", file=sys.stderr)
        return EXIT_VALIDATION
    print("validation clean")
    return EXIT_OK


def _cmd_list(args) -> int:
    lines = []
    for name in PROTOCOL_NAMES:
        p = builtin(name)
        sac = ",".join(s.name for s in p.sacrificial_states) or "-"
        lines.append(f"{name}\tpurifies={p.purified_state.name}\tsacrifices={sac}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    if args.protocol:
        circuit = builtin(args.protocol).circuit
        source = args.protocol
    else:
        with open(args.file) as fh:
            circuit = deserialize(fh.read())
        source = args.file
    diagnostics = validate(circuit)
    if diagnostics:
        for line in diagnostics:
            print(f"{source}: {line}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"{source}: clean")
    return EXIT_OK


def _add_model_flags(parser, lists=False):
    kind = _value_list if lists else float
    parser.add_argument("--eps", type=kind, default=None,
                        help="network depolarization rate per transmitted qubit")
    parser.add_argument("--f-in", dest="f_in", type=kind, default=None,
                        help="raw input fidelity, inverted to eps per protocol")
    parser.add_argument("--p-gate", dest="p_gate", type=kind,
                        default=(0.0,) if lists else 0.0,
                        help="two-design gate depolarization rate")
    parser.add_argument("--p-meas", dest="p_meas", type=kind,
                        default=(0.0,) if lists else 0.0,
                        help="measurement bit-flip rate")
    parser.add_argument("--noisy-prep", action="store_true",
                        help="also place gate faults on state preparation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="purecliff",
        description="Simulate and analyze entanglement purification circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Monte Carlo estimate at one parameter point")
    p.add_argument("--protocol", required=True)
    _add_model_flags(p)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", choices=("mc", "both"), default="mc",
                   help="'both' also cross-checks the first-order prediction")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("expand", help="first-order success/fidelity polynomials")
    p.add_argument("--protocol", action="append",
                   help="repeatable; default is every protocol")
    _add_model_flags(p)
    p.add_argument("--csv", action="store_true", help="CSV instead of text blocks")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("sweep", help="scan an axis, write CSV")
    p.add_argument("--protocol", action="append", required=True,
                   help="repeatable protocol name")
    _add_model_flags(p, lists=True)
    p.add_argument("--pair-operational", action="store_true",
                   help="zip --p-gate with --p-meas instead of the product")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", choices=("mc", "perturbative", "both"), default="mc")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("export-circuit", help="write a catalog circuit to text")
    p.add_argument("--protocol", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("import-circuit", help="parse and validate a circuit file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_import)

    p = sub.add_parser("list-protocols", help="catalog names and state kinds")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_list)

    p = sub.add_parser("validate", help="structural and behavioral diagnostics")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--protocol")
    group.add_argument("--file")
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CircuitParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CatalogError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
