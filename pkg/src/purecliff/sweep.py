"""Parameter sweeps over the protocol catalog, emitting flat CSV.

A sweep scans one x axis (the network error rate itself, or the raw input
fidelity which is inverted to an error rate per protocol) against a grid of
gate/measurement error rates, running the Monte Carlo engine, the
first-order expansion, or both.  Rows come out in the order the spec lists
protocols and values, so a fixed seed gives a byte-identical document.

Each point gets its own derived seed (master seed + point index) so points
are independent streams no matter how the pool schedules them.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from purecliff.exact import invert_input_fidelity
from purecliff.montecarlo import _fmt, run_mc, worker_count
from purecliff.noise import NoiseModel
from purecliff.perturbative import expand
from purecliff.protocols import builtin

__all__ = ["SWEEP_HEADER", "SweepSpec", "run_sweep"]

X_AXES = ("eps", "input_fidelity")
ENGINES = ("mc", "perturbative", "both")

SWEEP_HEADER = (
    "protocol,engine,x_axis,x_value,eps,p_gate,p_meas,trials,seed,"
    "success,success_lo,success_hi,fidelity,fidelity_lo,fidelity_hi"
)


@dataclass(frozen=True)
class SweepSpec:
    protocols: tuple
    x_axis: str
    x_values: tuple
    p_gate_values: tuple = (0.0,)
    p_meas_values: tuple = (0.0,)
    trials: int = 100_000
    seed: int = 0
    engine: str = "mc"
    # Zip gate and measurement rates instead of taking their product
    # (both lists must then have equal length).
    pair_operational: bool = False
    noisy_prep: bool = False

    def __post_init__(self):
        object.__setattr__(self, "protocols", tuple(self.protocols))
        object.__setattr__(self, "x_values", tuple(float(v) for v in self.x_values))
        object.__setattr__(self, "p_gate_values", tuple(float(v) for v in self.p_gate_values))
        object.__setattr__(self, "p_meas_values", tuple(float(v) for v in self.p_meas_values))
        if self.x_axis not in X_AXES:
            raise ValueError(f"x_axis must be one of {X_AXES}, got {self.x_axis!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if self.trials <= 0:
            raise ValueError("trials must be positive")
        if self.pair_operational and len(self.p_gate_values) != len(self.p_meas_values):
            raise ValueError("paired sweeps need p_gate_values and p_meas_values of equal length")

    def operational_points(self) -> tuple:
        if self.pair_operational:
            return tuple(zip(self.p_gate_values, self.p_meas_values))
        return tuple((g, m) for g in self.p_gate_values for m in self.p_meas_values)


@dataclass(frozen=True)
class _Point:
    index: int
    protocol_name: str
    x_value: float
    eps: float
    p_gate: float
    p_meas: float

    @property
    def model(self) -> NoiseModel:
        return NoiseModel(eps=self.eps, p_gate=self.p_gate, p_meas=self.p_meas)


def _points(spec: SweepSpec) -> list:
    # Resolve every protocol before any simulation starts so a bad name
    # fails fast, and map input fidelity to eps once per purified state.
    protocols = {name: builtin(name) for name in spec.protocols}
    eps_cache = {}
    points = []
    index = 0
    for name in spec.protocols:
        purified = protocols[name].purified_state
        for x in spec.x_values:
            if spec.x_axis == "eps":
                eps = x
            else:
                key = (purified.name, x)
                if key not in eps_cache:
                    eps_cache[key] = invert_input_fidelity(purified, x)
                eps = eps_cache[key]
            for p_gate, p_meas in spec.operational_points():
                points.append(_Point(index, name, x, eps, p_gate, p_meas))
                index += 1
    return points


def _row(point: _Point, spec: SweepSpec, engine: str, values) -> str:
    success, success_lo, success_hi, fid, fid_lo, fid_hi = values
    cells = [
        point.protocol_name,
        engine,
        spec.x_axis,
        _fmt(point.x_value),
        _fmt(point.eps),
        _fmt(point.p_gate),
        _fmt(point.p_meas),
        str(spec.trials),
        str(spec.seed + point.index),
        _fmt(success),
        _fmt(success_lo),
        _fmt(success_hi),
        _fmt(fid),
        _fmt(fid_lo),
        _fmt(fid_hi),
    ]
    return ",".join(cells)


def run_sweep(spec: SweepSpec) -> str:
    """Run the sweep and return the whole CSV document as text."""
    points = _points(spec)
    want_mc = spec.engine in ("mc", "both")
    want_pert = spec.engine in ("perturbative", "both")

    mc_values = {}
    if want_mc:
        def one(point: _Point):
            report = run_mc(
                builtin(point.protocol_name),
                point.model,
                trials=spec.trials,
                seed=spec.seed + point.index,
                noisy_prep=spec.noisy_prep,
            )
            s_lo, s_hi = report.success_interval
            f_int = report.fidelity_interval or (None, None)
            return (report.success, s_lo, s_hi, report.fidelity, f_int[0], f_int[1])

        workers = min(worker_count(), max(len(points), 1))
        if workers <= 1 or len(points) <= 1:
            results = [one(p) for p in points]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(one, points))
        mc_values = {p.index: r for p, r in zip(points, results)}

    pert_cache = {}
    if want_pert:
        # Expand once per protocol with every channel active; the rational
        # coefficients do not depend on the rates, and evaluating the full
        # polynomial at a point with some rate zero drops that term anyway.
        full = NoiseModel(eps=1e-3, p_gate=1e-3, p_meas=1e-3)
        for name in spec.protocols:
            pert_cache[name] = expand(builtin(name), full, noisy_prep=spec.noisy_prep)

    lines = [SWEEP_HEADER]
    for point in points:
        if want_mc:
            lines.append(_row(point, spec, "mc", mc_values[point.index]))
        if want_pert:
            report = pert_cache[point.protocol_name]
            s = float(report.success.evaluate(point.model))
            f = float(report.fidelity.evaluate(point.model))
            lines.append(_row(point, spec, "perturbative", (s, s, s, f, f, f)))
    return "\n".join(lines) + "\n"
