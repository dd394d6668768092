"""Monte Carlo estimation of acceptance probability and output fidelity.

Trials are processed in fixed chunks of 65536, each with its own child
seed spawned from the master seed, and chunk results are combined by index,
so the numbers are identical for any worker count.  The worker pool size
comes from the PURECLIFF_THREADS environment variable (unset or 0 = one
worker per core).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from purecliff.frames import CHUNK_TRIALS, compile_plan, run_batch, sample_site_choices
from purecliff.noise import NoiseModel

__all__ = ["MonteCarloReport", "mc_csv", "run_mc", "wilson_interval", "worker_count"]

Z_95 = 1.959963984540054

CSV_HEADER = (
    "protocol,eps,p_gate,p_meas,trials,seed,"
    "success,success_lo,success_hi,fidelity,fidelity_lo,fidelity_hi"
)


def worker_count() -> int:
    raw = os.environ.get("PURECLIFF_THREADS", "0")
    try:
        requested = int(raw)
    except ValueError:
        requested = 0
    return requested if requested > 0 else (os.cpu_count() or 1)


def wilson_interval(successes: int, total: int, z: float = Z_95) -> tuple:
    """Wilson score interval for a binomial proportion."""
    if total == 0:
        return 0.0, 1.0
    p = successes / total
    denom = 1.0 + z * z / total
    center = (p + z * z / (2 * total)) / denom
    half = (z / denom) * ((p * (1.0 - p) / total + z * z / (4 * total * total)) ** 0.5)
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class MonteCarloReport:
    protocol: str
    model: NoiseModel
    trials: int
    seed: int
    passes: int
    goods: int

    @property
    def success(self) -> float:
        return self.passes / self.trials if self.trials else 0.0

    @property
    def success_interval(self) -> tuple:
        return wilson_interval(self.passes, self.trials)

    @property
    def fidelity(self):
        """Fraction of accepted runs whose kept state is the target; None
        when nothing was accepted."""
        if self.passes == 0:
            return None
        return self.goods / self.passes

    @property
    def fidelity_interval(self) -> tuple:
        if self.passes == 0:
            return None
        return wilson_interval(self.goods, self.passes)


def _fmt(value) -> str:
    if value is None:
        return "nan"
    return "%.12g" % value


def mc_csv(reports) -> str:
    lines = [CSV_HEADER]
    for r in reports:
        f_int = r.fidelity_interval or (None, None)
        cells = [
            r.protocol,
            _fmt(r.model.eps),
            _fmt(r.model.p_gate),
            _fmt(r.model.p_meas),
            str(r.trials),
            str(r.seed),
            _fmt(r.success),
            _fmt(r.success_interval[0]),
            _fmt(r.success_interval[1]),
            _fmt(r.fidelity),
            _fmt(f_int[0]),
            _fmt(f_int[1]),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _chunk_sizes(trials: int):
    sizes = []
    remaining = trials
    while remaining > 0:
        sizes.append(min(CHUNK_TRIALS, remaining))
        remaining -= CHUNK_TRIALS
    return sizes


def run_mc(
    protocol,
    model: NoiseModel,
    trials: int,
    seed: int,
    noisy_prep: bool = False,
) -> MonteCarloReport:
    """Estimate acceptance and fidelity over `trials` noisy runs."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    plan = compile_plan(protocol.circuit, model, noisy_prep=noisy_prep)
    sizes = _chunk_sizes(trials)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def one(index: int) -> tuple:
        rng = np.random.default_rng(children[index])
        valid = sizes[index]
        batch = ((valid + 63) // 64) * 64
        choices = sample_site_choices(plan, rng, batch)
        passes, goods, _, _ = run_batch(plan, choices, batch, valid=valid)
        return passes, goods

    workers = min(worker_count(), len(sizes))
    if workers <= 1:
        results = [one(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(len(sizes))))

    passes = sum(r[0] for r in results)
    goods = sum(r[1] for r in results)
    return MonteCarloReport(
        protocol=protocol.name,
        model=model,
        trials=trials,
        seed=seed,
        passes=passes,
        goods=goods,
    )
