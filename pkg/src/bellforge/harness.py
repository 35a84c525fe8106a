"""Seeded Monte Carlo sweeps producing plottable CSV rows.

Trial ``i`` draws from ``default_rng(seed ^ i)``, so a trial's result does not
depend on which worker runs it or in what order.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from bellforge import linalg
from bellforge.io import SweepSpec
from bellforge.protocol import concentrate, distill
from bellforge.states import (
    classify_input,
    concurrence_pure,
    random_ginibre_density,
    random_pure,
)

SWEEP_COLUMNS = (
    "epsilon", "trial", "steps", "sign", "p_cumulative", "fidelity", "infidelity", "failed_at_step",
)
SAMPLE_COLUMNS = (
    "trial", "concurrence", "class", "p_step1", "p_step2", "p_cumulative", "fidelity",
)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(seed ^ trial)


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _sign_label(sign: int) -> str:
    return "+" if sign > 0 else "-"


def sweep_trial(spec: SweepSpec, trial: int) -> list[tuple]:
    rng = trial_rng(spec.seed, trial)
    if spec.base_state == "haar-random":
        base = linalg.ket_bra(random_pure(rng))
    elif spec.base_state.is_pure:
        base = linalg.ket_bra(spec.base_state.data)
    else:
        base = spec.base_state.data
    if spec.noise == "white":
        rho_err = np.eye(4, dtype=complex) / 4.0
    elif spec.noise == "dephasing":
        rho_err = np.diag(np.diag(base).real).astype(complex)
    else:
        rho_err = random_ginibre_density(rng)
    rows = []
    for eps in spec.epsilons:
        rho = (1.0 - eps) * base + eps * rho_err
        trace = distill(rho, spec.sign, spec.steps)
        fid = trace.fidelity
        rows.append((
            eps, trial, spec.steps, _sign_label(spec.sign),
            trace.cumulative_success_probability,
            fid, 1.0 - fid,
            trace.failed_at_step if trace.failed_at_step is not None else 0,
        ))
    return rows


def sample_trial(seed: int, sign: int, trial: int) -> tuple:
    rng = trial_rng(seed, trial)
    s = random_pure(rng)
    cls = classify_input(s)
    trace = concentrate(s, sign)
    probs = trace.step_probabilities + [0.0] * (2 - len(trace.steps))
    return (
        trial, concurrence_pure(s), cls.input_class.value,
        probs[0], probs[1], trace.cumulative_success_probability, trace.fidelity,
    )


def _run(fn, n: int, workers: int) -> list:
    if workers <= 1:
        return [fn(i) for i in range(n)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps trial-index order regardless of completion order
        return list(pool.map(fn, range(n), chunksize=max(1, n // (4 * workers))))


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[tuple]:
    per_trial = _run(partial(sweep_trial, spec), spec.trials, workers)
    return [row for rows in per_trial for row in rows]


def run_sample(trials: int, seed: int, sign: int = 1, workers: int = 1) -> list[tuple]:
    return _run(partial(sample_trial, seed, sign), trials, workers)


def to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def loglog_slope(epsilons, infidelities) -> float:
    """Least-squares slope of ``log(infidelity)`` against ``log(epsilon)``."""
    x = np.log(np.asarray(epsilons, dtype=float))
    y = np.log(np.asarray(infidelities, dtype=float))
    if not np.all(np.isfinite(y)):
        return math.nan
    return float(np.polyfit(x, y, 1)[0])
