"""Monte Carlo benchmark engine: paired trials, sweeps, and summaries.

A sweep fixes a base configuration, varies exactly one quantity (ports per
antenna, average SNR in dB, or the normalized antenna size W) over an
increasing list of values, and runs `trials` independent channel draws per
value. Within one (point, trial) every requested algorithm sees the same
channel realization (paired comparison; this only reduces the variance of
algorithm contrasts and cannot bias the means).

Seed derivation (documented so records are stable and reproducible): the
channel seed of (point, trial) is the first 64-bit word of
SeedSequence((master_seed, 0, point_key, trial)); the random-baseline seed
uses stream tag 1 instead of 0. point_key is the point index, except for
SNR sweeps where it is 0: the channel law does not depend on the SNR, so
all SNR points of a trial share one realization, making per-trial capacity
curves monotone in the SNR by construction.

Timing: records carry wall_time_ms = 0.0 unless measure_time=True is
requested. Measured times would differ between reruns, and the records of
a (SweepSpec, master_seed) pair are required to be byte-reproducible, so
timing is an opt-in diagnostic.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .channel import FluidMimoConfig, generate_channel
from .selection import (
    ALGORITHMS,
    DEFAULT_EXHAUSTIVE_CAP,
    CombinationCapError,
    combination_count,
    conventional_mimo,
    exhaustive_search,
    jcr_ao,
    jcr_res,
    random_selection,
)

SWEEP_VARIABLES = ("ports", "snr_db", "w")


class SweepSpecError(ValueError):
    """Invalid sweep specification; message names the offending field."""


@dataclass(frozen=True)
class SweepSpec:
    """One benchmark run: base config, swept variable, values, and budget."""

    base: FluidMimoConfig
    variable: str
    values: tuple
    trials: int = 100
    algorithms: tuple = ALGORITHMS
    master_seed: int = 0
    ao_epsilon: float = 1e-3
    ao_max_iters: int = 20
    random_samples: Optional[int] = None  # None: 5 (M_R N_R + M_T N_T) per trial
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP


@dataclass(frozen=True)
class TrialRecord:
    point_value: float
    trial_index: int
    algorithm: str
    capacity_bits: float
    ao_iterations: int
    capacity_evaluations: int
    wall_time_ms: float


@dataclass(frozen=True)
class PointSummary:
    point_value: float
    algorithm: str
    trials: int
    mean_capacity: float
    stddev: float
    ci95: float
    mean_ratio: float          # nan when exhaustive did not run
    mean_ao_iterations: float
    excluded_trials: int = 0   # zero-optimum trials dropped from the ratio


def config_at(spec, value):
    """Base config with the swept variable replaced by `value`."""
    if spec.variable == "ports":
        return replace(spec.base, n_r=int(value), n_t=int(value))
    if spec.variable == "snr_db":
        return replace(spec.base, snr_db=float(value))
    return replace(spec.base, w=float(value))


def _point_key(spec, point_index):
    # the channel law is SNR-independent: share realizations across SNR
    # points so per-trial capacity curves are monotone in the SNR
    return 0 if spec.variable == "snr_db" else point_index


def derive_seed(master_seed, stream, point_key, trial_index):
    """64-bit sub-seed; stream 0 draws channels, stream 1 the random baseline."""
    ss = np.random.SeedSequence((master_seed, stream, point_key, trial_index))
    return int(ss.generate_state(1, np.uint64)[0])


def validate_spec(spec):
    if spec.variable not in SWEEP_VARIABLES:
        raise SweepSpecError(f"variable must be one of {SWEEP_VARIABLES}, got {spec.variable!r}")
    if len(spec.values) == 0:
        raise SweepSpecError("values must be a nonempty increasing list")
    vals = [float(v) for v in spec.values]
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise SweepSpecError(f"values must be strictly increasing, got {list(spec.values)}")
    if spec.variable == "ports" and any(float(v) != int(v) or v < 1 for v in spec.values):
        raise SweepSpecError(f"values for a ports sweep must be integers >= 1, got {list(spec.values)}")
    if spec.trials < 1:
        raise SweepSpecError(f"trials must be >= 1, got {spec.trials}")
    if spec.master_seed < 0:
        raise SweepSpecError(f"master_seed must be >= 0, got {spec.master_seed}")
    if len(spec.algorithms) == 0:
        raise SweepSpecError("algorithms must be a nonempty subset of " + ", ".join(ALGORITHMS))
    unknown = [a for a in spec.algorithms if a not in ALGORITHMS]
    if unknown:
        raise SweepSpecError(f"unknown algorithms {unknown}; valid: {', '.join(ALGORITHMS)}")
    if spec.ao_epsilon <= 0:
        raise SweepSpecError(f"ao_epsilon must be > 0, got {spec.ao_epsilon}")
    if spec.ao_max_iters < 1:
        raise SweepSpecError(f"ao_max_iters must be >= 1, got {spec.ao_max_iters}")
    if spec.random_samples is not None and spec.random_samples < 1:
        raise SweepSpecError(f"random_samples must be >= 1, got {spec.random_samples}")
    if "exhaustive" in spec.algorithms:
        for idx, value in enumerate(spec.values):
            combos = combination_count(config_at(spec, value))
            if combos > spec.exhaustive_cap:
                raise CombinationCapError(combos, spec.exhaustive_cap)


def run_trial(spec, point_index, trial_index, measure_time=False):
    """All algorithm records for one (point, trial); order follows spec.algorithms."""
    value = spec.values[point_index]
    config = config_at(spec, value)
    key = _point_key(spec, point_index)
    channel = generate_channel(config, derive_seed(spec.master_seed, 0, key, trial_index))
    rho = config.rho
    records = []
    for algo in spec.algorithms:
        start = time.perf_counter()
        if algo == "exhaustive":
            res = exhaustive_search(channel, rho, cap=spec.exhaustive_cap)
        elif algo == "jcr-res":
            res = jcr_res(channel, rho)
        elif algo == "jcr-ao":
            res = jcr_ao(channel, rho, epsilon=spec.ao_epsilon, max_iters=spec.ao_max_iters)
        elif algo == "random":
            res = random_selection(
                channel, rho, samples=spec.random_samples,
                seed=derive_seed(spec.master_seed, 1, key, trial_index))
        else:
            res = conventional_mimo(channel, rho)
        elapsed = (time.perf_counter() - start) * 1000.0 if measure_time else 0.0
        records.append(TrialRecord(
            point_value=value,
            trial_index=trial_index,
            algorithm=algo,
            capacity_bits=res.capacity_bits,
            ao_iterations=res.iterations,
            capacity_evaluations=res.evaluations,
            wall_time_ms=elapsed,
        ))
    return records


def _trial_task(args):
    spec, point_index, trial_index, measure_time = args
    return run_trial(spec, point_index, trial_index, measure_time)


def run_sweep(spec, threads=1, measure_time=False):
    """Run the full sweep; returns (records, summaries), both sorted.

    Records are deterministic functions of (spec, master_seed) regardless
    of `threads`; sorting is (point value, trial, algorithm name).
    """
    validate_spec(spec)
    tasks = [(spec, p, t, measure_time)
             for p in range(len(spec.values)) for t in range(spec.trials)]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_trial_task, tasks, chunksize=8))
    else:
        chunks = [_trial_task(t) for t in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda r: (r.point_value, r.trial_index, r.algorithm))
    return records, summarize(records)


def mean_approximation_ratio(achieved, optimal):
    """Mean of per-trial achieved/optimal capacities.

    A trial with zero optimum counts as ratio 1 if the achieved capacity is
    also zero and is otherwise excluded (returned as the second element);
    under the channel model this has probability zero.
    """
    ratios = []
    excluded = 0
    for ach, opt in zip(achieved, optimal):
        if opt > 0:
            ratios.append(ach / opt)
        elif ach == 0:
            ratios.append(1.0)
        else:
            excluded += 1
    mean = float(np.mean(ratios)) if ratios else math.nan
    return mean, excluded


def summarize(records):
    """Per (point, algorithm) statistics over trials, sorted like records."""
    by_point = {}
    for rec in records:
        by_point.setdefault(rec.point_value, {}).setdefault(rec.algorithm, []).append(rec)
    summaries = []
    for value in sorted(by_point):
        algos = by_point[value]
        optimal = None
        if "exhaustive" in algos:
            optimal = {r.trial_index: r.capacity_bits
                       for r in algos["exhaustive"]}
        for algo in sorted(algos):
            recs = sorted(algos[algo], key=lambda r: r.trial_index)
            caps = np.array([r.capacity_bits for r in recs])
            n = len(caps)
            std = float(np.std(caps, ddof=1)) if n > 1 else 0.0
            if optimal is not None:
                ratio, excluded = mean_approximation_ratio(
                    caps, [optimal[r.trial_index] for r in recs])
            else:
                ratio, excluded = math.nan, 0
            summaries.append(PointSummary(
                point_value=value,
                algorithm=algo,
                trials=n,
                mean_capacity=float(np.mean(caps)),
                stddev=std,
                ci95=1.96 * std / math.sqrt(n) if n > 0 else 0.0,
                mean_ratio=ratio,
                mean_ao_iterations=float(np.mean([r.ao_iterations for r in recs])),
                excluded_trials=excluded,
            ))
    return summaries
