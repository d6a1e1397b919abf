"""Seeded Monte Carlo driver over the protocol state machines.

Each trial draws a fresh roster and adversary coins from its own substream of
(seed, trial index), so a run is reproducible bit for bit, trials can be
recomputed in isolation, and the aggregation below is a pure sum-reduction:
serial and parallel executions of the same seed agree exactly.

Per-trial metrics are integers, so the sums and sums of squares are kept as
exact Python integers and only the final mean and standard error touch
floating point.  That makes the aggregate independent of accumulation order.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Dict

from .core import AggregateMetrics, Outcome, ProtocolParams, validate
from .protocols import resolve_scheme, sample_roster
from .rng import substream

__all__ = ["monte_carlo"]

_METRICS = ("overhead", "round_delay", "polling_delay", "raw_bits")


def monte_carlo(
    scheme: str, params: ProtocolParams, trials: int, seed: int
) -> AggregateMetrics:
    """Run independent trials and aggregate means with standard errors."""
    validate(params)
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    _, runner = resolve_scheme(scheme)
    sums = dict.fromkeys(_METRICS, 0)
    squares = dict.fromkeys(_METRICS, 0)
    outcomes: Counter = Counter()
    for index in range(trials):
        stream = substream(seed, index)
        roster = sample_roster(params.m, params.c, stream)
        metrics = runner(params, roster, stream)
        values = {
            "overhead": metrics.overhead_bits,
            "round_delay": metrics.round_delay,
            "polling_delay": metrics.polling_delay,
            "raw_bits": metrics.raw_bits(params.big_k),
        }
        for name, value in values.items():
            sums[name] += value
            squares[name] += value * value
        outcomes[metrics.outcome] += 1

    def mean(name: str) -> float:
        return sums[name] / trials

    def stderr(name: str) -> float:
        if trials == 1:
            return 0.0
        # n * sum(x^2) - sum(x)^2 = n(n-1) * sample variance, all in exact ints.
        spread = trials * squares[name] - sums[name] ** 2
        return math.sqrt(spread / (trials - 1)) / trials

    counts: Dict[Outcome, int] = {o: outcomes.get(o, 0) for o in Outcome}
    return AggregateMetrics(
        mean_overhead=mean("overhead"),
        mean_round_delay=mean("round_delay"),
        mean_polling_delay=mean("polling_delay"),
        mean_raw_bits=mean("raw_bits"),
        stderr_overhead=stderr("overhead"),
        stderr_round_delay=stderr("round_delay"),
        stderr_polling_delay=stderr("polling_delay"),
        stderr_raw_bits=stderr("raw_bits"),
        outcome_counts=counts,
        trials=trials,
        seed=seed,
    )
