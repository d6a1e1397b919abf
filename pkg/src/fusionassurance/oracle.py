"""Exhaustive-enumeration oracle for the protocol state machines.

The closed forms in ``witness`` and ``variant_round`` and the simulator in
``simulate`` can each be wrong on their own; this module is the independent
referee.  It runs the very same state machines as the simulator, but instead
of sampling it enumerates: every placement of the compromised nodes across
roster slots carries weight 1/C(M,C), and (for fractional pf) every sequence
of endorse coins carries its product weight.  The resulting expectations are
exact rationals, so agreement with the analytic formulas is checked with
``==`` rather than a tolerance.

Sharing the machines is deliberate: oracle-vs-formula agreement validates the
formulas, formula-vs-simulator agreement validates the sampling layer, and a
discrepancy points at exactly one of the three.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterator, Tuple

from .combinatorics import binom
from .core import (
    ExactMetrics,
    NodeKind,
    Outcome,
    ProtocolParams,
    Roster,
    SizeBoundError,
    TrialMetrics,
    UnsupportedPfError,
    validate,
)
from .protocols import resolve_scheme

__all__ = ["enumerate_trials", "enumerate_exact", "enumerate_exact_randomized"]

DEFAULT_SIZE_BOUND = 12


class _NeedCoin(Exception):
    """Raised when a scripted run asks for a coin beyond its script."""


class _CoinScript:
    """Replays a fixed sequence of endorse-coin outcomes.

    Degenerate probabilities resolve without consuming the script, so pf=0
    and pf=1 runs never branch.
    """

    def __init__(self, script: Tuple[bool, ...]):
        self._script = script
        self._used = 0

    def coin(self, probability: float) -> bool:
        if probability <= 0.0:
            return False
        if probability >= 1.0:
            return True
        if self._used < len(self._script):
            value = self._script[self._used]
            self._used += 1
            return value
        raise _NeedCoin


def _rosters(m: int, c: int) -> Iterator[Roster]:
    for positions in itertools.combinations(range(m), c):
        roster = [NodeKind.UNCOMPROMISED] * m
        for p in positions:
            roster[p] = NodeKind.COMPROMISED
        yield tuple(roster)


def enumerate_trials(
    scheme: str, params: ProtocolParams, size_bound: int = DEFAULT_SIZE_BOUND
) -> Iterator[Tuple[Fraction, TrialMetrics]]:
    """Yield (probability, TrialMetrics) over every equally likely roster.

    Requires a deterministic adversary (pf exactly 0 or 1).  For the
    variant-round scheme each trial is checked against the at-most-one
    correct-copy property on the spot, failing loudly on any counterexample.
    """
    validate(params)
    if params.pf not in (0.0, 1.0):
        raise UnsupportedPfError(
            f"exhaustive enumeration needs pf in {{0, 1}}, got {params.pf}"
        )
    if params.m > size_bound:
        raise SizeBoundError(f"M={params.m} exceeds enumeration bound {size_bound}")
    canonical, runner = resolve_scheme(scheme)
    weight = Fraction(1, binom(params.m, params.c))
    coins = _CoinScript(())
    for roster in _rosters(params.m, params.c):
        metrics = runner(params, roster, coins)
        if canonical == "variant_round":
            assert metrics.correct_copies_by_uncompromised <= 1, (
                f"variant-round transmitted "
                f"{metrics.correct_copies_by_uncompromised} correct copies "
                f"on roster {roster}"
            )
        yield weight, metrics


def enumerate_exact(
    scheme: str, params: ProtocolParams, size_bound: int = DEFAULT_SIZE_BOUND
) -> Tuple[ExactMetrics, Dict[Outcome, Fraction]]:
    """Exact expected metrics and outcome distribution, for pf in {0, 1}."""
    overhead = Fraction(0)
    rounds = Fraction(0)
    polls = Fraction(0)
    distribution: Dict[Outcome, Fraction] = {}
    for weight, metrics in enumerate_trials(scheme, params, size_bound):
        overhead += weight * metrics.overhead_bits
        rounds += weight * metrics.round_delay
        polls += weight * metrics.polling_delay
        distribution[metrics.outcome] = (
            distribution.get(metrics.outcome, Fraction(0)) + weight
        )
    exact = ExactMetrics(overhead=overhead, round_delay=rounds, polling_delay=polls)
    return exact, distribution


def enumerate_exact_randomized(
    scheme: str,
    params: ProtocolParams,
    vote_rng_depth: int = 24,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> ExactMetrics:
    """Exact expected metrics for any pf by expanding every coin sequence.

    Each roster is replayed down every branch of the endorse-coin tree, with
    True weighted pf and False weighted 1-pf (pf taken at its exact binary
    float value).  A branch needing more than vote_rng_depth coins aborts the
    whole computation, since the tree is then too deep to expand.
    """
    validate(params)
    if params.m > size_bound:
        raise SizeBoundError(f"M={params.m} exceeds enumeration bound {size_bound}")
    _, runner = resolve_scheme(scheme)
    pf = Fraction(params.pf)
    roster_weight = Fraction(1, binom(params.m, params.c))
    overhead = Fraction(0)
    rounds = Fraction(0)
    polls = Fraction(0)
    for roster in _rosters(params.m, params.c):
        stack = [((), roster_weight)]
        while stack:
            script, weight = stack.pop()
            try:
                metrics = runner(params, roster, _CoinScript(script))
            except _NeedCoin:
                if len(script) >= vote_rng_depth:
                    raise SizeBoundError(
                        f"coin tree deeper than vote_rng_depth={vote_rng_depth}"
                    ) from None
                stack.append((script + (True,), weight * pf))
                stack.append((script + (False,), weight * (1 - pf)))
                continue
            overhead += weight * metrics.overhead_bits
            rounds += weight * metrics.round_delay
            polls += weight * metrics.polling_delay
    return ExactMetrics(overhead=overhead, round_delay=rounds, polling_delay=polls)
