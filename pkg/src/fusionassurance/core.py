"""Shared domain vocabulary for the fusion-assurance schemes.

A scenario is a set of scalar knobs (:class:`ProtocolParams`), a concrete
arrangement of compromised and uncompromised fusion nodes (a roster), and the
metrics a protocol run produces, either per trial (:class:`TrialMetrics`),
as exact expectations (:class:`ExactMetrics`), or as Monte Carlo aggregates
(:class:`AggregateMetrics`).

Overhead accounting rule, applied uniformly by every scheme: sum the bits of
every transmission (votes, fusion results, forwarded MACs) made by
uncompromised nodes, then subtract the fusion-result size once if at least one
correct fusion result was transmitted by an uncompromised node.  The raw count
without that subtraction is recoverable per trial via :meth:`TrialMetrics.raw_bits`.

Round delay counts every round in which a fusion result is sent to the base
station; polling delay counts every individual vote solicited, agreeing or
disagreeing.

All types here are immutable values; they are safe to share between threads.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Tuple

__all__ = [
    "ProtocolParams",
    "NodeKind",
    "Roster",
    "Outcome",
    "TrialMetrics",
    "ExactMetrics",
    "AggregateMetrics",
    "InvalidThreshold",
    "InvalidCompromiseCount",
    "InvalidProbability",
    "RegimeError",
    "PreconditionError",
    "UnsupportedPfError",
    "SizeBoundError",
    "NonTerminationError",
    "validate",
]


class InvalidThreshold(ValueError):
    """The agreement threshold T is outside 1..M-1."""


class InvalidCompromiseCount(ValueError):
    """The compromised-node count C is outside 0..M."""


class InvalidProbability(ValueError):
    """The forged-agreement probability P_f is outside [0, 1]."""


class RegimeError(ValueError):
    """The requested formula does not apply to this (M, T, C) regime."""


class PreconditionError(ValueError):
    """An analysis precondition (e.g. 2T+1 >= M) is not met."""


class UnsupportedPfError(ValueError):
    """Closed forms exist only for P_f in {0, 1}; use the simulator otherwise."""


class SizeBoundError(ValueError):
    """Exhaustive enumeration was asked for a problem above its size bound."""


class NonTerminationError(RuntimeError):
    """A protocol state machine failed to terminate; indicates a bug."""


class NodeKind(enum.Enum):
    """A fusion node is either adversary-controlled or honest."""

    COMPROMISED = "compromised"
    UNCOMPROMISED = "uncompromised"


#: An ordered arrangement of node kinds.  Position 0 is the initially chosen
#: node; positions 1..M-1 are the witness set in polling order.
Roster = Tuple[NodeKind, ...]


class Outcome(enum.Enum):
    """How an assurance run ends at the base station."""

    VALID_ACCEPTED = "valid_accepted"
    NO_VALID_RESULT = "no_valid_result"
    FORGED_ACCEPTED = "forged_accepted"


@dataclass(frozen=True)
class ProtocolParams:
    """All scalar knobs of a scenario.

    m: count of fusion nodes (>= 1)
    t: agreement threshold; a result is endorsed when t witnesses agree
    c: count of compromised fusion nodes
    pf: probability a compromised witness agrees with a forged result
    k: bits per agreeing vote
    k_prime: bits per disagreeing vote
    k_w: bits per MAC in the witness-based scheme
    big_k: bits per fusion result
    """

    m: int
    t: int
    c: int
    pf: float = 0.0
    k: int = 0
    k_prime: int = 1
    k_w: int = 4
    big_k: int = 0


def validate(params: ProtocolParams) -> None:
    """Check the ProtocolParams invariants, raising on the first violation.

    Raises InvalidThreshold (T outside 1..M-1), InvalidCompromiseCount
    (C outside 0..M), or InvalidProbability (P_f outside [0,1]).
    """
    if not 1 <= params.t <= params.m - 1:
        raise InvalidThreshold(
            f"threshold T={params.t} must satisfy 1 <= T <= M-1 (M={params.m})"
        )
    if not 0 <= params.c <= params.m:
        raise InvalidCompromiseCount(
            f"compromised count C={params.c} must satisfy 0 <= C <= M (M={params.m})"
        )
    if not 0.0 <= params.pf <= 1.0:
        raise InvalidProbability(f"P_f={params.pf} must lie in [0, 1]")
    for name in ("k", "k_prime", "k_w", "big_k"):
        if getattr(params, name) < 0:
            raise ValueError(f"bit cost {name} must be nonnegative")


@dataclass(frozen=True)
class TrialMetrics:
    """Metrics of one protocol execution.

    overhead_bits counts only bits transmitted by uncompromised nodes, minus
    the bits of one copy of the correct fusion result when such a copy was
    transmitted.  correct_copies_by_uncompromised is the number of correct
    fusion-result copies those nodes transmitted (before the free-copy rule).
    """

    overhead_bits: int
    round_delay: int
    polling_delay: int
    outcome: Outcome
    correct_copies_by_uncompromised: int = 0

    def raw_bits(self, big_k: int) -> int:
        """Total bits sent by uncompromised nodes with no free-copy discount."""
        if self.correct_copies_by_uncompromised > 0:
            return self.overhead_bits + big_k
        return self.overhead_bits


@dataclass(frozen=True)
class ExactMetrics:
    """Expected overhead and delays as exact rationals."""

    overhead: Fraction
    round_delay: Fraction
    polling_delay: Fraction

    def __post_init__(self) -> None:
        if min(self.overhead, self.round_delay, self.polling_delay) < 0:
            raise ValueError("expected metrics must be nonnegative")


@dataclass(frozen=True)
class AggregateMetrics:
    """Monte Carlo summary over independent trials.

    Means are exact ratios of integer sums to the trial count, converted to
    float; rerunning with the same seed reproduces them bit for bit.
    mean_raw_bits applies no free-copy discount (see TrialMetrics.raw_bits).
    """

    mean_overhead: float
    mean_round_delay: float
    mean_polling_delay: float
    mean_raw_bits: float
    stderr_overhead: float
    stderr_round_delay: float
    stderr_polling_delay: float
    stderr_raw_bits: float
    outcome_counts: Mapping[Outcome, int]
    trials: int
    seed: int
