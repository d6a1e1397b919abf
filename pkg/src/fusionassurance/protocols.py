"""Trial-level state machines for the three assurance schemes.

Each ``run_*`` function plays one complete assurance run on a fixed roster and
returns the bits, rounds, and polls it cost.  The roster carries all placement
randomness (position 0 is the initially chosen node); the only other
randomness is the compromised witnesses' endorse-a-forgery coin, drawn through
``rng.coin(pf)``.  Passing an object that scripts those coins instead of
flipping them turns any machine into an exhaustive-enumeration target, which
is how the oracle module reuses this code verbatim.

Overhead accounting is uniform: only uncompromised nodes' bits count, and the
first transmitted copy of the correct fusion result is free (the result would
have to be delivered once with or without assurance).  ``TrialMetrics`` keeps
the number of correct copies so the raw on-air byte count can be recovered.

Fusion values only need identity, not content: ``CORRECT`` is zero and every
forgery is a fresh positive integer, so value equality is integer equality.
"""
from __future__ import annotations

import itertools
from typing import Final, List

from .core import (
    NodeKind,
    NonTerminationError,
    Outcome,
    ProtocolParams,
    Roster,
    TrialMetrics,
)

__all__ = [
    "CORRECT",
    "FusionValue",
    "adversary_value",
    "adversary_vote",
    "sample_roster",
    "run_witness_based",
    "run_variant_round",
    "run_one_round",
    "resolve_scheme",
]

FusionValue = int

CORRECT: Final[FusionValue] = 0

_forgeries = itertools.count(1)


def adversary_value(rng=None) -> FusionValue:
    """Fresh forged value, distinct from CORRECT and every earlier forgery.

    Forged values carry identity only, so no randomness is consumed; the rng
    argument is accepted for signature symmetry and ignored.
    """
    return next(_forgeries)


def adversary_vote(presented: FusionValue, pf: float, rng) -> bool:
    """Compromised witness's vote on a presented value (True = agree).

    The correct result is always rejected; a forged result is endorsed with
    probability pf, regardless of which compromised node forged it.
    """
    if presented == CORRECT:
        return False
    return rng.coin(pf)


def sample_roster(m: int, c: int, rng) -> Roster:
    """Uniform arrangement of c compromised among m nodes; slot 0 is chosen."""
    if not 0 <= c <= m:
        raise ValueError(f"need 0 <= c <= m, got c={c}, m={m}")
    kinds = [NodeKind.COMPROMISED] * c + [NodeKind.UNCOMPROMISED] * (m - c)
    return tuple(rng.shuffle(kinds))


def run_witness_based(params: ProtocolParams, roster: Roster, rng=None) -> TrialMetrics:
    """One witness-based run: chosen nodes in roster order, all-witness MACs.

    Each round's chosen node sends its result plus a k_w-bit MAC per witness;
    the witnesses' verdict is determined by the counts alone (forgeries are
    rejected, MAC forgery being negligible by construction), so no coins are
    flipped.  A compromised chosen node wins only when its C-1 colluders reach
    T; an uncompromised one wins only when the M-C-1 honest witnesses do.  At
    most M-T nodes are chosen before the base station gives up.
    """
    m, t, c = params.m, params.t, params.c
    honest_wins = m - c - 1 >= t
    forged_wins = c - 1 >= t
    bits = 0
    copies = 0
    rounds = 0
    outcome = Outcome.NO_VALID_RESULT
    for chosen in roster[: m - t]:
        rounds += 1
        if chosen is NodeKind.COMPROMISED:
            if forged_wins:
                outcome = Outcome.FORGED_ACCEPTED
                break
        else:
            copies += 1
            bits += (m - 1) * params.k_w
            if copies >= 2:
                bits += params.big_k
            if honest_wins:
                outcome = Outcome.VALID_ACCEPTED
                break
    return TrialMetrics(
        overhead_bits=bits,
        round_delay=rounds,
        polling_delay=rounds * (m - 1),
        outcome=outcome,
        correct_copies_by_uncompromised=copies,
    )


def run_variant_round(params: ProtocolParams, roster: Roster, rng) -> TrialMetrics:
    """One variant-round run: agree/disagree polling with chosen re-selection.

    Rounds poll the witness list in order until T agree (accepted), W-T+1
    disagree, or the list is exhausted (unreachable, handled the same as a
    threshold stop).  A round that ends with A <= W-T-1 agreements promotes
    the first disagreeing node to chosen, keeps the other disagreeing nodes
    ahead of the never-polled ones, and drops the agreeing nodes; with
    W-T-1 < A < T the run ends without a valid result.
    """
    m, t = params.m, params.t
    chosen = roster[0]
    witnesses: List[NodeKind] = list(roster[1:])
    bits = 0
    copies = 0
    polls = 0
    outcome = None
    for round_index in range(m):
        if chosen is NodeKind.UNCOMPROMISED:
            value = CORRECT
            copies += 1
            if copies >= 2:
                bits += params.big_k
        else:
            value = adversary_value()
        w = len(witnesses)
        agree: List[int] = []
        disagree: List[int] = []
        for idx, witness in enumerate(witnesses):
            polls += 1
            if witness is NodeKind.UNCOMPROMISED:
                agrees = value == CORRECT
                bits += params.k if agrees else params.k_prime
            else:
                agrees = adversary_vote(value, params.pf, rng)
            (agree if agrees else disagree).append(idx)
            if len(agree) == t:
                outcome = (
                    Outcome.VALID_ACCEPTED
                    if value == CORRECT
                    else Outcome.FORGED_ACCEPTED
                )
                break
            if len(disagree) == w - t + 1:
                break
        if outcome is not None:
            break
        a = len(agree)
        if a > w - t - 1:
            outcome = Outcome.NO_VALID_RESULT
            break
        polled = a + len(disagree)
        chosen = witnesses[disagree[0]]
        witnesses = [witnesses[i] for i in disagree[1:]] + witnesses[polled:]
    else:
        raise NonTerminationError(
            f"variant-round run exceeded {m} rounds; state machine bug"
        )
    return TrialMetrics(
        overhead_bits=bits,
        round_delay=round_index + 1,
        polling_delay=polls,
        outcome=outcome,
        correct_copies_by_uncompromised=copies,
    )


def run_one_round(params: ProtocolParams, roster: Roster, rng) -> TrialMetrics:
    """One one-round run: single polling pass with stored candidate results.

    The base station keeps every distinct result it has received with a vote
    count (the transmitter's own copy is not a vote) and polls each witness
    once with the current voting result: the stored result with the most
    votes, ties broken toward the most recent supporting event.  An agreeing
    witness sends a k-bit vote; a disagreeing one transmits its full K-bit
    result, which either lands as a vote for an already-stored result or is
    stored as a new candidate with zero votes.  Polling stops when a result
    reaches T votes or when the unpolled witnesses plus the best vote count
    can no longer get there.
    """
    m, t = params.m, params.t
    chosen = roster[0]
    witnesses = roster[1:]
    bits = 0
    copies = 0
    polls = 0
    votes = {}
    last_support = {}
    support_seq = itertools.count()

    def record(value: FusionValue, is_vote: bool) -> None:
        if is_vote:
            votes[value] += 1
        else:
            votes[value] = 0
        last_support[value] = next(support_seq)

    if chosen is NodeKind.UNCOMPROMISED:
        copies += 1
        record(CORRECT, is_vote=False)
    else:
        record(adversary_value(), is_vote=False)

    outcome = Outcome.NO_VALID_RESULT
    for idx, witness in enumerate(witnesses):
        best = max(votes.values())
        if len(witnesses) - idx + best < t:
            break
        voting_result = max(votes, key=lambda v: (votes[v], last_support[v]))
        polls += 1
        if witness is NodeKind.UNCOMPROMISED:
            if voting_result == CORRECT:
                bits += params.k
                record(CORRECT, is_vote=True)
            else:
                copies += 1
                bits += params.big_k if copies >= 2 else 0
                record(CORRECT, is_vote=CORRECT in votes)
            settled = CORRECT
        else:
            if adversary_vote(voting_result, params.pf, rng):
                record(voting_result, is_vote=True)
                settled = voting_result
            else:
                settled = adversary_value()
                record(settled, is_vote=False)
        if votes[settled] >= t:
            outcome = (
                Outcome.VALID_ACCEPTED
                if settled == CORRECT
                else Outcome.FORGED_ACCEPTED
            )
            break
    return TrialMetrics(
        overhead_bits=bits,
        round_delay=1,
        polling_delay=polls,
        outcome=outcome,
        correct_copies_by_uncompromised=copies,
    )


_SCHEMES = {
    "witness_based": run_witness_based,
    "variant_round": run_variant_round,
    "one_round": run_one_round,
}
_SCHEME_ALIASES = {"witness": "witness_based", "vr": "variant_round", "or": "one_round"}


def resolve_scheme(name: str):
    """Map a scheme name (or its CLI short form) to (canonical name, runner)."""
    canonical = _SCHEME_ALIASES.get(name, name)
    try:
        return canonical, _SCHEMES[canonical]
    except KeyError:
        raise ValueError(
            f"unknown scheme {name!r}; expected one of "
            f"{sorted(_SCHEMES) + sorted(_SCHEME_ALIASES)}"
        ) from None
