"""Exact expected overhead and delay analysis of the variant-round scheme.

The variant-round scheme polls the witness set in order each round until T
witnesses agree, M'-T+1 disagree, or the set is exhausted; a round that ends
with few enough agreeing witnesses promotes the first disagreeing witness to
chosen node and replays the vote on the shrunken set.

Closed forms exist for the two deterministic adversary postures:

* pf = 0, every compromised witness disagrees with everything.  The scheme can
  drag on for many rounds; expectations are recursive because a round led by a
  compromised chosen node reduces the game to one fewer node and one fewer
  compromised node.
* pf = 1, compromised witnesses endorse any forged result.  Under the
  ``2T+1 >= M`` assumption the scheme always halts within two rounds, so the
  expectations are finite double sums.

Each posture splits by whether a valid result is reachable:

* no-valid regime, C >= M-T: too few honest witnesses; every run ends with
  NO_VALID_RESULT.
* valid regime, C < M-T: every run ends with the correct result accepted.

The polling-order randomness reduces to one distribution: the position of the
s-th special element in a uniformly shuffled two-kind sequence
(:func:`stop_position_pmf`).  Every stop distribution below is an instance of
it, which keeps the index bookkeeping in one place.

All results are exact ``Fraction`` values and contain no fusion-result term:
at most one correct copy is ever transmitted by uncompromised nodes, and the
free-copy rule cancels it.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .combinatorics import binom, hypergeom
from .core import (
    ExactMetrics,
    InvalidCompromiseCount,
    InvalidThreshold,
    Outcome,
    PreconditionError,
    ProtocolParams,
    RegimeError,
    UnsupportedPfError,
)

__all__ = [
    "stop_position_pmf",
    "stop_position_support",
    "vr_novalid_pf0",
    "vr_valid_pf0",
    "vr_novalid_pf1",
    "vr_valid_pf1",
    "vr_metrics",
    "vr_correct_copy_prob",
    "vr_raw_bits",
]

_Triple = tuple[Fraction, Fraction, Fraction]
_ZERO3: _Triple = (Fraction(0), Fraction(0), Fraction(0))


def stop_position_pmf(population: int, special: int, s: int, position: int) -> Fraction:
    """P(the s-th special element of a uniform arrangement is at `position`).

    `population` elements, `special` of them special, all orderings equally
    likely; positions are 1-based.  The chance that the s-th special element
    lands exactly at `position` is

        C(position-1, s-1) * C(population-position, special-s) / C(population, special)

    and is nonzero only for position in [s, population - special + s].
    """
    return Fraction(
        binom(position - 1, s - 1) * binom(population - position, special - s),
        binom(population, special),
    )


def stop_position_support(population: int, special: int, s: int) -> range:
    """Positions where :func:`stop_position_pmf` can be nonzero."""
    return range(s, population - special + s + 1)


def _check_bounds(m: int, t: int, c: int) -> None:
    if not 1 <= t <= m - 1:
        raise InvalidThreshold(f"threshold T={t} must satisfy 1 <= T <= M-1 (M={m})")
    if not 0 <= c <= m:
        raise InvalidCompromiseCount(f"compromised count C={c} must satisfy 0 <= C <= M")


# ---------------------------------------------------------------------------
# pf = 0: compromised witnesses disagree with every transmitted result
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _novalid_pf0(m: int, t: int, c: int, k: int, k_prime: int) -> _Triple:
    """(overhead, round delay, polling delay) for C >= M-T, pf = 0."""
    if m <= t:
        return _ZERO3
    overhead = Fraction(0)
    rounds = Fraction(0)
    polls = Fraction(0)

    if c >= 1:
        # Chosen node compromised: every witness disagrees, the round ends
        # after exactly M-T polls, and the remaining sequence is a fresh game
        # with one fewer node and one fewer compromised node.
        paid = sum(
            (
                hypergeom(m - 1, m - c, m - t, i) * i * k_prime
                for i in range(0, m - t + 1)
            ),
            Fraction(0),
        )
        rec_o, rec_r, rec_d = _novalid_pf0(m - 1, t, c - 1, k, k_prime)
        w = Fraction(c, m)
        overhead += w * (paid + rec_o)
        rounds += w * (1 + rec_r)
        polls += w * (m - t + rec_d)

    if c < m:
        # Chosen node honest: agreement can never reach T (fewer than T honest
        # witnesses remain), so the round ends at the (M-T)-th disagreement,
        # at poll j.  Every later round polls only already-disagreeing
        # compromised nodes, shrinking the set by one per round down to T.
        w = Fraction(m - c, m)
        o_u = Fraction(0)
        r_u = Fraction(0)
        d_u = Fraction(0)
        for j in stop_position_support(m - 1, c, m - t):
            p = stop_position_pmf(m - 1, c, m - t, j)
            o_u += p * (j - m + t) * k
            d_u += p * j
            if j <= 2 * m - 2 * t - 2:
                r_u += p * (2 * m - 2 * t - j)
                tail = 2 * m - 2 * t - j
                d_u += p * Fraction(tail * (tail - 1), 2)
            else:
                r_u += p
        overhead += w * o_u
        rounds += w * r_u
        polls += w * d_u

    return overhead, rounds, polls


@lru_cache(maxsize=None)
def _valid_pf0(m: int, t: int, c: int, k: int, k_prime: int) -> _Triple:
    """(overhead, round delay, polling delay) for C < M-T, pf = 0."""
    if m <= t:
        return _ZERO3
    if c == 0:
        # The chosen node is honest and the first T witnesses all agree.
        return Fraction(t * k), Fraction(1), Fraction(t)

    # Chosen compromised: as in the no-valid regime, M-T disagreeing polls and
    # then a fresh game on the remaining sequence.
    paid = sum(
        (
            hypergeom(m - 1, m - c, m - t, i) * i * k_prime
            for i in range(0, m - t + 1)
        ),
        Fraction(0),
    )
    rec_o, rec_r, rec_d = _valid_pf0(m - 1, t, c - 1, k, k_prime)
    o_c = paid + rec_o
    r_c = 1 + rec_r
    d_c = m - t + rec_d

    # Chosen honest: the T-th agreeing (honest) witness arrives at poll j
    # before M-T disagreements are possible, ending the whole run.
    o_u = Fraction(0)
    d_u = Fraction(0)
    for j in stop_position_support(m - 1, m - c - 1, t):
        p = stop_position_pmf(m - 1, m - c - 1, t, j)
        o_u += p * t * k
        d_u += p * j

    w_c = Fraction(c, m)
    w_u = Fraction(m - c, m)
    return (
        w_c * o_c + w_u * o_u,
        w_c * r_c + w_u,
        w_c * d_c + w_u * d_u,
    )


def vr_novalid_pf0(m: int, t: int, c: int, k: int, k_prime: int) -> ExactMetrics:
    """Expected metrics for the no-valid regime C >= M-T with pf = 0."""
    _check_bounds(m, t, c)
    if c < m - t:
        raise RegimeError(f"no-valid regime needs C >= M-T, got C={c}, M-T={m - t}")
    o, r, d = _novalid_pf0(m, t, c, k, k_prime)
    return ExactMetrics(overhead=o, round_delay=r, polling_delay=d)


def vr_valid_pf0(m: int, t: int, c: int, k: int, k_prime: int) -> ExactMetrics:
    """Expected metrics for the valid regime C < M-T with pf = 0."""
    _check_bounds(m, t, c)
    if c >= m - t:
        raise RegimeError(f"valid regime needs C < M-T, got C={c}, M-T={m - t}")
    o, r, d = _valid_pf0(m, t, c, k, k_prime)
    return ExactMetrics(overhead=o, round_delay=r, polling_delay=d)


# ---------------------------------------------------------------------------
# pf = 1: compromised witnesses endorse any forged result
# ---------------------------------------------------------------------------

def _check_pf1(m: int, t: int, c: int) -> None:
    _check_bounds(m, t, c)
    if 2 * t + 1 < m:
        raise PreconditionError(f"pf=1 analysis assumes 2T+1 >= M, got T={t}, M={m}")
    if c > t:
        raise RegimeError(
            f"pf=1 with C > T accepts a forged result; no closed form (C={c}, T={t})"
        )


def vr_novalid_pf1(m: int, t: int, c: int, k: int, k_prime: int) -> ExactMetrics:
    """Expected metrics for M-T <= C <= T with pf = 1 (stops within 2 rounds).

    With a compromised chosen node, the honest witnesses disagree until the
    (M-T)-th disagreement at poll i while colluders agree; a second round led
    by the first (honest) disagreeing witness then either cannot start
    (witness set below T) or ends at the disagreement threshold again.  With
    an honest chosen node the roles flip.  Either way no result gathers T
    votes.
    """
    _check_pf1(m, t, c)
    if c < m - t:
        raise RegimeError(f"no-valid regime needs C >= M-T, got C={c}, M-T={m - t}")

    overhead = Fraction(0)
    rounds = Fraction(0)
    polls = Fraction(0)

    # Chosen compromised (C/M): i-th poll ends round 1 when the (M-T)-th
    # honest witness disagrees; the i-M+T colluders who agreed are excluded.
    w = Fraction(c, m)
    for i in stop_position_support(m - 1, m - c, m - t):
        p = stop_position_pmf(m - 1, m - c, m - t, i)
        o_i = Fraction((m - t) * k_prime)
        r_i = Fraction(1)
        d_i = Fraction(i)
        if i <= 2 * m - 2 * t - 2:
            # Round 2: honest chosen, witness set of size M' = 2M-T-i-2 led by
            # the M-T-1 honest disagreeing witnesses (who now agree); the
            # remaining pool holds the unpolled nodes, M+C-T-i-1 compromised.
            pool = m - i - 1
            pool_special = m + c - t - i - 1  # compromised: they disagree now
            s2 = 2 * m - 2 * t - i - 1  # disagreements that end the round
            prefix = m - t - 1
            for j2 in stop_position_support(pool, pool_special, s2):
                p2 = stop_position_pmf(pool, pool_special, s2, j2)
                j = prefix + j2
                o_i += p2 * (j - s2) * k  # honest agreeing votes
                d_i += p2 * j
            r_i = Fraction(2)
        overhead += w * p * o_i
        rounds += w * p * r_i
        polls += w * p * d_i

    # Chosen honest ((M-C)/M): the C colluders disagree with the correct
    # result; round 1 ends at the (M-T)-th disagreement at poll i.
    w = Fraction(m - c, m)
    for i in stop_position_support(m - 1, c, m - t):
        p = stop_position_pmf(m - 1, c, m - t, i)
        o_i = Fraction((i - m + t) * k)  # honest agreeing votes, round 1
        r_i = Fraction(1)
        d_i = Fraction(i)
        if i <= 2 * m - 2 * t - 2:
            # Round 2: compromised chosen transmits a fresh forgery; the
            # M-T-1 compromised disagreeing witnesses endorse it, the pool's
            # honest nodes disagree until the threshold.
            pool = m - i - 1
            pool_special = 2 * m - c - t - i - 1  # honest nodes left unpolled
            s2 = 2 * m - 2 * t - i - 1
            prefix = m - t - 1
            for j2 in stop_position_support(pool, pool_special, s2):
                p2 = stop_position_pmf(pool, pool_special, s2, j2)
                j = prefix + j2
                o_i += p2 * s2 * k_prime  # honest disagreeing votes
                d_i += p2 * j
            r_i = Fraction(2)
        overhead += w * p * o_i
        rounds += w * p * r_i
        polls += w * p * d_i

    return ExactMetrics(overhead=overhead, round_delay=rounds, polling_delay=polls)


def vr_valid_pf1(m: int, t: int, c: int, k: int, k_prime: int) -> ExactMetrics:
    """Expected metrics for C < M-T with pf = 1 (valid result within 2 rounds).

    An honest chosen node is endorsed in one round exactly as with pf = 0.  A
    compromised chosen node is voted down at the (M-T)-th disagreement, after
    which the promoted honest node always gathers T agreements in round 2: the
    M-T-1 honest witnesses that disagreed before are polled first, so when
    M = 2T+1 they alone settle it at poll T.
    """
    _check_pf1(m, t, c)
    if c >= m - t:
        raise RegimeError(f"valid regime needs C < M-T, got C={c}, M-T={m - t}")
    if c == 0:
        return ExactMetrics(
            overhead=Fraction(t * k), round_delay=Fraction(1), polling_delay=Fraction(t)
        )

    o_c = Fraction(0)
    d_c = Fraction(0)
    for i in stop_position_support(m - 1, m - c, m - t):
        p = stop_position_pmf(m - 1, m - c, m - t, i)
        if m == 2 * t + 1:
            # The T honest round-1 disagreeing witnesses (minus the promoted
            # chosen) are exactly the first T = M-T-1 polled and all agree.
            inner_o = Fraction(t * k)
            inner_d = Fraction(t)
        else:
            pool = m - i - 1
            pool_special = t - c  # honest unpolled nodes: round-2 agreers
            s2 = 2 * t + 1 - m  # pool agreements still needed after the prefix
            prefix = m - t - 1
            inner_o = Fraction(0)
            inner_d = Fraction(0)
            for j2 in stop_position_support(pool, pool_special, s2):
                p2 = stop_position_pmf(pool, pool_special, s2, j2)
                inner_o += p2 * t * k
                inner_d += p2 * (prefix + j2)
        o_c += p * (Fraction((m - t) * k_prime) + inner_o)
        d_c += p * (i + inner_d)
    r_c = Fraction(2)

    o_u = Fraction(0)
    d_u = Fraction(0)
    for i in stop_position_support(m - 1, m - c - 1, t):
        p = stop_position_pmf(m - 1, m - c - 1, t, i)
        o_u += p * t * k
        d_u += p * i

    w_c = Fraction(c, m)
    w_u = Fraction(m - c, m)
    return ExactMetrics(
        overhead=w_c * o_c + w_u * o_u,
        round_delay=w_c * r_c + w_u,
        polling_delay=w_c * d_c + w_u * d_u,
    )


@lru_cache(maxsize=None)
def _copy_prob_novalid_pf0(m: int, t: int, c: int) -> Fraction:
    if m <= t:
        return Fraction(0)
    prob = Fraction(0)
    if c >= 1:
        prob += Fraction(c, m) * _copy_prob_novalid_pf0(m - 1, t, c - 1)
    if c < m:
        prob += Fraction(m - c, m)
    return prob


def vr_correct_copy_prob(params: ProtocolParams) -> Fraction:
    """Exact probability that the correct result is transmitted at all.

    The variant-round scheme transmits at most one correct copy, so this is
    also its expected copy count.  In the valid regime the run always ends
    with an uncompromised chosen node, hence probability one; in the no-valid
    regime the copy happens exactly when some round is led by an uncompromised
    node before the scheme gives up.
    """
    _check_bounds(params.m, params.t, params.c)
    m, t, c = params.m, params.t, params.c
    if c < m - t:
        return Fraction(1)
    if params.pf == 0:
        return _copy_prob_novalid_pf0(m, t, c)
    if params.pf == 1:
        _check_pf1(m, t, c)
        # A compromised first round transmits a copy only if a second round
        # happens, i.e. the disagreement threshold falls early enough.
        second_round = sum(
            (
                stop_position_pmf(m - 1, m - c, m - t, i)
                for i in stop_position_support(m - 1, m - c, m - t)
                if i <= 2 * m - 2 * t - 2
            ),
            Fraction(0),
        )
        return Fraction(m - c, m) + Fraction(c, m) * second_round
    raise UnsupportedPfError(
        f"no closed form for P_f={params.pf}; only 0 and 1 (use the simulator)"
    )


def vr_raw_bits(params: ProtocolParams) -> Fraction:
    """Expected bits on air from uncompromised nodes, free copy included."""
    metrics, _ = vr_metrics(params)
    return metrics.overhead + params.big_k * vr_correct_copy_prob(params)


def vr_metrics(params: ProtocolParams) -> tuple[ExactMetrics, Outcome]:
    """Dispatch to the closed form matching (pf, regime) and tag the outcome.

    Only pf exactly 0 or 1 has a closed form (UnsupportedPfError otherwise;
    use the simulator).  pf = 1 with C > T is refused (RegimeError): the
    colluders would win and the analysis excludes that regime by design.
    """
    _check_bounds(params.m, params.t, params.c)
    m, t, c = params.m, params.t, params.c
    k, k_prime = params.k, params.k_prime
    if params.pf == 0:
        if c >= m - t:
            return vr_novalid_pf0(m, t, c, k, k_prime), Outcome.NO_VALID_RESULT
        return vr_valid_pf0(m, t, c, k, k_prime), Outcome.VALID_ACCEPTED
    if params.pf == 1:
        if c >= m - t:
            return vr_novalid_pf1(m, t, c, k, k_prime), Outcome.NO_VALID_RESULT
        return vr_valid_pf1(m, t, c, k, k_prime), Outcome.VALID_ACCEPTED
    raise UnsupportedPfError(
        f"no closed form for P_f={params.pf}; only 0 and 1 (use the simulator)"
    )
