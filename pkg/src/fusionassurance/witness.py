"""Closed-form overhead and delay analysis of the witness-based MAC scheme.

In this scheme the chosen fusion node forwards one MAC of k_w bits from each
of the M-1 witnesses alongside its own K-bit fusion result.  If the result is
not endorsed by T MACs the base station repeatedly picks another fusion node,
which retransmits its result together with a fresh set of all M-1 MACs.

Three regimes, by compromised count C:

* C < M-T: a valid result is always reached (the first uncompromised chosen
  node is endorsed by its M-C-1 >= T honest peers).
* M-T <= C <= T: no result can gather T honest MACs and the forged result
  cannot either; the base station polls exactly M-T chosen nodes and gives up.
* C > T: the colluders outnumber the threshold and a forged result is
  accepted as soon as a compromised node is chosen.

Expectations are exact ``Fraction`` values.  Overhead follows the uniform
accounting rule in :mod:`fusionassurance.core` (uncompromised bits only, one
correct fusion-result copy free).
"""
from __future__ import annotations

from fractions import Fraction

from .combinatorics import binom
from .core import ExactMetrics, Outcome, ProtocolParams, RegimeError, validate

__all__ = [
    "forged_acceptance_prob",
    "witness_invalid_metrics",
    "witness_valid_metrics",
    "witness_metrics",
    "witness_raw_bits",
]


def forged_acceptance_prob(m: int, t: int, k_w: int) -> Fraction:
    """Probability that a forged result passes with T-of-(M-1) forged MACs.

    Each forged MAC passes verification independently with probability
    2^-k_w, so acceptance needs at least T lucky forgeries among M-1:

        P_e = sum_{i=T}^{M-1} C(M-1, i) (2^-k_w)^i (1 - 2^-k_w)^(M-i-1)

    Strictly decreasing in k_w for fixed M, T.
    """
    if not 1 <= t <= m - 1:
        raise RegimeError(f"need 1 <= T <= M-1, got T={t}, M={m}")
    if k_w < 1:
        raise ValueError("k_w must be at least 1")
    p = Fraction(1, 2**k_w)
    q = 1 - p
    return sum(
        (binom(m - 1, i) * p**i * q ** (m - i - 1) for i in range(t, m)),
        Fraction(0),
    )


def _chosen_uncompromised_prob(m: int, c: int, i: int) -> Fraction:
    """P(the first uncompromised node appears at polling position i), 1-based."""
    return Fraction(binom(m - i, c - i + 1), binom(m, c))


def witness_valid_metrics(params: ProtocolParams) -> ExactMetrics:
    """Expected metrics in the valid regime C < M-T.

    Chosen nodes are drawn without replacement until one is uncompromised;
    that node's result is endorsed immediately.  The expected round delay is

        R_w = sum_{i=1}^{C+1} i * C(M-i, C-i+1) / C(M, C)

    (at most C+1), the polling delay is R_w * (M-1), and the overhead is
    exactly (M-1) * k_w: the single uncompromised chosen node transmits the
    MACs plus the one free copy of the correct result, and compromised
    transmissions are not counted.
    """
    validate(params)
    m, t, c = params.m, params.t, params.c
    if c >= m - t:
        raise RegimeError(f"valid regime needs C < M-T, got C={c}, M-T={m - t}")
    round_delay = sum(
        (i * _chosen_uncompromised_prob(m, c, i) for i in range(1, c + 2)),
        Fraction(0),
    )
    return ExactMetrics(
        overhead=Fraction((m - 1) * params.k_w),
        round_delay=round_delay,
        polling_delay=round_delay * (m - 1),
    )


def polled_uncompromised_pmf(m: int, t: int, c: int, i: int) -> Fraction:
    """P(i of the M-T chosen nodes are uncompromised), invalid regime.

    Implemented as C(M-T, i) C(T, M-C-i) / C(M, C); algebraically equal to
    C(M-C, i) C(C, M-T-i) / C(M, M-T).
    """
    return Fraction(binom(m - t, i) * binom(t, m - c - i), binom(m, c))


def witness_invalid_metrics(params: ProtocolParams) -> ExactMetrics:
    """Expected metrics in the no-valid-result regime M-T <= C <= T.

    All M-T chosen nodes transmit and none is endorsed.  With i of them
    uncompromised, the counted bits are (M-1) i k_w MAC forwards plus K(i-1)
    result bits (the first correct copy is free), so

        O_w = sum_{i=1}^{M-T} P_w(i) [ (M-1) i k_w + K (i-1) ]

    with hypergeometric P_w.  Round delay is exactly M-T and polling delay
    (M-T)(M-1).
    """
    validate(params)
    m, t, c = params.m, params.t, params.c
    if c < m - t or c > t:
        raise RegimeError(
            f"invalid regime needs M-T <= C <= T, got C={c}, M-T={m - t}, T={t}"
        )
    overhead = sum(
        (
            polled_uncompromised_pmf(m, t, c, i)
            * ((m - 1) * i * params.k_w + params.big_k * (i - 1))
            for i in range(1, m - t + 1)
        ),
        Fraction(0),
    )
    return ExactMetrics(
        overhead=overhead,
        round_delay=Fraction(m - t),
        polling_delay=Fraction((m - t) * (m - 1)),
    )


def _witness_forged_metrics(params: ProtocolParams) -> ExactMetrics:
    """Expected metrics when C > T and the colluders win.

    Model (the analysis leaves this regime unspecified beyond the outcome):
    chosen nodes are drawn without replacement; a compromised chosen node is
    endorsed at once by its C-1 >= T colluders; an uncompromised one is
    endorsed only if M-C-1 >= T, and otherwise transmits its (M-1)k_w + K
    bits in vain and polling continues.
    """
    m, c = params.m, params.c
    per_round_bits = (m - 1) * params.k_w + params.big_k
    if m - c - 1 >= params.t:
        # Round 1 always decides: uncompromised chosen -> valid, else forged.
        p_honest = Fraction(m - c, m)
        overhead = p_honest * per_round_bits - params.big_k * p_honest
        return ExactMetrics(
            overhead=overhead,
            round_delay=Fraction(1),
            polling_delay=Fraction(m - 1),
        )
    # Polling runs until the first compromised chosen node, at position r;
    # the r-1 uncompromised nodes before it each pay per_round_bits, one
    # correct copy free when r >= 2.
    expected_r = Fraction(0)
    expected_paid = Fraction(0)
    p_two_plus = Fraction(0)
    for r in range(1, m - c + 2):
        p = Fraction(binom(m - r, c - 1), binom(m, c))
        expected_r += r * p
        expected_paid += (r - 1) * p
        if r >= 2:
            p_two_plus += p
    overhead = expected_paid * per_round_bits - params.big_k * p_two_plus
    return ExactMetrics(
        overhead=overhead,
        round_delay=expected_r,
        polling_delay=expected_r * (m - 1),
    )


def witness_metrics(params: ProtocolParams) -> tuple[ExactMetrics, Outcome]:
    """Dispatch on the compromise regime and tag the outcome.

    C > T: FORGED_ACCEPTED, with metrics per the collusion model in this
    module.  Otherwise C < M-T gives valid metrics and VALID_ACCEPTED, and
    M-T <= C <= T gives invalid metrics and NO_VALID_RESULT.  The collusion
    check comes first: when T < C < M-T (only possible for sub-majority T)
    a compromised first chosen node is endorsed by its C-1 >= T colluders
    before any honest node transmits, so the tag names the failure mode the
    adversary can force even though an honest first choice would have been
    endorsed too.
    """
    validate(params)
    m, t, c = params.m, params.t, params.c
    if c > t:
        return _witness_forged_metrics(params), Outcome.FORGED_ACCEPTED
    if c < m - t:
        return witness_valid_metrics(params), Outcome.VALID_ACCEPTED
    return witness_invalid_metrics(params), Outcome.NO_VALID_RESULT


def witness_raw_bits(params: ProtocolParams) -> Fraction:
    """Expected bits sent by uncompromised nodes with no free-copy discount.

    In the invalid regime this is E[i]((M-1)k_w + K) with hypergeometric mean
    E[i] = (M-T)(M-C)/M; in the other regimes it adds K times the probability
    that at least one correct copy was transmitted.
    """
    validate(params)
    m, t, c = params.m, params.t, params.c
    metrics, _ = witness_metrics(params)
    if c > t:
        # A copy is transmitted exactly when the first chosen node is honest.
        p_any_copy = Fraction(m - c, m)
    elif c < m - t:
        p_any_copy = Fraction(1)
    else:
        p_any_copy = 1 - polled_uncompromised_pmf(m, t, c, 0)
    return metrics.overhead + params.big_k * p_any_copy
