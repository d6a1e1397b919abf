"""Exact integer and rational building blocks for the protocol analysis.

Every probability in the analytic modules is a ratio of products of binomial
coefficients, so the whole analysis layer runs on arbitrary-precision integers
and ``fractions.Fraction``.  Floating point appears only at output boundaries.

The binomial convention used throughout: C(n, r) is 0 whenever the pair is
infeasible (r < 0, r > n, or n < 0).  Several stop-distribution index ranges
in the analysis lean on that convention instead of clamping their bounds.
"""
from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["binom", "hypergeom"]


def binom(n: int, r: int) -> int:
    """Binomial coefficient C(n, r) with the zero-outside-range convention.

    Returns 0 when r < 0, r > n, or n < 0, rather than raising; the analytic
    sums rely on infeasible terms vanishing.
    """
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


def hypergeom(total: int, marked: int, drawn: int, hits: int) -> Fraction:
    """Probability of `hits` marked elements in a uniform draw of `drawn`.

    Computes C(marked, hits) * C(total - marked, drawn - hits) / C(total, drawn)
    exactly.  Returns 0 for infeasible hit counts.  Raises ZeroDivisionError
    when C(total, drawn) = 0 (e.g. drawn > total), since the conditional
    probability is undefined there.

    All arguments must be nonnegative.
    """
    if min(total, marked, drawn, hits) < 0:
        raise ValueError("hypergeom arguments must be nonnegative")
    return Fraction(
        binom(marked, hits) * binom(total - marked, drawn - hits),
        binom(total, drawn),
    )
