from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionassurance.combinatorics import binom
from fusionassurance.core import Outcome, ProtocolParams, RegimeError
from fusionassurance.witness import (
    forged_acceptance_prob,
    polled_uncompromised_pmf,
    witness_invalid_metrics,
    witness_metrics,
    witness_raw_bits,
    witness_valid_metrics,
)


def test_valid_regime_overhead_is_one_mac_round():
    metrics = witness_valid_metrics(ProtocolParams(m=11, t=6, c=2, k_w=4))
    assert metrics.overhead == 40
    metrics = witness_valid_metrics(ProtocolParams(m=21, t=11, c=2, k_w=3))
    assert metrics.overhead == 60


def test_valid_regime_round_delay_examples():
    # Three nodes, one compromised: 2/3 chance of one round, 1/3 of two.
    metrics = witness_valid_metrics(ProtocolParams(m=3, t=1, c=1, k_w=4))
    assert metrics.round_delay == Fraction(4, 3)
    assert metrics.polling_delay == Fraction(8, 3)


@given(st.data())
@settings(max_examples=200)
def test_valid_regime_round_delay_bounded_by_c_plus_1(data):
    m = data.draw(st.integers(2, 30))
    t = data.draw(st.integers(1, m - 1))
    c = data.draw(st.integers(0, max(0, m - t - 1)))
    metrics = witness_valid_metrics(ProtocolParams(m=m, t=t, c=c, k_w=4))
    assert 1 <= metrics.round_delay <= c + 1


def test_invalid_regime_quoted_maxima():
    metrics = witness_invalid_metrics(ProtocolParams(m=11, t=6, c=5, k_w=4))
    assert metrics.overhead == Fraction(1200, 11)
    assert metrics.round_delay == 5
    assert metrics.polling_delay == 50
    metrics = witness_invalid_metrics(ProtocolParams(m=21, t=11, c=10, k_w=3))
    assert metrics.overhead == Fraction(2200, 7)
    assert metrics.round_delay == 10
    assert metrics.polling_delay == 200


def test_invalid_regime_rejects_other_regimes():
    with pytest.raises(RegimeError):
        witness_invalid_metrics(ProtocolParams(m=11, t=6, c=2, k_w=4))
    with pytest.raises(RegimeError):
        witness_valid_metrics(ProtocolParams(m=11, t=6, c=5, k_w=4))


@given(st.data())
@settings(max_examples=200)
def test_polled_pmf_identity_and_normalization(data):
    m = data.draw(st.integers(2, 24))
    t = data.draw(st.integers((m + 1) // 2, m - 1))
    c = data.draw(st.integers(m - t, t))
    total = Fraction(0)
    for i in range(0, m - t + 1):
        p = polled_uncompromised_pmf(m, t, c, i)
        # same distribution written with the draw roles swapped
        alt = Fraction(binom(m - c, i) * binom(c, m - t - i), binom(m, m - t))
        assert p == alt
        total += p
    assert total == 1


def test_forged_acceptance_prob_bounds():
    assert forged_acceptance_prob(11, 6, 4) <= Fraction(1, 1024)
    assert forged_acceptance_prob(21, 11, 3) <= Fraction(1, 1024)


def test_forged_acceptance_prob_decreases_in_mac_length():
    previous = Fraction(1)
    for k_w in range(1, 8):
        current = forged_acceptance_prob(11, 6, k_w)
        assert current < previous
        previous = current


def test_dispatch_tags_regimes():
    assert witness_metrics(ProtocolParams(m=11, t=6, c=2, k_w=4))[1] is Outcome.VALID_ACCEPTED
    assert witness_metrics(ProtocolParams(m=11, t=6, c=6, k_w=4))[1] is Outcome.NO_VALID_RESULT
    assert witness_metrics(ProtocolParams(m=11, t=6, c=7, k_w=4))[1] is Outcome.FORGED_ACCEPTED
    # sub-majority threshold: collusion outranks the honest-majority branch
    assert witness_metrics(ProtocolParams(m=11, t=3, c=4, k_w=4))[1] is Outcome.FORGED_ACCEPTED


def test_raw_bits_never_below_net_overhead():
    for c in range(0, 12):
        params = ProtocolParams(m=11, t=6, c=c, k_w=4, big_k=48)
        metrics, _ = witness_metrics(params)
        raw = witness_raw_bits(params)
        assert raw >= metrics.overhead
        assert raw <= metrics.overhead + 48


def test_raw_bits_table_cells():
    # the published one-round comparison quotes these witness raw maxima
    assert witness_raw_bits(ProtocolParams(m=11, t=6, c=5, k_w=4, big_k=48)) == 240
    value = witness_raw_bits(ProtocolParams(m=21, t=11, c=10, k_w=3, big_k=48))
    assert value == Fraction(3960, 7)
    assert abs(float(value) - 566) < 1
