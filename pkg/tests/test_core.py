from fractions import Fraction

import pytest

from fusionassurance.core import (
    ExactMetrics,
    InvalidCompromiseCount,
    InvalidProbability,
    InvalidThreshold,
    Outcome,
    ProtocolParams,
    TrialMetrics,
    validate,
)


def test_validate_accepts_reasonable_params():
    validate(ProtocolParams(m=11, t=6, c=5, pf=0.5, k=1, k_prime=1, k_w=4, big_k=48))


def test_validate_threshold_range():
    with pytest.raises(InvalidThreshold):
        validate(ProtocolParams(m=11, t=0, c=0))
    with pytest.raises(InvalidThreshold):
        validate(ProtocolParams(m=11, t=11, c=0))


def test_validate_compromise_count_range():
    with pytest.raises(InvalidCompromiseCount):
        validate(ProtocolParams(m=11, t=6, c=-1))
    with pytest.raises(InvalidCompromiseCount):
        validate(ProtocolParams(m=11, t=6, c=12))


def test_validate_probability_range():
    with pytest.raises(InvalidProbability):
        validate(ProtocolParams(m=11, t=6, c=5, pf=-0.1))
    with pytest.raises(InvalidProbability):
        validate(ProtocolParams(m=11, t=6, c=5, pf=1.5))


def test_params_are_frozen():
    params = ProtocolParams(m=11, t=6, c=5)
    with pytest.raises(Exception):
        params.m = 12


def test_trial_metrics_raw_bits_discount():
    # raw adds the fusion-result size back once any correct copy was sent.
    none_sent = TrialMetrics(
        overhead_bits=10,
        round_delay=1,
        polling_delay=5,
        outcome=Outcome.NO_VALID_RESULT,
        correct_copies_by_uncompromised=0,
    )
    one_sent = TrialMetrics(
        overhead_bits=10,
        round_delay=1,
        polling_delay=5,
        outcome=Outcome.VALID_ACCEPTED,
        correct_copies_by_uncompromised=1,
    )
    assert none_sent.raw_bits(48) == 10
    assert one_sent.raw_bits(48) == 58
    assert one_sent.raw_bits(0) == 10


def test_exact_metrics_rejects_negative():
    with pytest.raises(ValueError):
        ExactMetrics(Fraction(-1), Fraction(0), Fraction(0))
