import math

import pytest

from fusionassurance.core import Outcome, ProtocolParams
from fusionassurance.oracle import enumerate_exact
from fusionassurance.simulate import monte_carlo


def test_reruns_are_byte_identical():
    params = ProtocolParams(m=11, t=6, c=5, pf=0.5, k=1, k_prime=1, big_k=48)
    first = monte_carlo("variant_round", params, trials=4000, seed=77)
    second = monte_carlo("variant_round", params, trials=4000, seed=77)
    assert first == second


def test_different_seeds_differ():
    params = ProtocolParams(m=11, t=6, c=5, pf=0.5, k=1, k_prime=1)
    a = monte_carlo("variant_round", params, trials=2000, seed=1)
    b = monte_carlo("variant_round", params, trials=2000, seed=2)
    assert a.mean_overhead != b.mean_overhead


def test_single_trial_has_no_spread():
    params = ProtocolParams(m=8, t=4, c=2, pf=0.0, k=1, k_prime=1)
    agg = monte_carlo("variant_round", params, trials=1, seed=5)
    assert agg.stderr_overhead == 0.0
    assert agg.trials == 1


def test_rejects_zero_trials():
    params = ProtocolParams(m=8, t=4, c=2, pf=0.0)
    with pytest.raises(ValueError):
        monte_carlo("variant_round", params, trials=0, seed=5)


def test_outcome_counts_sum_to_trials():
    params = ProtocolParams(m=9, t=5, c=4, pf=0.75, k=1, k_prime=1)
    agg = monte_carlo("variant_round", params, trials=3000, seed=9)
    assert sum(agg.outcome_counts.values()) == 3000
    assert set(agg.outcome_counts) == set(Outcome)


def _assert_within_sigma(mean, stderr, target, sigmas=4.0):
    band = sigmas * max(stderr, 1e-12)
    assert abs(mean - float(target)) <= band, (mean, float(target), stderr)


@pytest.mark.parametrize(
    "scheme,m,t,c,pf",
    [
        ("variant_round", 9, 5, 4, 0.0),
        ("variant_round", 9, 5, 5, 1.0),
        ("one_round", 9, 5, 4, 1.0),
        ("witness_based", 9, 5, 4, 0.0),
    ],
)
def test_simulation_converges_to_enumerated_truth(scheme, m, t, c, pf):
    params = ProtocolParams(m=m, t=t, c=c, pf=pf, k=1, k_prime=2, k_w=4, big_k=48)
    exact, _ = enumerate_exact(scheme, params)
    agg = monte_carlo(scheme, params, trials=20000, seed=123)
    _assert_within_sigma(agg.mean_overhead, agg.stderr_overhead, exact.overhead)
    _assert_within_sigma(agg.mean_round_delay, agg.stderr_round_delay, exact.round_delay)
    _assert_within_sigma(agg.mean_polling_delay, agg.stderr_polling_delay, exact.polling_delay)


def test_stderr_shrinks_with_trials():
    params = ProtocolParams(m=11, t=6, c=6, pf=0.5, k=1, k_prime=1)
    small = monte_carlo("variant_round", params, trials=500, seed=3)
    large = monte_carlo("variant_round", params, trials=50000, seed=3)
    assert large.stderr_overhead < small.stderr_overhead / 5
    # stderr scales like 1/sqrt(n): a factor 100 in trials is a factor ~10
    ratio = small.stderr_overhead / large.stderr_overhead
    assert 5 < ratio < 20 or math.isclose(ratio, 10, rel_tol=0.5)
