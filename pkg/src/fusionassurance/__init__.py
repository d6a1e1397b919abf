"""Overhead and delay analysis of witness-vouched data-fusion assurance.

A sensor network's base station must decide whether the fusion result it was
handed is genuine when up to C of the M fusion-capable nodes may be
compromised.  This package analyzes three assurance schemes over that threat
model: a witness-based scheme where each witness countersigns the result with
a short MAC, a variant-round direct-voting scheme that re-selects a
disagreeing node as the next transmitter, and a one-round direct-voting
scheme with a fixed polling pass and stored candidate results.

Three independent layers answer the same questions and cross-check each
other: exact closed forms over rationals (``witness``, ``variant_round``),
shared protocol state machines driven either by a seeded RNG (``simulate``)
or by exhaustive enumeration (``oracle``), and a CSV-emitting command line
(``fusionassurance``) for table and curve reproduction.
"""
from .combinatorics import binom, hypergeom
from .core import (
    AggregateMetrics,
    ExactMetrics,
    InvalidCompromiseCount,
    InvalidProbability,
    InvalidThreshold,
    NodeKind,
    NonTerminationError,
    Outcome,
    PreconditionError,
    ProtocolParams,
    RegimeError,
    SizeBoundError,
    TrialMetrics,
    UnsupportedPfError,
    validate,
)
from .oracle import enumerate_exact, enumerate_exact_randomized, enumerate_trials
from .protocols import (
    CORRECT,
    adversary_value,
    adversary_vote,
    resolve_scheme,
    run_one_round,
    run_variant_round,
    run_witness_based,
    sample_roster,
)
from .simulate import monte_carlo
from .variant_round import (
    stop_position_pmf,
    stop_position_support,
    vr_correct_copy_prob,
    vr_metrics,
    vr_novalid_pf0,
    vr_novalid_pf1,
    vr_raw_bits,
    vr_valid_pf0,
    vr_valid_pf1,
)
from .witness import (
    forged_acceptance_prob,
    polled_uncompromised_pmf,
    witness_invalid_metrics,
    witness_metrics,
    witness_raw_bits,
    witness_valid_metrics,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateMetrics",
    "CORRECT",
    "ExactMetrics",
    "InvalidCompromiseCount",
    "InvalidProbability",
    "InvalidThreshold",
    "NodeKind",
    "NonTerminationError",
    "Outcome",
    "PreconditionError",
    "ProtocolParams",
    "RegimeError",
    "SizeBoundError",
    "TrialMetrics",
    "UnsupportedPfError",
    "adversary_value",
    "adversary_vote",
    "binom",
    "enumerate_exact",
    "enumerate_exact_randomized",
    "enumerate_trials",
    "forged_acceptance_prob",
    "hypergeom",
    "monte_carlo",
    "polled_uncompromised_pmf",
    "resolve_scheme",
    "run_one_round",
    "run_variant_round",
    "run_witness_based",
    "sample_roster",
    "stop_position_pmf",
    "stop_position_support",
    "validate",
    "vr_correct_copy_prob",
    "vr_metrics",
    "vr_novalid_pf0",
    "vr_novalid_pf1",
    "vr_raw_bits",
    "vr_valid_pf0",
    "vr_valid_pf1",
    "witness_invalid_metrics",
    "witness_metrics",
    "witness_raw_bits",
    "witness_valid_metrics",
    "__version__",
]
