"""Command-line front end: analytic evaluation, simulation, tables, sweeps.

Every subcommand emits one long-format CSV on standard output with the schema

    scheme,M,T,C,pf,k,kprime,kw,bigk,metric,value,stderr,trials,seed,exact_fraction

preceded by ``#`` comment lines that record the tool version, the resolved
parameter set, the RNG algorithm, and any convention the numbers depend on,
so a row can be re-derived from its own file.  Fields that do not apply to a
row (stderr on analytic rows, exact fractions on simulated ones) are left
empty.  Exit codes: 2 for unparseable or missing flags, 3 for parameter sets
the requested analysis rejects (regime, precondition, unsupported pf), with
the error name on standard error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import (
    InvalidCompromiseCount,
    InvalidProbability,
    InvalidThreshold,
    PreconditionError,
    ProtocolParams,
    RegimeError,
    SizeBoundError,
    UnsupportedPfError,
)
from .rng import ALGORITHM, substream
from .simulate import monte_carlo
from .variant_round import vr_metrics, vr_raw_bits
from .witness import witness_metrics, witness_raw_bits

__version__ = "0.1.0"

_SCHEMA = [
    "scheme", "M", "T", "C", "pf", "k", "kprime", "kw", "bigk",
    "metric", "value", "stderr", "trials", "seed", "exact_fraction",
]
_METRIC_ORDER = {"overhead": 0, "round_delay": 1, "polling_delay": 2, "raw_bits": 3}
_PARAM_ERRORS = (
    InvalidThreshold,
    InvalidCompromiseCount,
    InvalidProbability,
    RegimeError,
    PreconditionError,
    UnsupportedPfError,
    SizeBoundError,
)

_PILOT_TRIALS = 600
_PILOT_BAND = 6.0


def _fmt(value: float) -> str:
    return f"{float(value):.12g}"


def _row(
    scheme: str,
    params: ProtocolParams,
    metric: str,
    value: str,
    stderr: str = "",
    trials: str = "",
    seed: str = "",
    exact: str = "",
    pf_applies: bool = True,
) -> List[str]:
    return [
        scheme,
        str(params.m),
        str(params.t),
        str(params.c),
        f"{params.pf:g}" if pf_applies else "",
        str(params.k),
        str(params.k_prime),
        str(params.k_w),
        str(params.big_k),
        metric,
        value,
        stderr,
        trials,
        seed,
        exact,
    ]


def _sort_key(row: Sequence[str]) -> Tuple:
    pf = float(row[4]) if row[4] else -1.0
    return (row[0], pf, int(row[2]), int(row[3]), _METRIC_ORDER.get(row[9], 9))


def _emit(header: Iterable[str], rows: List[List[str]], out=None) -> None:
    out = out or sys.stdout
    for line in header:
        out.write(f"# {line}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_SCHEMA)
    for row in sorted(rows, key=_sort_key):
        writer.writerow(row)


def _base_header(command: str, settings: Dict[str, object]) -> List[str]:
    pairs = " ".join(f"{key}={value}" for key, value in sorted(settings.items()))
    return [
        f"fusionassurance {__version__} {command}",
        f"rng={ALGORITHM}",
        f"settings: {pairs}",
    ]


def _analytic_rows(scheme: str, params: ProtocolParams) -> List[List[str]]:
    if scheme == "witness_based":
        metrics, _ = witness_metrics(params)
        raw = witness_raw_bits(params)
        pf_applies = False
    else:
        metrics, _ = vr_metrics(params)
        raw = vr_raw_bits(params)
        pf_applies = True
    values = [
        ("overhead", metrics.overhead),
        ("round_delay", metrics.round_delay),
        ("polling_delay", metrics.polling_delay),
        ("raw_bits", raw),
    ]
    return [
        _row(scheme, params, name, _fmt(value), exact=str(Fraction(value)),
             pf_applies=pf_applies)
        for name, value in values
    ]


def _sim_rows(
    scheme: str,
    params: ProtocolParams,
    trials: int,
    seed: int,
    metric_filter: Optional[str] = None,
) -> List[List[str]]:
    agg = monte_carlo(scheme, params, trials, seed)
    values = [
        ("overhead", agg.mean_overhead, agg.stderr_overhead),
        ("round_delay", agg.mean_round_delay, agg.stderr_round_delay),
        ("polling_delay", agg.mean_polling_delay, agg.stderr_polling_delay),
        ("raw_bits", agg.mean_raw_bits, agg.stderr_raw_bits),
    ]
    pf_applies = scheme != "witness_based"
    return [
        _row(scheme, params, name, _fmt(mean), stderr=_fmt(err),
             trials=str(trials), seed=str(seed), pf_applies=pf_applies)
        for name, mean, err in values
        if metric_filter is None or name == metric_filter
    ]


# ---------------------------------------------------------------------------
# flag handling
# ---------------------------------------------------------------------------

_COMMON_DEFAULTS = {"pf": 0.0, "k": 1, "kprime": 1, "kw": 4, "bigk": 0}
_SIM_DEFAULTS = {"trials": 10000, "seed": 0}


def _add_param_flags(parser: argparse.ArgumentParser, schemes: List[str]) -> None:
    parser.add_argument("--scheme", choices=schemes)
    parser.add_argument("--m", type=int)
    parser.add_argument("--t", type=int)
    parser.add_argument("--c", type=int)
    parser.add_argument("--pf", type=float)
    parser.add_argument("--k", type=int)
    parser.add_argument("--kprime", type=int)
    parser.add_argument("--kw", type=int)
    parser.add_argument("--bigk", type=int)
    parser.add_argument("--config", help="flat JSON file of flag values")


def _merge_config(
    parser: argparse.ArgumentParser,
    args: argparse.Namespace,
    defaults: Dict[str, object],
    required: List[str],
) -> Dict[str, object]:
    """Resolve each flag as: command line, else config file, else default."""
    config: Dict[str, object] = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                config = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read --config {args.config}: {exc}")
        if not isinstance(config, dict):
            parser.error(f"--config {args.config} must hold a flat JSON object")
    resolved: Dict[str, object] = {}
    for key in list(defaults) + required:
        value = getattr(args, key, None)
        if value is None:
            value = config.get(key, defaults.get(key))
        if value is None:
            parser.error(f"missing required flag --{key.replace('_', '-')}")
        resolved[key] = value
    return resolved


def _params_from(resolved: Dict[str, object]) -> ProtocolParams:
    return ProtocolParams(
        m=int(resolved["m"]),
        t=int(resolved["t"]),
        c=int(resolved["c"]),
        pf=float(resolved["pf"]),
        k=int(resolved["k"]),
        k_prime=int(resolved["kprime"]),
        k_w=int(resolved["kw"]),
        big_k=int(resolved["bigk"]),
    )


_SCHEME_FLAGS = {"witness": "witness_based", "vr": "variant_round", "or": "one_round"}


def _scheme_name(parser: argparse.ArgumentParser, flag: str) -> str:
    if flag in _SCHEME_FLAGS:
        return _SCHEME_FLAGS[flag]
    if flag in _SCHEME_FLAGS.values():
        return flag
    parser.error(f"unknown scheme {flag!r}; expected one of {sorted(_SCHEME_FLAGS)}")


def _parse_c_range(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analytic(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    resolved = _merge_config(
        parser, args, dict(_COMMON_DEFAULTS), ["scheme", "m", "t", "c"]
    )
    scheme = _scheme_name(parser, str(resolved["scheme"]))
    params = _params_from(resolved)
    rows = _analytic_rows(scheme, params)
    _emit(_base_header("analytic", resolved), rows)
    return 0


def cmd_simulate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    resolved = _merge_config(
        parser, args, {**_COMMON_DEFAULTS, **_SIM_DEFAULTS}, ["scheme", "m", "t", "c"]
    )
    scheme = _scheme_name(parser, str(resolved["scheme"]))
    params = _params_from(resolved)
    rows = _sim_rows(scheme, params, int(resolved["trials"]), int(resolved["seed"]))
    _emit(_base_header("simulate", resolved), rows)
    return 0


def _table_grid(m: int) -> List[Tuple[int, int]]:
    """Search cells for the table maxima: majority thresholds, C up to T."""
    return [(t, c) for t in range(m // 2, m) for c in range(0, t + 1)]


def _cell_seed(seed: int, t: int, c: int) -> int:
    return substream(seed, (t << 16) | c).next_word()


def _max_simulated(
    scheme: str,
    m: int,
    pf: float,
    metric: str,
    trials: int,
    seed: int,
    make_params,
) -> Tuple[ProtocolParams, float, float, int]:
    """Grid argmax of a simulated mean, in two stages.

    A short pilot run per cell bounds each cell's mean; cells whose upper
    band falls below the best cell's lower band cannot win and are dropped
    before the full-length runs.  Bands are wide (6 standard errors) so the
    pruning is conservative; the final ranking uses only full-length runs.
    """
    attr = f"mean_{metric}", f"stderr_{metric}"
    pilot: List[Tuple[float, float, Tuple[int, int]]] = []
    for t, c in _table_grid(m):
        agg = monte_carlo(scheme, make_params(t, c, pf), _PILOT_TRIALS,
                          _cell_seed(seed, t, c))
        pilot.append((getattr(agg, attr[0]), getattr(agg, attr[1]), (t, c)))
    best_floor = max(mean - _PILOT_BAND * err for mean, err, _ in pilot)
    survivors = [
        cell for mean, err, cell in pilot
        if mean + _PILOT_BAND * err >= best_floor
    ]
    best: Optional[Tuple[float, float, Tuple[int, int]]] = None
    for t, c in survivors:
        agg = monte_carlo(scheme, make_params(t, c, pf), trials,
                          _cell_seed(seed, t, c))
        candidate = (getattr(agg, attr[0]), getattr(agg, attr[1]), (t, c))
        if best is None or candidate[0] > best[0]:
            best = candidate
    mean, err, (t, c) = best
    return make_params(t, c, pf), mean, err, trials


def _max_analytic(metric_of, m: int, make_params) -> Tuple[ProtocolParams, Fraction]:
    best_params = None
    best_value = None
    for t, c in _table_grid(m):
        params = make_params(t, c)
        value = metric_of(params)
        if best_value is None or value > best_value:
            best_params, best_value = params, value
    return best_params, best_value


def cmd_table(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    resolved = _merge_config(parser, args, dict(_SIM_DEFAULTS), [])
    trials = int(resolved["trials"])
    seed = int(resolved["seed"])
    which = args.which
    rows: List[List[str]] = []
    header = _base_header(f"table {which}", resolved)
    header.append(
        "grid: T in [floor(M/2), M-1], C in [0, T]; argmax (T, C) reported "
        "in the T and C columns"
    )
    header.append(
        "per-cell seeds are derived from the base seed and the cell's (T, C)"
    )
    kw_for = {11: 4, 21: 3}
    if which == 1:
        header.append(
            "conventions: k=0 (agreeing votes free), kprime=1, K=0; metric is "
            "assurance overhead"
        )
        for m in (11, 21):
            def make(t: int, c: int, pf: float = 0.0) -> ProtocolParams:
                return ProtocolParams(m=m, t=t, c=c, pf=pf, k=0, k_prime=1,
                                      k_w=kw_for[m], big_k=0)

            params, value = _max_analytic(
                lambda p: witness_metrics(p)[0].overhead, m, make
            )
            rows.append(_row("witness_based", params, "overhead", _fmt(value),
                             exact=str(value), pf_applies=False))
            for pf in (0.0, 1.0):
                params, value = _max_analytic(
                    lambda p: vr_metrics(p)[0].overhead,
                    m,
                    lambda t, c: make(t, c, pf),
                )
                rows.append(_row("variant_round", params, "overhead",
                                 _fmt(value), exact=str(value)))
            for pf in (0.25, 0.5, 0.75):
                params, mean, err, n = _max_simulated(
                    "variant_round", m, pf, "overhead", trials, seed, make
                )
                rows.append(_row("variant_round", params, "overhead",
                                 _fmt(mean), stderr=_fmt(err), trials=str(n),
                                 seed=str(seed)))
    else:
        header.append(
            "conventions: k=0 (agreeing votes free), K=48; metric is raw bits "
            "sent by uncompromised nodes (free copy included)"
        )
        for m in (11, 21):
            def make(t: int, c: int, pf: float = 0.0) -> ProtocolParams:
                return ProtocolParams(m=m, t=t, c=c, pf=pf, k=0, k_prime=1,
                                      k_w=kw_for[m], big_k=48)

            params, value = _max_analytic(witness_raw_bits, m, make)
            rows.append(_row("witness_based", params, "raw_bits", _fmt(value),
                             exact=str(value), pf_applies=False))
            for pf in (0.0, 0.5, 1.0):
                params, mean, err, n = _max_simulated(
                    "one_round", m, pf, "raw_bits", trials, seed, make
                )
                rows.append(_row("one_round", params, "raw_bits", _fmt(mean),
                                 stderr=_fmt(err), trials=str(n),
                                 seed=str(seed)))
    _emit(header, rows)
    return 0


def cmd_sweep(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    defaults = {
        **_COMMON_DEFAULTS,
        **_SIM_DEFAULTS,
        "scheme_list": "witness,vr,or",
        "pf_list": "0,0.25,0.5,0.75,1",
    }
    defaults.pop("pf")
    resolved = _merge_config(parser, args, defaults, ["m", "t", "c_range"])
    schemes = [
        _scheme_name(parser, s.strip())
        for s in str(resolved["scheme_list"]).split(",")
        if s.strip()
    ]
    pf_values = [
        float(s) for s in str(resolved["pf_list"]).split(",") if s.strip()
    ]
    c_values = _parse_c_range(str(resolved["c_range"]))
    metric = args.metric
    rows: List[List[str]] = []
    for scheme in schemes:
        # The witness scheme has no forged-endorsement coin, so the pf axis
        # would only repeat identical rows.
        scheme_pfs = [0.0] if scheme == "witness_based" else pf_values
        for pf in scheme_pfs:
            for c in c_values:
                params = ProtocolParams(
                    m=int(resolved["m"]), t=int(resolved["t"]), c=c, pf=pf,
                    k=int(resolved["k"]), k_prime=int(resolved["kprime"]),
                    k_w=int(resolved["kw"]), big_k=int(resolved["bigk"]),
                )
                rows.extend(_sim_rows(scheme, params, int(resolved["trials"]),
                                      int(resolved["seed"]), metric))
    _emit(_base_header("sweep", resolved), rows)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionassurance",
        description="Analysis and simulation of data-fusion assurance schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analytic = sub.add_parser(
        "analytic", help="exact expected metrics from the closed forms"
    )
    _add_param_flags(p_analytic, ["witness", "vr"])
    p_analytic.set_defaults(func=cmd_analytic)

    p_simulate = sub.add_parser("simulate", help="seeded Monte Carlo estimates")
    _add_param_flags(p_simulate, ["witness", "vr", "or"])
    p_simulate.add_argument("--trials", type=int)
    p_simulate.add_argument("--seed", type=int)
    p_simulate.set_defaults(func=cmd_simulate)

    p_table = sub.add_parser(
        "table", help="grid maxima reproducing the published summary tables"
    )
    p_table.add_argument("which", type=int, choices=[1, 2])
    p_table.add_argument("--trials", type=int)
    p_table.add_argument("--seed", type=int)
    p_table.add_argument("--config", help="flat JSON file of flag values")
    p_table.set_defaults(func=cmd_table)

    p_sweep = sub.add_parser(
        "sweep", help="long-format curves over a range of compromise counts"
    )
    p_sweep.add_argument("--m", type=int)
    p_sweep.add_argument("--t", type=int)
    p_sweep.add_argument("--scheme-list", dest="scheme_list")
    p_sweep.add_argument("--pf-list", dest="pf_list")
    p_sweep.add_argument("--c-range", dest="c_range")
    p_sweep.add_argument("--k", type=int)
    p_sweep.add_argument("--kprime", type=int)
    p_sweep.add_argument("--kw", type=int)
    p_sweep.add_argument("--bigk", type=int)
    p_sweep.add_argument("--trials", type=int)
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument(
        "--metric", choices=sorted(_METRIC_ORDER), help="emit only this metric"
    )
    p_sweep.add_argument("--config", help="flat JSON file of flag values")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except _PARAM_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
