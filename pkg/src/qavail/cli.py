"""Command-line frontend.

    qavail amplify --n 4 --good 0 --seed 7
    qavail count --n 4 --good 0 --m 6 --seed 1
    qavail scenario-names --sizes 19,20 --factors 2.0,1.0 --trials 100
    qavail selftest

Output is one JSON document (``config``, ``result``, ``metrics``) or a CSV
table on stdout. Exit codes: 0 success, 1 usage error, 2 domain error,
3 resource cap exceeded. Only the joint-dimension cap is read from the
environment (``QAVAIL_MAX_JOINT_DIM``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

from . import amplify as amp
from . import cognition
from .count import (
    count_distribution,
    distribution_median,
    distribution_mode,
    query_budgets,
)
from .estimate import (
    EstimationConfig,
    choose_m,
    est_amp_distribution,
    estimate_from_outcome,
    max_joint_dim,
    sample_outcome,
)
from .selftest import selftest
from .statevec import (
    CapExceededError,
    DimensionMismatchError,
    GuessPrep,
    NoGoodItemsError,
    Oracle,
    good_probability,
    prepare,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _str_list(text):
    return [v.strip() for v in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qavail", description="Amplitude amplification, estimation and counting simulator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, trials=1):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=trials)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--timing", action="store_true", help="add a wall-clock 'timing' key (breaks byte determinism)")

    def problem(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--good", type=_int_list, default=[], help="comma-separated good item indices")
        p.add_argument("--weights", type=_float_list, default=None, help="comma-separated guess weights (normalized)")

    p = sub.add_parser("amplify", help="one amplitude amplification retrieval per trial")
    problem(p)
    common(p)

    for name in ("estimate", "count"):
        p = sub.add_parser(name, help=f"{name} from the Fourier register")
        problem(p)
        p.add_argument("--m", type=int, default=None, help="register dimension (default: from a)")
        p.add_argument("--distribution", action="store_true", help="CSV: emit (y, probability, t_hat) rows")
        common(p)

    p = sub.add_parser("scenario-letter", help="letter-position availability scenario")
    p.add_argument("--lexicon", default=None, help="word list path (default: bundled sample)")
    p.add_argument("--letter", default="r")
    p.add_argument("--positions", type=_int_list, default=[1, 3])
    p.add_argument("--boost", type=float, default=4.0)
    p.add_argument("--m", type=int, default=256)
    p.add_argument("--budget", type=int, default=60)
    common(p, trials=1)

    p = sub.add_parser("scenario-names", help="famous-names availability scenario")
    p.add_argument("--sizes", type=_int_list, default=[19, 20])
    p.add_argument("--factors", type=_float_list, default=[2.0, 1.0])
    p.add_argument("--labels", type=_str_list, default=["famous", "other"])
    p.add_argument("--m", type=int, default=32)
    p.add_argument("--budget", type=int, default=100)
    common(p, trials=100)

    sub.add_parser("selftest", help="run the reduced-size invariant checks")
    return parser


def _validate(args):
    for key in ("n", "m", "trials", "budget"):
        val = getattr(args, key, None)
        if val is None:
            continue
        if key == "budget" and val < 0:
            raise UsageError("--budget must be >= 0")
        if key != "budget" and val < 1:
            raise UsageError(f"--{key} must be >= 1")
    if getattr(args, "n", None) is not None:
        bad = [g for g in args.good if not 0 <= g < args.n]
        if bad:
            raise UsageError(f"--good indices out of range for --n {args.n}: {bad}")
        if len(set(args.good)) != len(args.good):
            raise UsageError("--good has duplicate indices")
        if args.weights is not None:
            if len(args.weights) != args.n:
                raise UsageError(f"--weights has {len(args.weights)} entries, expected --n {args.n}")
            if any(w < 0 or not math.isfinite(w) for w in args.weights):
                raise UsageError("--weights must be finite and non-negative")
            if not sum(args.weights) > 0:
                raise UsageError("--weights sum to zero")
    if args.command == "scenario-names":
        if not len(args.sizes) == len(args.factors) == len(args.labels) == 2:
            raise UsageError("--sizes, --factors and --labels need exactly two entries each")
        if any(s < 1 for s in args.sizes) or any(not f > 0 for f in args.factors):
            raise UsageError("group sizes must be >= 1 and factors > 0")
    if args.command == "scenario-letter":
        if len(args.letter) != 1:
            raise UsageError("--letter must be a single character")
        if len(args.positions) != 2 or min(args.positions) < 1:
            raise UsageError("--positions needs two 1-based positions")
        if not args.boost > 0:
            raise UsageError("--boost must be positive")


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("format", "timing")}
    cfg["format"] = args.format
    if args.command in ("estimate", "count", "scenario-letter", "scenario-names"):
        cfg["max_joint_dim"] = max_joint_dim()
    return cfg


def _problem(args):
    prep = GuessPrep.uniform() if args.weights is None else GuessPrep.from_weights(args.weights)
    return prep, Oracle(args.n, frozenset(args.good))


def _resolve_m(args, prep, oracle):
    if args.m is not None:
        return args.m
    a = good_probability(prepare(prep, oracle.dim), oracle)
    return choose_m(a) if a > 0 else choose_m(1.0)


def cmd_amplify(args):
    prep, oracle = _problem(args)
    a = good_probability(prepare(prep, oracle.dim), oracle)
    if oracle.t == 0:
        raise NoGoodItemsError("no good items: nothing to retrieve")
    sched = amp.schedule(a)
    runs = []
    for k in range(args.trials):
        run = amp.retrieve(prep, oracle, args.seed + k)
        runs.append({"trial": k, "seed": args.seed + k, "item": run.item, "is_good": run.is_good,
                     "iterations_used": run.iterations_used, "oracle_calls": run.oracle_calls})
    result = {
        "N": oracle.dim,
        "t": oracle.t,
        "a": a,
        "theta": sched.theta,
        "m": sched.m,
        "success_probability": amp.success_probability(prep, oracle, sched.m),
        "availability_by_speed": amp.availability_by_speed(a),
    }
    if args.trials == 1:
        result.update({k: runs[0][k] for k in ("item", "is_good", "iterations_used")})
    result["runs"] = runs
    metrics = {"oracle_calls": sum(r["oracle_calls"] for r in runs)}
    return result, metrics, runs


def _estimation(args):
    prep, oracle = _problem(args)
    M = _resolve_m(args, prep, oracle)
    cfg = EstimationConfig(M, prep, oracle)
    dist = est_amp_distribution(cfg)
    outcomes = []
    for k in range(args.trials):
        out = sample_outcome(cfg, dist, args.seed + k)
        outcomes.append({"trial": k, "seed": args.seed + k, "y": out.y, "a_hat": out.a_hat,
                         "t_hat": oracle.dim * out.a_hat})
    return prep, oracle, cfg, dist, outcomes


def cmd_estimate(args):
    prep, oracle, cfg, dist, outcomes = _estimation(args)
    result = {"N": oracle.dim, "t": oracle.t, "a": cfg.a, "M": cfg.M}
    if args.trials == 1:
        result.update({"y": outcomes[0]["y"], "a_hat": outcomes[0]["a_hat"]})
    result["outcomes"] = [{k: o[k] for k in ("trial", "seed", "y", "a_hat")} for o in outcomes]
    result["distribution"] = dist.tolist()
    metrics = {"q_applications_per_trial": cfg.q_applications, "q_applications": cfg.q_applications * args.trials}
    rows = [{"y": y, "probability": float(p), "t_hat": oracle.dim * estimate_from_outcome(y, cfg.M)}
            for y, p in enumerate(dist)]
    return result, metrics, rows if args.distribution else outcomes


def cmd_count(args):
    prep, oracle, cfg, dist, outcomes = _estimation(args)
    pairs = count_distribution(prep, oracle, cfg.M)
    result = {"N": oracle.dim, "t_true": oracle.t, "a": cfg.a, "M": cfg.M, "biased": not prep.is_uniform}
    if args.trials == 1:
        result.update({"y": outcomes[0]["y"], "a_hat": outcomes[0]["a_hat"], "t_hat": outcomes[0]["t_hat"]})
    result["outcomes"] = outcomes
    result["t_hat_distribution"] = [[v, p] for v, p in pairs]
    result["t_hat_median"] = distribution_median(pairs)
    result["t_hat_mode"] = distribution_mode(pairs)
    metrics = {
        "q_applications_per_trial": cfg.q_applications,
        "q_applications": cfg.q_applications * args.trials,
        "budgets": query_budgets(oracle.dim, cfg.M),
    }
    rows = [{"y": y, "probability": float(p), "t_hat": oracle.dim * estimate_from_outcome(y, cfg.M)}
            for y, p in enumerate(dist)]
    return result, metrics, rows if args.distribution else outcomes


def _group_dict(g):
    return {"label": g.label, "t": g.t, "a": g.a, "recalled": g.recalled, "speed": g.speed,
            "a_hat": g.a_hat, "t_hat": g.t_hat}


def _summary_dict(s):
    return {"n_results": s.n_results, "n_agree": s.n_agree, "n_disagree": s.n_disagree, "n_ties": s.n_ties,
            "agreement_rate": s.agreement_rate, "rank_correlation": s.rank_correlation,
            "no_signal": s.no_signal}


def _trial_rows(results):
    rows = []
    for k, r in enumerate(results):
        row = {"trial": k, "seed": r.seed}
        for i, g in enumerate(r.per_group):
            for key, val in _group_dict(g).items():
                row[f"g{i}_{key}"] = val
        row["agreement"] = "tie" if r.agreement is None else str(r.agreement).lower()
        rows.append(row)
    return rows


def _trials_result(results):
    return [{"trial": k, "seed": r.seed, "groups": [_group_dict(g) for g in r.per_group],
             "agreement": "tie" if r.agreement is None else r.agreement} for k, r in enumerate(results)]


def cmd_scenario_letter(args):
    if args.lexicon:
        with open(args.lexicon, "rb") as fh:
            lex = cognition.load_lexicon(fh)
    else:
        lex = cognition.sample_lexicon()
    results = cognition.run_letter_trials(
        lex, args.letter, args.boost, args.m, args.budget, args.seed, args.trials, tuple(args.positions)
    )
    result = {"N": len(lex), "trials": _trials_result(results)}
    if len(results) >= 2:
        result["summary"] = _summary_dict(cognition.correlation_summary(results))
    cfg_q = args.m * (args.m - 1) // 2
    metrics = {"q_applications": cfg_q * len(args.positions) * args.trials}
    return result, metrics, _trial_rows(results)


def cmd_scenario_names(args):
    groups = [cognition.GroupSpec(lbl, s, f) for lbl, s, f in zip(args.labels, args.sizes, args.factors)]
    report = cognition.run_names_scenario(groups, args.m, args.budget, args.seed, args.trials)
    result = {"N": sum(args.sizes), "trials": _trials_result(report.results),
              "summary": _summary_dict(report.summary)}
    metrics = {"q_applications": args.m * (args.m - 1) // 2 * 2 * args.trials}
    return result, metrics, _trial_rows(report.results)


COMMANDS = {
    "amplify": cmd_amplify,
    "estimate": cmd_estimate,
    "count": cmd_count,
    "scenario-letter": cmd_scenario_letter,
    "scenario-names": cmd_scenario_names,
}


def _emit_csv(rows, stream):
    if not rows:
        return
    flat = [{k: v for k, v in r.items() if not isinstance(v, (list, dict))} for r in rows]
    writer = csv.DictWriter(stream, fieldnames=list(flat[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "selftest":
            return EXIT_OK if selftest(out=stdout) else EXIT_DOMAIN
        _validate(args)
        config = _config(args)
        start = time.perf_counter()
        result, metrics, rows = COMMANDS[args.command](args)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DimensionMismatchError, ValueError) as exc:
        if isinstance(exc, CapExceededError):
            print(f"resource cap: {exc}", file=stderr)
            return EXIT_CAP
        if isinstance(exc, DimensionMismatchError):
            print(f"usage error: {exc}", file=stderr)
            return EXIT_USAGE
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE

    if args.format == "csv":
        buf = io.StringIO()
        _emit_csv(rows, buf)
        stdout.write(buf.getvalue())
    else:
        doc = {"config": config, "result": result, "metrics": metrics}
        if args.timing:
            doc["timing"] = {"wall_seconds": elapsed}
        stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
