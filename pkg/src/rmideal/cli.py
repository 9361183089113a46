"""Command-line front end.

Subcommands: sample, invariants, std-pairs, zcount, experiment, staircase-svg.
Exit codes: 0 ok, 1 assertion failure, 2 usage/input error, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .divisors import z_asymptotic, z_count, z_count_bruteforce
from .errors import (
    ArityError,
    ConfigError,
    GuardExceededError,
    InternalInvariantError,
    NotZeroDimensionalError,
    UnitIdealError,
)
from .experiments import (
    ExperimentConfig,
    config_from_dict,
    load_config,
    run_experiment,
    write_outputs,
)
from .ideals import MonomialIdeal, ideal_from_dict, ideal_to_dict
from .pairs import enumerate_standard_pairs
from .render import RenderSpec, staircase_svg
from .sampling import ModelParams, PSpec, sample_ideal
from .staircase import max_staircase_product

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _add_model_args(p: argparse.ArgumentParser, with_trials: bool = False) -> None:
    p.add_argument("--n", type=int, help="number of variables")
    p.add_argument("--max-degree", "-D", type=int, help="degree bound D")
    p.add_argument("--p", type=float, help="explicit selection probability")
    p.add_argument("--k", type=float, help="p = D^-k")
    p.add_argument("--c", type=float, help="with --t: p = c * D^-t")
    p.add_argument("--t", type=int, help="with --c: p = c * D^-t")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--trial", type=int, default=0, help="trial index (default 0)")
    if with_trials:
        p.add_argument("--trials", type=int, default=1, help="number of trials")


def _pspec_from_args(args) -> PSpec:
    given = [x for x in ("p", "k", "c") if getattr(args, x, None) is not None]
    if args.p is not None:
        return PSpec("explicit", p=args.p)
    if args.k is not None:
        return PSpec("power", k=args.k)
    if args.c is not None:
        if args.t is None:
            raise ConfigError("--c needs --t")
        return PSpec("scaled", c=args.c, t=args.t)
    raise ConfigError(f"give one of --p, --k, or --c/--t (got {given or 'none'})")


def _params_from_args(args) -> ModelParams:
    if args.n is None or args.max_degree is None:
        raise ConfigError("sampling needs --n and --max-degree")
    return ModelParams.from_spec(args.n, args.max_degree, _pspec_from_args(args), args.seed)


def _load_or_sample(args) -> tuple[MonomialIdeal, dict]:
    """Ideal from a JSON file when given, otherwise one model draw."""
    if getattr(args, "ideal", None):
        data = json.loads(Path(args.ideal).read_text())
        return ideal_from_dict(data), {"source": args.ideal}
    params = _params_from_args(args)
    ideal, raw = sample_ideal(params, args.trial)
    meta = params.metadata()
    meta.update({"trial": args.trial, "raw_count": raw})
    return ideal, meta


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_sample(args) -> int:
    params = _params_from_args(args)
    lines = []
    for trial in range(args.trial, args.trial + args.trials):
        ideal, raw = sample_ideal(params, trial)
        doc = {"meta": {**params.metadata(), "trial": trial, "raw_count": raw}}
        doc.update(ideal_to_dict(ideal))
        lines.append(json.dumps(doc, sort_keys=True))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_invariants(args) -> int:
    ideal, meta = _load_or_sample(args)
    census = enumerate_standard_pairs(ideal, guard=args.guard, pair_cap=0)
    cap_degree = args.max_degree
    if cap_degree is None:
        cap_degree = max((sum(g) for g in ideal.generators), default=1)
    report = {
        "n": ideal.n,
        "num_min_gens": ideal.num_generators,
        "dim": census.dim,
        "deg": census.deg,
        "adeg": census.adeg,
        "sp_by_dim": list(census.counts_by_free_size),
        "max_staircase_product": max_staircase_product(ideal, cap_degree, guard=args.guard),
        "product_degree_cap": cap_degree,
    }
    if args.format == "csv":
        keys = [k for k in report if k != "sp_by_dim"]
        text = (",".join(keys + [f"sp{i}" for i in range(ideal.n + 1)]) + "\n"
                + ",".join(str(report[k]) for k in keys)
                + "," + ",".join(str(x) for x in report["sp_by_dim"]) + "\n")
    else:
        text = json.dumps({"meta": meta, **report}, sort_keys=True, indent=2) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_std_pairs(args) -> int:
    ideal, meta = _load_or_sample(args)
    census = enumerate_standard_pairs(ideal, guard=args.guard, pair_cap=args.pair_cap)
    doc = {"meta": meta, **census.to_dict()}
    _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
    return EXIT_OK


def cmd_zcount(args) -> int:
    exact = z_count(args.n, args.d)
    lines = [f"z_count({args.n}, {args.d}) = {exact}"]
    if args.asymptotic:
        main = z_asymptotic(args.n, args.d)
        ratio = exact / main if main else float("nan")
        lines.append(f"main_term = {main!r}")
        lines.append(f"ratio = {ratio!r}")
    if args.brute_force:
        brute = z_count_bruteforce(args.n, args.d, guard=args.guard)
        lines.append(f"brute_force = {brute} ({'agree' if brute == exact else 'DISAGREE'})")
        if brute != exact:
            sys.stdout.write("\n".join(lines) + "\n")
            return EXIT_ASSERTION
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_experiment(args) -> int:
    overrides = {
        "name": args.name, "n": args.n, "epsilon": args.epsilon,
        "trials": args.trials, "seed": args.seed, "workers": args.workers,
        "guard": args.guard_opt, "pass_threshold": args.threshold,
        "subset_size": args.subset_size, "table_mode": args.table_mode,
        "p": args.p, "k": args.k, "c": args.c, "t": args.t,
        "d_grid": [int(x) for x in args.d_grid.split(",")] if args.d_grid else None,
        "f_grid": [float(x) for x in args.f_grid.split(",")] if args.f_grid else None,
    }
    if args.config:
        cfg = load_config(args.config, overrides)
    else:
        data = {k: v for k, v in overrides.items() if v is not None}
        if "name" not in data:
            raise ConfigError("--name is required without --config")
        cfg = config_from_dict(data)
    result = run_experiment(cfg)
    jsonl_path, csv_path = write_outputs(result, args.out)
    for row in result.summaries:
        sys.stdout.write(json.dumps(row.values, sort_keys=True, default=str) + "\n")
    sys.stdout.write(json.dumps({"verdict": result.verdict,
                                 "failures": result.failures}, sort_keys=True) + "\n")
    sys.stdout.write(f"wrote {jsonl_path} and {csv_path}\n")
    return EXIT_OK if result.ok else EXIT_ASSERTION


def cmd_staircase_svg(args) -> int:
    ideal, _ = _load_or_sample(args)
    levels = tuple(float(x) for x in args.levels.split(",")) if args.levels else ()
    spec = RenderSpec(levels=levels, axis_cap=args.cap)
    _emit(staircase_svg(ideal, spec), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rmideal",
        description="Monomial-ideal invariants and Monte Carlo experiments "
                    "for the random model I(n, D, p).",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw ideals from the model")
    _add_model_args(p, with_trials=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("invariants", help="dim/deg/adeg and pair counts of an ideal")
    p.add_argument("ideal", nargs="?", help="ideal JSON file (omit to sample)")
    _add_model_args(p)
    p.add_argument("--guard", type=int, default=100_000_000)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("std-pairs", help="full standard-pair census as JSON")
    p.add_argument("ideal", nargs="?")
    _add_model_args(p)
    p.add_argument("--guard", type=int, default=100_000_000)
    p.add_argument("--pair-cap", type=int, default=1_000_000)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_std_pairs)

    p = sub.add_parser("zcount", help="summatory divisor count Z(n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--asymptotic", action="store_true")
    p.add_argument("--brute-force", action="store_true")
    p.add_argument("--guard", type=int, default=50_000_000)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_zcount)

    p = sub.add_parser("experiment", help="run a Monte Carlo experiment")
    p.add_argument("--config", help="JSON or TOML config file")
    p.add_argument("--name", choices=(
        "dimension", "band", "degree", "sp-region", "sp-count", "table1", "L-asymptotics"))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--t", type=int)
    p.add_argument("--d-grid", help="comma-separated D values")
    p.add_argument("--f-grid", help="comma-separated f values (L-asymptotics)")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--threshold", type=float)
    p.add_argument("--subset-size", type=int)
    p.add_argument("--table-mode", choices=("verify", "sample"))
    p.add_argument("--guard", dest="guard_opt", type=int)
    p.add_argument("--out", default="rmideal-out", help="output directory")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("staircase-svg", help="render a staircase figure")
    p.add_argument("ideal", nargs="?")
    _add_model_args(p)
    p.add_argument("--levels", help="comma-separated hyperbola levels (x+1)(y+1)=c")
    p.add_argument("--cap", type=int, help="axis cap in lattice units")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_staircase_svg)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceededError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InternalInvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    except (ConfigError, UnitIdealError, NotZeroDimensionalError, ArityError,
            ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
