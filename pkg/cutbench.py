#!/usr/bin/env python3
"""
cutbench command line

Usage:
    python cutbench.py gen --family '{kind: planted_cut, n1: 32, n2: 32, cut: 3}' --out g.txt
    python cutbench.py gen --family '{kind: gnp, n: 64, p: 0.2}' --stream random --out s.txt
    python cutbench.py run experiment.yml --trials 5 --out rows.csv
    python cutbench.py verify g.txt 3
    python cutbench.py solve g.txt --algorithm ec_linear --ledger ledger.csv
    python cutbench.py bench stream_memory --out results/
    python cutbench.py moments --c 2 --d 4 --p 0.5 --f 1 --g 3 --exact

Flags given on the command line override CUTBENCH_* environment variables.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import yaml
from pydantic import ValidationError

from connectivity import CutbenchSettings, EcConfig, ec_linear, ec_loglog, ec_mdcp, load_config
from errors import CutBenchError, ExceptionHandler, InvalidInputError
from graphs import load_graph, save_graph
from harness import (
    SUITES,
    ExperimentSpec,
    generate,
    parse_family,
    run_bench,
    run_experiment,
    verify,
)
from moments import (
    cond_inverse_moment,
    cond_ratio_moments,
    conditioning_mass,
    enumerate_ratio_moments,
    preserve_bound,
    sample_conditioned_ratio,
)
from moments.conditional import ENUMERATION_DEGREE_LIMIT, MomentQuery
from monitoring import configure_logging
from oracles import CutOracle, MdcpOracle
from streaming import ARRIVAL_MODELS, synthesize_stream, write_stream

logger = logging.getLogger("cutbench")


def _emit(payload: Dict[str, Any], out: Optional[Path]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n")
        logger.info(f"wrote {out}")


def _config(args, settings: CutbenchSettings) -> EcConfig:
    preset = args.preset or settings.preset
    return load_config(preset, settings.config_path)


@ExceptionHandler.handle_exceptions
def cmd_gen(args, settings: CutbenchSettings) -> int:
    if args.out is None:
        raise InvalidInputError("gen needs --out")
    family = parse_family(yaml.safe_load(args.family))
    seed = args.seed if args.seed is not None else settings.seed
    graph = generate(family, seed)
    if args.stream:
        stream = synthesize_stream(graph, args.stream, np.random.default_rng(seed))
        write_stream(stream, args.out)
        logger.info(f"{args.stream} stream over n={graph.n} m={graph.m} written to {args.out}")
    else:
        save_graph(graph, args.out)
        logger.info(f"graph n={graph.n} m={graph.m} written to {args.out}")
    return 0


@ExceptionHandler.handle_exceptions
def cmd_run(args, settings: CutbenchSettings) -> int:
    spec = ExperimentSpec.from_yaml(args.spec)
    changes: Dict[str, Any] = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    elif "seed" not in spec.model_fields_set:
        changes["seed"] = settings.seed
    if args.preset:
        changes["preset"] = args.preset
    if args.trials is not None:
        changes["trials"] = args.trials
    if args.out is not None:
        changes["output"] = args.out
    spec = spec.model_copy(update=changes)
    cfg = load_config(spec.preset, settings.config_path)
    report = run_experiment(spec, cfg, workers=args.workers or settings.workers)
    if spec.output is None:
        _emit(report.summary, None)
    return 0


@ExceptionHandler.handle_exceptions
def cmd_verify(args, settings: CutbenchSettings) -> int:
    graph = load_graph(args.graph)
    report = verify(graph, args.value)
    _emit(report.to_dict(), args.out)
    return 1 if report.verdict == "underestimate" else 0


@ExceptionHandler.handle_exceptions
def cmd_solve(args, settings: CutbenchSettings) -> int:
    graph = load_graph(args.graph)
    cfg = _config(args, settings)
    seed = args.seed if args.seed is not None else settings.seed
    rng = np.random.default_rng(seed)
    if args.algorithm == "ec_mdcp":
        oracle = MdcpOracle(graph)
        outcome = ec_mdcp(oracle, cfg, rng)
    else:
        oracle = CutOracle(graph)
        pipeline = ec_linear if args.algorithm == "ec_linear" else ec_loglog
        outcome = pipeline(oracle, cfg, rng)
    if args.ledger is not None:
        oracle.ledger.to_csv(args.ledger)
        logger.info(f"ledger written to {args.ledger}")
    payload = {"algorithm": args.algorithm, "preset": cfg.preset, "seed": seed,
               "value": outcome.value_or_none(), "fail": outcome.failed, "branch": outcome.branch,
               "ledger": oracle.ledger.get_stats(), "tags": list(oracle.ledger.tags)}
    _emit(payload, args.out)
    return 0


@ExceptionHandler.handle_exceptions
def cmd_bench(args, settings: CutbenchSettings) -> int:
    cfg = _config(args, settings)
    seed = args.seed if args.seed is not None else settings.seed
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    out_dir = args.out or Path("results")
    for name in names:
        report = run_bench(name, cfg, seed, args.trials or 3, out_dir, full=args.full,
                           workers=args.workers or settings.workers)
        aggregate = report.summary["aggregate"]
        violations = report.summary["scaling_violations"]
        print(f"{name}: exponent={aggregate['exponent']} doubling={aggregate['doubling_ratios']} "
              f"violations={violations}")
    return 0


@ExceptionHandler.handle_exceptions
def cmd_moments(args, settings: CutbenchSettings) -> int:
    fields = {"d": args.d, "c": args.c, "p": args.p, "f": args.f, "g": args.g}
    if args.k is not None:
        fields["k"] = args.k
    query = MomentQuery(**fields)
    moments = cond_ratio_moments(query.c, query.d, query.p, query.f, query.g, exact=args.exact)
    payload: Dict[str, Any] = {
        "query": query.model_dump(),
        "conditioning_mass": conditioning_mass(query.d, query.p, query.f, query.g),
        "inverse_moment": float(cond_inverse_moment(query.d, query.p, query.f, query.g, exact=args.exact)),
        "ratio": moments.as_floats(),
    }
    if args.k is not None:
        payload["preserve_bound"] = preserve_bound(query.c, query.d, query.k)
    if args.enumerate:
        if query.d > ENUMERATION_DEGREE_LIMIT:
            logger.warning(f"enumeration skipped: d={query.d} > {ENUMERATION_DEGREE_LIMIT}")
        else:
            payload["enumerated"] = enumerate_ratio_moments(query.c, query.d, query.p, query.f,
                                                            query.g).as_floats()
    if args.samples:
        seed = args.seed if args.seed is not None else settings.seed
        sample = sample_conditioned_ratio(query.c, query.d, float(query.p), query.f, query.g,
                                          args.samples, np.random.default_rng(seed))
        payload["sampled"] = {"accepted": sample.accepted, "acceptance_rate": sample.acceptance_rate,
                              "mean": sample.mean, "variance": sample.variance}
    _emit(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Query-complexity experiments for edge connectivity"
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="Logging level (default: CUTBENCH_LOG_LEVEL or INFO)"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Master seed (default: CUTBENCH_SEED)")
    common.add_argument("--preset", choices=["paper", "desk"], default=None,
                        help="Constants preset (default: CUTBENCH_PRESET or desk)")
    common.add_argument("--trials", type=int, default=None, help="Trials per grid point")
    common.add_argument("--out", type=Path, default=None, help="Output file or directory")
    common.add_argument("--workers", type=int, default=None, help="Worker threads")

    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="Generate a graph (or stream) file")
    gen.add_argument("--family", required=True, help="Family as a YAML/JSON mapping with a 'kind' key")
    gen.add_argument("--stream", choices=list(ARRIVAL_MODELS), default=None,
                     help="Write a vertex-arrival stream in this model instead of a graph")
    gen.set_defaults(handler=cmd_gen)

    run = sub.add_parser("run", parents=[common], help="Run an experiment spec and write CSV")
    run.add_argument("spec", type=Path, help="Experiment spec (YAML)")
    run.set_defaults(handler=cmd_run)

    ver = sub.add_parser("verify", parents=[common], help="Check a claimed connectivity")
    ver.add_argument("graph", type=Path, help="Graph file")
    ver.add_argument("value", type=int, help="Claimed edge connectivity")
    ver.set_defaults(handler=cmd_verify)

    solve = sub.add_parser("solve", parents=[common], help="Run one pipeline on a graph file")
    solve.add_argument("graph", type=Path, help="Graph file")
    solve.add_argument("--algorithm", choices=["ec_linear", "ec_loglog", "ec_mdcp"], default="ec_linear")
    solve.add_argument("--ledger", type=Path, default=None,
                       help="Write the per-category query ledger to this CSV")
    solve.set_defaults(handler=cmd_solve)

    bench = sub.add_parser("bench", parents=[common], help="Run a built-in scaling suite")
    bench.add_argument("suite", choices=sorted(SUITES) + ["all"])
    bench.add_argument("--full", action="store_true", help="Use the large n-grids")
    bench.set_defaults(handler=cmd_bench)

    mom = sub.add_parser("moments", parents=[common], help="Evaluate conditional ratio moments")
    mom.add_argument("--c", type=int, required=True, help="Cut size c")
    mom.add_argument("--d", type=int, required=True, help="Degree d")
    mom.add_argument("--p", type=float, required=True, help="Sampling probability")
    mom.add_argument("--f", type=int, required=True, help="Lower end of the conditioning window")
    mom.add_argument("--g", type=int, required=True, help="Upper end of the conditioning window")
    mom.add_argument("--k", type=int, default=None, help="Sample size for the deviation bound")
    mom.add_argument("--exact", action="store_true", help="Exact rational arithmetic")
    mom.add_argument("--enumerate", action="store_true", help="Cross-check by enumerating 2^d subsets")
    mom.add_argument("--samples", type=int, default=0, help="Rejection-sampling draws")
    mom.set_defaults(handler=cmd_moments)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    settings = CutbenchSettings()
    configure_logging(args.log_level or settings.log_level)
    try:
        return args.handler(args, settings)
    except CutBenchError as e:
        ExceptionHandler.log_exception(e, {"command": args.command})
        print(json.dumps(e.to_dict(), sort_keys=True), file=sys.stderr)
        return 2
    except ValidationError as e:
        logger.error(f"invalid arguments: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
