"""Experiment specs and the trial runner.

A spec names one algorithm, one graph family, an n-grid and a trial
count. Trial t at grid point s draws its randomness from
default_rng([seed, s, t]); the graph seed comes from the same counter with
a trailing GRAPH_SALT. Any single trial is therefore reproducible on its
own, and trials can run on a thread pool while rows are folded in trial
order.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
import yaml
from pydantic import BaseModel, Field

from certificates import boruvka_spanning_forest
from connectivity import (
    Diagnostics,
    EcConfig,
    EcOutcome,
    ec_amplified,
    ec_linear,
    ec_loglog,
    ec_mdcp,
    ec_sequential,
    load_config,
)
from errors import AmplificationExhaustedError, ExceptionHandler, Failure, InvalidInputError, is_failure
from graphs import SimpleGraph, cut_edges, min_degree
from harness.generators import GraphFamily, family_size, generate
from harness.reports import aggregate, write_rows_csv, write_summary_json
from harness.verify import exact_lambda, exact_witness
from monitoring import timed
from oracles import BipartiteView, CutOracle, MdcpOracle
from recovery import recover_k_from_all
from streaming import stream_ec_complete, stream_ec_random, synthesize_stream

logger = logging.getLogger(__name__)

GRAPH_SALT = 0x6752
CONNECTIVITY_ALGORITHMS = ("ec_linear", "ec_loglog", "ec_mdcp", "ec_sequential",
                           "stream_complete", "stream_random")
ALGORITHMS = CONNECTIVITY_ALGORITHMS + ("boruvka", "recover")

Algorithm = Literal["ec_linear", "ec_loglog", "ec_mdcp", "ec_sequential",
                    "stream_complete", "stream_random", "boruvka", "recover"]


class ExperimentSpec(BaseModel):
    """Everything needed to rerun a campaign byte for byte."""

    algorithm: Algorithm
    family: GraphFamily
    sizes: List[int] = Field(default_factory=list)
    trials: int = Field(default=1, ge=1)
    amplify: int = Field(default=1, ge=1)
    seed: int = 20240101
    preset: str = "desk"
    output: Optional[Path] = None
    workers: int = Field(default=1, ge=1)

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "ExperimentSpec":
        with open(path, "r") as f:
            return cls.model_validate(yaml.safe_load(f) or {})

    def grid(self) -> List[int]:
        return list(self.sizes) if self.sizes else [family_size(self.family)]


@dataclass
class TrialResult:
    value: Union[int, Failure, None]
    branch: str
    cut_units: int = 0
    modeled_units: int = 0
    words: Optional[int] = None
    stats: Dict[str, Any] = field(default_factory=dict)


def trial_rng(seed: int, stream: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream, trial])


def graph_seed(seed: int, stream: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, stream, trial, GRAPH_SALT]).generate_state(1)[0])


def _from_outcome(outcome: EcOutcome) -> TrialResult:
    ledger = outcome.ledger
    return TrialResult(value=outcome.value, branch=outcome.branch,
                       cut_units=ledger.total - ledger.modeled_units,
                       modeled_units=ledger.modeled_units, stats=outcome.stats)


def _diagnostics(graph: SimpleGraph, cfg: EcConfig) -> Optional[Diagnostics]:
    if graph.n < 2 or graph.n > cfg.verify_limit:
        return None
    return Diagnostics(graph, cut_edges(graph, exact_witness(graph).side))


def _run_once(algorithm: str, graph: SimpleGraph, cfg: EcConfig, rng: np.random.Generator) -> TrialResult:
    if algorithm in ("ec_linear", "ec_loglog"):
        pipeline = ec_linear if algorithm == "ec_linear" else ec_loglog
        return _from_outcome(pipeline(CutOracle(graph), cfg, rng, _diagnostics(graph, cfg)))
    if algorithm == "ec_mdcp":
        return _from_outcome(ec_mdcp(MdcpOracle(graph), cfg, rng))
    if algorithm == "ec_sequential":
        return TrialResult(value=ec_sequential(graph, cfg, rng), branch="sequential")
    if algorithm in ("stream_complete", "stream_random"):
        model = "complete" if algorithm == "stream_complete" else "random"
        stream = synthesize_stream(graph, model, rng)
        runner = stream_ec_complete if model == "complete" else stream_ec_random
        outcome = runner(stream, cfg, rng)
        return TrialResult(value=outcome.value, branch=model, words=outcome.peak_words)
    if algorithm == "boruvka":
        oracle = CutOracle(graph)
        forest = boruvka_spanning_forest(oracle, rng, k=cfg.boruvka_k,
                                         switch_divisor=cfg.certificate_switch_divisor)
        return TrialResult(value=len(forest), branch="forest", cut_units=oracle.ledger.cut_units)
    if algorithm == "recover":
        return _run_recover(graph, cfg, rng)
    raise InvalidInputError(f"unknown algorithm {algorithm!r}")


def _run_recover(graph: SimpleGraph, cfg: EcConfig, rng: np.random.Generator) -> TrialResult:
    """k neighbours for every vertex of a random half that has a neighbour in the other half."""
    oracle = CutOracle(graph)
    side = rng.random(graph.n) < 0.5
    t = np.flatnonzero(~side)
    s = [v for v in np.flatnonzero(side) if any(not side[u] for u in graph.adjacency(int(v)))]
    if not s or t.size == 0:
        return TrialResult(value=0, branch="recover_empty")
    lists = recover_k_from_all(BipartiteView(oracle, s, t), cfg.recover_k, rng)
    return TrialResult(value=lists.min_size(), branch="recover", cut_units=oracle.ledger.cut_units,
                       stats={"rows": len(s)})


def _run_amplified(algorithm: str, graph: SimpleGraph, cfg: EcConfig, seed: int, stream: int,
                   trial: int, amplify: int) -> TrialResult:
    if amplify == 1:
        return _run_once(algorithm, graph, cfg, trial_rng(seed, stream, trial))
    results: List[TrialResult] = []

    def runner(index: int):
        rng = np.random.default_rng([seed, stream, trial, index + 1])
        result = _run_once(algorithm, graph, cfg, rng)
        results.append(result)
        return result.value

    try:
        value: Union[int, Failure] = ec_amplified(runner, amplify)
        branch = "amplified"
    except AmplificationExhaustedError:
        value, branch = Failure("amplified", f"all {amplify} trials failed"), "amplification_exhausted"
    words = [r.words for r in results if r.words is not None]
    return TrialResult(value=value, branch=branch,
                       cut_units=sum(r.cut_units for r in results),
                       modeled_units=sum(r.modeled_units for r in results),
                       words=max(words) if words else None)


@timed("trial")
def run_trial(spec: ExperimentSpec, cfg: EcConfig, stream: int, n: int, trial: int) -> Dict[str, Any]:
    """One CSV row; any exception becomes a trial-error row."""
    context = {"algorithm": spec.algorithm, "preset": cfg.preset, "n": n,
               "seed": f"{spec.seed}/{stream}/{trial}", "trial": trial}
    try:
        family = spec.family.resized(n) if spec.sizes else spec.family
        graph = generate(family, graph_seed(spec.seed, stream, trial))
        lambda_true = (exact_lambda(graph, cfg.verify_limit)
                       if spec.algorithm in CONNECTIVITY_ALGORITHMS else None)
        result = _run_amplified(spec.algorithm, graph, cfg, spec.seed, stream, trial, spec.amplify)
    except Exception as exc:
        row = ExceptionHandler.to_row(exc, context)
        row.update({"fail": True, "branch": "error"})
        return row
    failed = is_failure(result.value)
    row = dict(context)
    row.update({
        "n": graph.n,
        "m": graph.m,
        "delta": min_degree(graph) if graph.n else 0,
        "lambda_true": lambda_true,
        "value": None if failed or result.value is None else int(result.value),
        "fail": failed,
        "branch": result.branch,
        "cut_units": result.cut_units,
        "modeled_units": result.modeled_units,
        "words": result.words,
        "error": "",
    })
    if failed:
        row["branch"] = f"{result.branch}:{result.value.stage}"
    value = row["value"]
    if lambda_true is not None and value is not None and value < lambda_true:
        logger.error(f"trial {context['seed']}: value {value} below lambda {lambda_true}")
    return row


@dataclass
class ExperimentReport:
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any]

    def write(self, path: Union[str, Path]) -> Tuple[Path, Path]:
        """CSV at `path`, JSON summary next to it."""
        csv_path = Path(path)
        json_path = csv_path.with_suffix(".json")
        write_rows_csv(self.rows, csv_path)
        write_summary_json(self.summary, json_path)
        logger.info(f"wrote {len(self.rows)} rows to {csv_path} and summary to {json_path}")
        return csv_path, json_path


def run_experiment(spec: ExperimentSpec, cfg: Optional[EcConfig] = None,
                   workers: Optional[int] = None) -> ExperimentReport:
    """Run every (grid point, trial) pair and fold the rows in trial order."""
    cfg = cfg if cfg is not None else load_config(spec.preset)
    tasks = [(stream, n, trial) for stream, n in enumerate(spec.grid()) for trial in range(spec.trials)]
    pool_size = workers if workers is not None else spec.workers
    logger.info(f"experiment {spec.algorithm}: {len(tasks)} trials on {pool_size} worker(s)")
    run: Callable[[Tuple[int, int, int]], Dict[str, Any]] = (
        lambda task: run_trial(spec, cfg, *task))
    if pool_size > 1:
        with ThreadPoolExecutor(max_workers=pool_size) as executor:
            rows = list(executor.map(run, tasks))
    else:
        rows = [run(task) for task in tasks]
    metric = "words" if spec.algorithm.startswith("stream") else "cut_units"
    summary = {
        "algorithm": spec.algorithm,
        "preset": cfg.preset,
        "config_digest": cfg.digest(),
        "seed": spec.seed,
        "trials": spec.trials,
        "amplify": spec.amplify,
        "family": spec.family.model_dump(),
        "aggregate": aggregate(rows, metric),
    }
    report = ExperimentReport(rows=rows, summary=summary)
    if spec.output is not None:
        report.write(spec.output)
    return report
