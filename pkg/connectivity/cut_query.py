"""Edge connectivity from cut queries: the O(n log log n) and O(n) pipelines.

Both start from the minimum degree d. Small d goes straight to a
d-certificate of G. Otherwise a sampled center set R must pass two size
checks, the vertices with many neighbours in R recover k of them, and a
random 1-out sample of those arcs is contracted. The linear pipeline also
learns a subgraph of G[R] and contracts a 2-out sample of it. The contracted
graph's minimum cut W is then evaluated with one real cut query, and the
answer is min(d, |cut(W)|), which never undercounts.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np

from certificates import certificate_mc
from connectivity.config import EcConfig
from connectivity.outcome import Diagnostics, EcOutcome
from contraction import goodness_report, learn_subgraph, one_out_sample, sample_centers, two_out_sample
from errors import Failure, is_failure
from graphs import CutWitness, DirectedSubgraph, VertexPartition, component_partition
from oracles import CutOracle, GraphView
from recovery import wc_recover_k_from_all

logger = logging.getLogger(__name__)


def certificate_options(cfg: EcConfig) -> dict:
    return {
        "clock_factor": cfg.clock_factor,
        "k": cfg.boruvka_k,
        "epsilon": cfg.certificate_epsilon,
        "switch_divisor": cfg.certificate_switch_divisor,
        "check_invariants": cfg.check_invariants,
    }


def min_degree_by_queries(oracle: CutOracle) -> np.ndarray:
    """All degrees, one cut query each."""
    return np.array([oracle.cut([v]) for v in range(oracle.n)], dtype=np.int64)


def _outcome(oracle: CutOracle, value: Union[int, Failure], branch: str, stats: dict) -> EcOutcome:
    if is_failure(value):
        logger.info(f"{branch}: {value}")
    return EcOutcome(value=value, ledger=oracle.ledger.snapshot(), branch=branch, stats=stats)


def _answer(oracle: CutOracle, d: int, witness: Optional[CutWitness]) -> int:
    """min(d, |cut(W)|) with one real cut query for W."""
    if witness is None:
        return d
    return min(d, oracle.cut(witness.side))


def _certificate_cut(oracle: CutOracle, partition: VertexPartition, d: int, cfg: EcConfig,
                     rng: np.random.Generator) -> Union[Optional[CutWitness], Failure]:
    if partition.block_count < 2:
        return None
    certificate = certificate_mc(oracle, partition, d, rng, **certificate_options(cfg))
    if is_failure(certificate):
        return certificate
    return certificate.min_cut()


def _small_degree(oracle: CutOracle, d: int, cfg: EcConfig, rng: np.random.Generator,
                  stats: dict) -> EcOutcome:
    witness = _certificate_cut(oracle, VertexPartition(oracle.n), d, cfg, rng)
    if is_failure(witness):
        return _outcome(oracle, witness, "small_degree", stats)
    value = d if witness is None else min(d, witness.value)
    return _outcome(oracle, value, "small_degree", stats)


def _sample_and_recover(oracle: CutOracle, d: int, cfg: EcConfig, rng: np.random.Generator,
                        stats: dict) -> Union[Tuple[np.ndarray, DirectedSubgraph], Failure]:
    """Centers R, the size checks, and arcs from well-connected vertices into R."""
    n = oracle.n
    p = cfg.center_probability(d)
    centers = sample_centers(n, p, rng)
    center_mask = np.zeros(n, dtype=bool)
    center_mask[centers] = True
    degree_r = np.array([oracle.degree_into(v, center_mask) for v in range(n)], dtype=np.int64)
    threshold = cfg.low_threshold(d)
    low = int(np.count_nonzero(degree_r <= threshold))
    stats.update({"p": p, "centers": int(centers.size), "low_degree_vertices": low})
    if centers.size >= cfg.r_size_limit(n, d) or low > cfg.low_count_limit(n, d):
        return Failure("centers", "center set rejected",
                       {"centers": int(centers.size), "low": low})
    s = np.flatnonzero(~center_mask & (degree_r > threshold))
    arcs = wc_recover(oracle, s, centers, cfg, rng)
    return arcs if is_failure(arcs) else (centers, arcs)


def wc_recover(oracle: CutOracle, s: np.ndarray, t: np.ndarray, cfg: EcConfig,
               rng: np.random.Generator) -> Union[DirectedSubgraph, Failure]:
    return wc_recover_k_from_all(oracle, s, t, cfg.recover_k, rng, clock_factor=cfg.clock_factor)


def _record_goodness(stats: dict, key: str, h: DirectedSubgraph, chosen,
                     diagnostics: Optional[Diagnostics]) -> None:
    if diagnostics is None:
        return
    report = goodness_report(diagnostics.graph, h, diagnostics.cut_edges)
    stats[f"{key}_max_q"] = float(report.max_q)
    stats[f"{key}_sum_q"] = float(report.sum_q)
    cut = set(diagnostics.cut_edges)
    stats[f"{key}_hit_cut"] = any(e in cut for e in chosen)


def _contract_and_solve(oracle: CutOracle, partition: VertexPartition, d: int, cfg: EcConfig,
                        rng: np.random.Generator, stats: dict) -> Tuple[str, Union[Optional[CutWitness], Failure]]:
    stats["blocks"] = partition.block_count
    if d <= cfg.mn_threshold(oracle.n):
        return "certificate", _certificate_cut(oracle, partition, d, cfg, rng)
    if partition.block_count < 2:
        return "modeled", None
    return "modeled", oracle.modeled_min_cut(partition, cfg.modeled_exponent)


def _loglog_after_degree(oracle: CutOracle, d: int, cfg: EcConfig, rng: np.random.Generator,
                         stats: dict, diagnostics: Optional[Diagnostics]) -> EcOutcome:
    sampled = _sample_and_recover(oracle, d, cfg, rng, stats)
    if is_failure(sampled):
        return _outcome(oracle, sampled, "sampling", stats)
    _, arcs = sampled
    chosen = one_out_sample(arcs, rng)
    _record_goodness(stats, "one_out", arcs, chosen, diagnostics)
    partition = component_partition(oracle.n, chosen)
    branch, witness = _contract_and_solve(oracle, partition, d, cfg, rng, stats)
    if is_failure(witness):
        return _outcome(oracle, witness, branch, stats)
    return _outcome(oracle, _answer(oracle, d, witness), branch, stats)


def ec_loglog(oracle: CutOracle, cfg: EcConfig, rng: np.random.Generator,
              diagnostics: Optional[Diagnostics] = None) -> EcOutcome:
    """Edge connectivity with O(n log log n) cut queries (constant success probability)."""
    degrees = min_degree_by_queries(oracle)
    d = int(degrees.min()) if degrees.size else 0
    stats = {"delta": d}
    if d == 0:
        return _outcome(oracle, 0, "disconnected", stats)
    if d < cfg.small_degree_cutoff:
        return _small_degree(oracle, d, cfg, rng, stats)
    return _loglog_after_degree(oracle, d, cfg, rng, stats, diagnostics)


def ec_linear(oracle: CutOracle, cfg: EcConfig, rng: np.random.Generator,
              diagnostics: Optional[Diagnostics] = None) -> EcOutcome:
    """Edge connectivity with O(n) cut queries (constant success probability).

    Minimum degrees above the certificate threshold take the
    O(n log log n) path, which is already linear there.
    """
    n = oracle.n
    degrees = min_degree_by_queries(oracle)
    d = int(degrees.min()) if degrees.size else 0
    stats = {"delta": d}
    if d == 0:
        return _outcome(oracle, 0, "disconnected", stats)
    if d < cfg.small_degree_cutoff:
        return _small_degree(oracle, d, cfg, rng, stats)
    if d > cfg.mn_threshold(n):
        stats["dispatched"] = "loglog"
        return _loglog_after_degree(oracle, d, cfg, rng, stats, diagnostics)

    sampled = _sample_and_recover(oracle, d, cfg, rng, stats)
    if is_failure(sampled):
        return _outcome(oracle, sampled, "sampling", stats)
    centers, arcs = sampled
    h = cfg.h_value(d)
    tau = cfg.low_count_limit(n, d)
    inner = learn_subgraph(GraphView(oracle, vertices=centers), h, tau, rng,
                           clock_factor=cfg.clock_factor)
    stats["h"] = h
    if is_failure(inner):
        return _outcome(oracle, inner, "learn_subgraph", stats)

    one_out = one_out_sample(arcs, rng)
    two_out = two_out_sample(inner, rng)
    chosen = one_out | two_out
    _record_goodness(stats, "one_out", arcs, one_out, diagnostics)
    if diagnostics is not None:
        cut = set(diagnostics.cut_edges)
        stats["sample_hit_cut"] = any(e in cut for e in chosen)
    partition = component_partition(n, chosen)
    limit = tau + 3 * centers.size / h
    stats.update({"blocks": partition.block_count, "block_limit": limit})
    if partition.block_count > limit:
        return _outcome(oracle, Failure("contraction", "too many supervertices",
                                        {"blocks": partition.block_count, "limit": limit}),
                        "contraction", stats)
    witness = _certificate_cut(oracle, partition, d, cfg, rng)
    if is_failure(witness):
        return _outcome(oracle, witness, "certificate", stats)
    return _outcome(oracle, _answer(oracle, d, witness), "certificate", stats)
