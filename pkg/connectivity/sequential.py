"""Edge connectivity of an explicitly given graph by repeated star contraction."""

import logging

import numpy as np

from connectivity.config import EcConfig
from contraction import uniform_star_contraction
from graphs import SimpleGraph, min_degree, ni_certificate_explicit

logger = logging.getLogger(__name__)


def ec_sequential(graph: SimpleGraph, cfg: EcConfig, rng: np.random.Generator) -> int:
    """min(delta, min cut of a delta-certificate of a star contraction), repeated."""
    if graph.n < 2:
        return 0
    delta = min_degree(graph)
    if delta == 0:
        return 0
    best = delta
    p = cfg.sequential_probability(graph.n, delta)
    for _ in range(cfg.sequential_repetitions):
        partition, _ = uniform_star_contraction(graph, p, rng)
        if partition.block_count < 2:
            continue
        certificate = ni_certificate_explicit(graph, delta, partition)
        best = min(best, certificate.min_cut().value)
    logger.debug(f"sequential: delta={delta}, answer={best}")
    return best
