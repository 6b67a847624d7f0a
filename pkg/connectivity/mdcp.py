"""Edge connectivity with MDCP queries (minimum degree, neighbourhood,
spanning forest, cut)."""

import logging
import math
from typing import Optional

import numpy as np

from certificates import spf_certificate
from connectivity.config import EcConfig
from connectivity.outcome import EcOutcome
from contraction import sample_centers, uniform_star_contraction
from graphs import CutWitness
from oracles import MdcpOracle

logger = logging.getLogger(__name__)


def ec_mdcp(oracle: MdcpOracle, cfg: EcConfig, rng: np.random.Generator) -> EcOutcome:
    """Small delta: sqrt(n)-certificate from spf queries. Large delta: rounds of
    uniform star contraction, each solved by the modeled exact min cut.

    A round whose center set or contraction is too large is dropped and the
    next round starts with fresh randomness.
    """
    n = oracle.n
    delta = oracle.mindeg()
    stats = {"delta": delta}
    if delta == 0:
        return EcOutcome(0, oracle.ledger.snapshot(), "disconnected", stats)
    if delta <= math.sqrt(n):
        certificate = spf_certificate(oracle, math.ceil(math.sqrt(n)))
        value = min(delta, certificate.min_cut().value)
        return EcOutcome(value, oracle.ledger.snapshot(), "certificate", stats)

    rounds = cfg.mdcp_rounds(n)
    p = cfg.mdcp_probability(n, delta)
    limit = cfg.mdcp_abort_limit(n, delta)
    best: Optional[CutWitness] = None
    aborted = 0
    for i in range(rounds):
        centers = sample_centers(n, p, rng)
        if centers.size > limit:
            aborted += 1
            continue
        partition, _ = uniform_star_contraction(oracle, p, rng, centers=centers)
        if partition.block_count > limit:
            aborted += 1
            continue
        if partition.block_count < 2:
            continue
        witness = oracle.modeled_min_cut(partition, cfg.modeled_exponent)
        if best is None or witness.value < best.value:
            best = witness
        logger.debug(f"mdcp round {i + 1}/{rounds}: blocks={partition.block_count}, "
                     f"lambda'={witness.value}")
    stats.update({"rounds": rounds, "aborted_rounds": aborted, "p": p})
    value = delta if best is None else min(delta, oracle.cut(best.side))
    return EcOutcome(value, oracle.ledger.snapshot(), "rounds", stats)
