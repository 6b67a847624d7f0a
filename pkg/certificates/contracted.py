"""Sparse r-edge-connectivity certificates of a contraction, built by
growing r forests in parallel on the base vertices."""

import logging
import math
from typing import List, Optional, Union

import numpy as np

from errors import ContractViolationError, Failure, InvalidInputError, QueryBudgetExceeded
from graphs import CertificateForests, VertexPartition, place_edge
from graphs.simple_graph import Edge
from oracles import DERIVED_QUERY_UNITS, CutOracle, GraphView, log2_ceil
from certificates.spanning import (
    active_labels,
    find_representatives,
    query_domain,
    red_blue_edges,
    simple_spanning_forest,
)

logger = logging.getLogger(__name__)

C_CERTIFICATE = 4


def _removal_view(oracle: Union[CutOracle, GraphView]) -> GraphView:
    if isinstance(oracle, GraphView):
        return GraphView(oracle.base, oracle.vertices, oracle.removed.edges())
    return GraphView(oracle)


def certificate_threshold(n: int, epsilon: float) -> float:
    """Supervertex count below which the parallel phase is skipped."""
    return math.log2(max(n, 2)) ** (2 + epsilon)


def contracted_certificate(oracle: Union[CutOracle, GraphView], partition: VertexPartition,
                           r: int, rng: np.random.Generator, k: int = 10,
                           epsilon: float = 0.1, switch_divisor: Optional[int] = None,
                           check_invariants: bool = False) -> CertificateForests:
    """Forests F_1..F_r forming a sparse r-edge-connectivity certificate.

    Args:
        oracle: Cut access to the base graph (or a view of it).
        partition: Supervertices of the contraction.
        r: Number of forests.
        rng: Colouring and recovery randomness.
        k: Recovery target per red representative.
        epsilon: Parallel rounds run only when q >= log2(n)^(2+epsilon).
        switch_divisor: Leave the parallel phase once F_r's active
            components drop to initial/switch_divisor (default ceil(log2 n)).
        check_invariants: Assert laminarity after every round.
    """
    if r < 1:
        raise InvalidInputError(f"certificate needs r >= 1, got {r}")
    n = oracle.n
    view = _removal_view(oracle)
    domain = query_domain(view)
    template = partition.copy()
    forest_parts: List[VertexPartition] = [template.copy() for _ in range(r)]
    forests: List[List[Edge]] = [[] for _ in range(r)]
    history: List[int] = []
    q = partition.block_count

    if q < certificate_threshold(n, epsilon):
        view.ledger.tag("certificate_fallback")
        logger.debug(f"certificate fallback: q={q} below log2(n)^(2+{epsilon})")
    else:
        active = domain.copy()
        divisor = switch_divisor if switch_divisor is not None else max(1, log2_ceil(n))
        initial = len(active_labels(forest_parts[-1].labels(), active))
        while True:
            labels = forest_parts[-1].labels()
            t = len(active_labels(labels, active))
            history.append(t)
            if t == 0 or t <= initial / divisor:
                break
            reps = find_representatives(view, labels, active, domain)
            if not reps:
                break
            found = red_blue_edges(view, labels, reps, domain, rng, k)
            for u, v in found:
                if place_edge(forest_parts, forests, u, v, r, template) < 0:
                    raise ContractViolationError(f"edge ({u}, {v}) closes a cycle in every forest")
            view.add_removed(found)
            if check_invariants:
                _assert_laminar(forest_parts)

    for i in range(r):
        extra = simple_spanning_forest(view, forest_parts[i])
        forest_parts[i].union_all(extra)
        forests[i].extend(extra)
        view.add_removed(extra)
    certificate = CertificateForests(forests, template, tags=list(view.ledger.tags),
                                     active_history=history)
    if check_invariants and not (certificate.is_laminar() and certificate.is_edge_disjoint()):
        raise ContractViolationError("certificate forests are not laminar and edge-disjoint")
    logger.debug(f"certificate r={r} on q={q}: {certificate.edge_count} edges, "
                 f"{len(history)} parallel rounds")
    return certificate


def _assert_laminar(forest_parts: List[VertexPartition]) -> None:
    for i in range(1, len(forest_parts)):
        if not forest_parts[i].refines(forest_parts[i - 1]):
            raise ContractViolationError(f"components of F_{i + 1} do not refine F_{i}")


def expected_certificate_units(n: int, q: int, r: int) -> int:
    """Clock reference for the Monte Carlo certificate."""
    return DERIVED_QUERY_UNITS * C_CERTIFICATE * (n + r * q * max(1, log2_ceil(n)))


def certificate_mc(oracle: Union[CutOracle, GraphView], partition: VertexPartition, r: int,
                   rng: np.random.Generator, clock_factor: float = 100.0,
                   **options) -> Union[CertificateForests, Failure]:
    """contracted_certificate under a clock; FAIL when the clock runs out."""
    limit = int(clock_factor * expected_certificate_units(oracle.n, partition.block_count, r))
    try:
        with oracle.ledger.clock(limit):
            return contracted_certificate(oracle, partition, r, rng, **options)
    except QueryBudgetExceeded as exc:
        logger.info(f"certificate clock ran out: {exc.used} > {exc.limit}")
        return Failure("certificate", "query clock exceeded", {"limit": limit, "used": exc.used})
