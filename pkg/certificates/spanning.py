"""Spanning forests through cross queries: Prim-style on a contraction and
Boruvka-style with batched neighbour recovery."""

import logging
from typing import List, Optional

import numpy as np

from graphs import VertexPartition, as_mask, normalize_edge
from graphs.simple_graph import Edge
from oracles import BipartiteView, GraphView, QueryPrimitives, log2_ceil
from recovery import recover_k_from_all

logger = logging.getLogger(__name__)


def query_domain(oracle: QueryPrimitives) -> np.ndarray:
    """Vertices the oracle can see."""
    if isinstance(oracle, GraphView):
        return oracle.vertices.copy()
    return np.ones(oracle.n, dtype=bool)


def _search_side(oracle: QueryPrimitives, candidates: np.ndarray, other: np.ndarray) -> int:
    """Binary search for a vertex of `candidates` with an edge into `other`.

    Assumes one exists; the lower half is tried first.
    """
    while candidates.size > 1:
        half = (candidates.size + 1) // 2
        low = candidates[:half]
        if oracle.cross(low, other) > 0:
            candidates = low
        else:
            candidates = candidates[half:]
    return int(candidates[0])


def simple_spanning_forest(oracle: QueryPrimitives, partition: Optional[VertexPartition] = None
                           ) -> List[Edge]:
    """Spanning forest of the contraction given by `partition`.

    Grows one supervertex set A at a time: a cross query checks for an edge
    leaving A, then two binary searches find its endpoints.
    """
    n = oracle.n
    domain = query_domain(oracle)
    labels = (partition if partition is not None else VertexPartition(n)).labels()
    visited = np.zeros(int(labels.max()) + 1 if n else 0, dtype=bool)
    forest: List[Edge] = []
    for start in range(n):
        if not domain[start] or visited[labels[start]]:
            continue
        visited[labels[start]] = True
        grown = domain & (labels == labels[start])
        while True:
            outside = domain & ~grown
            if not outside.any() or oracle.cross(grown, outside) == 0:
                break
            u = _search_side(oracle, np.flatnonzero(grown), outside)
            v = _search_side(oracle, np.flatnonzero(outside), as_mask(n, [u]))
            forest.append(normalize_edge(u, v))
            visited[labels[v]] = True
            grown |= domain & (labels == labels[v])
    logger.debug(f"simple spanning forest: {len(forest)} edges")
    return forest


def find_representatives(oracle: QueryPrimitives, labels: np.ndarray, active: np.ndarray,
                         domain: np.ndarray) -> dict:
    """Per active block, the first active vertex with an edge leaving the block.

    Vertices found without such an edge are switched off in `active`.
    Returns {block label: representative}.
    """
    reps = {}
    for label in active_labels(labels, active):
        block = domain & (labels == label)
        outside = domain & ~block
        for v in np.flatnonzero(block & active):
            if oracle.cross([int(v)], outside) > 0:
                reps[int(label)] = int(v)
                break
            active[v] = False
    return reps


def active_labels(labels: np.ndarray, active: np.ndarray) -> List[int]:
    return sorted(set(labels[active].tolist()))


def red_blue_edges(oracle: QueryPrimitives, labels: np.ndarray, reps: dict, domain: np.ndarray,
                   rng: np.random.Generator, k: int) -> List[Edge]:
    """One edge from each red representative into a blue block, when it has one."""
    order = sorted(reps)
    red = rng.random(len(order)) < 0.5
    blue_labels = [label for label, is_red in zip(order, red) if not is_red]
    blue_mask = domain & np.isin(labels, blue_labels)
    red_reps = [reps[label] for label, is_red in zip(order, red) if is_red]
    if not red_reps or not blue_mask.any():
        return []
    counts = [oracle.cross([v], blue_mask) for v in red_reps]
    rows = [v for v, c in zip(red_reps, counts) if c > 0]
    if not rows:
        return []
    cols = np.flatnonzero(blue_mask)
    lists = recover_k_from_all(BipartiteView(oracle, rows, cols), k, rng,
                               degrees=[c for c in counts if c > 0])
    return [normalize_edge(v, int(cols[lists[i][0]])) for i, v in enumerate(rows)]


def boruvka_spanning_forest(oracle: QueryPrimitives, rng: np.random.Generator, k: int = 10,
                            switch_divisor: Optional[int] = None) -> List[Edge]:
    """Zero-error spanning forest in O(n) expected cut queries.

    Rounds find a representative with an outgoing edge per active component,
    colour components red or blue and learn one blue neighbour for each red
    representative. Once fewer than n/switch_divisor components are active
    (default divisor ceil(log2 n)) the Prim-style search finishes the job.
    """
    n = oracle.n
    domain = query_domain(oracle)
    divisor = switch_divisor if switch_divisor is not None else max(1, log2_ceil(n))
    components = VertexPartition(n)
    active = domain.copy()
    forest: List[Edge] = []
    rounds = 0
    while True:
        labels = components.labels()
        t = len(active_labels(labels, active))
        if t == 0:
            break
        if t < n / divisor:
            oracle.ledger.tag("boruvka_switch")
            forest.extend(simple_spanning_forest(oracle, components))
            break
        rounds += 1
        reps = find_representatives(oracle, labels, active, domain)
        if not reps:
            break
        for u, v in red_blue_edges(oracle, labels, reps, domain, rng, k):
            if components.union(u, v):
                forest.append((u, v))
        logger.debug(f"boruvka round {rounds}: {t} active, forest {len(forest)} edges")
    logger.info(f"boruvka spanning forest: {len(forest)} edges after {rounds} rounds")
    return forest
