"""Uniform star contraction: sample centers, then every other vertex with a
neighbour among the centers merges into one of them, chosen uniformly."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

from errors import InvalidInputError
from graphs import SimpleGraph, VertexPartition, as_mask, normalize_edge
from graphs.simple_graph import Edge
from oracles import GraphView, MdcpOracle, QueryPrimitives

logger = logging.getLogger(__name__)

StarSource = Union[QueryPrimitives, MdcpOracle, SimpleGraph]


@dataclass
class StarSample:
    """Centers R, contracted star edges X, and vertices with no neighbour in R."""
    centers: np.ndarray
    star_edges: List[Edge] = field(default_factory=list)
    left_out: List[int] = field(default_factory=list)

    @property
    def size_bound(self) -> int:
        return int(self.centers.size) + len(self.left_out)


def sample_centers(n: int, p: float, rng: np.random.Generator,
                   domain: Optional[np.ndarray] = None) -> np.ndarray:
    """Each vertex (of `domain`, default all) joins independently with probability p."""
    if not 0 < p <= 1:
        raise InvalidInputError(f"center probability must lie in (0, 1], got {p}")
    candidates = np.arange(n) if domain is None else np.flatnonzero(as_mask(n, domain))
    return candidates[rng.random(candidates.size) < p]


def _domain_of(source: StarSource) -> np.ndarray:
    if isinstance(source, GraphView):
        return source.vertices.copy()
    return np.ones(source.n, dtype=bool)


def _pick_explicit(graph: SimpleGraph, v: int, centers: np.ndarray,
                   rng: np.random.Generator) -> Optional[int]:
    options = [u for u in graph.adjacency(v) if centers[u]]
    return int(options[rng.integers(len(options))]) if options else None


def uniform_star_contraction(source: StarSource, p: float, rng: np.random.Generator,
                             centers: Optional[np.ndarray] = None
                             ) -> Tuple[VertexPartition, StarSample]:
    """Contract a uniform star around sampled centers.

    Args:
        source: A cut oracle or view (random_neighbor per vertex), an MDCP
            oracle (one nbh query per center) or an explicit graph.
        p: Center probability, used when `centers` is not given.
        rng: Randomness for the centers and the neighbour choices.
        centers: Fixed center set; skips sampling.

    Returns:
        The contraction partition and the sample it came from.
    """
    n = source.n
    domain = _domain_of(source)
    if centers is None:
        centers = sample_centers(n, p, rng, domain)
    centers = np.asarray(centers, dtype=np.int64)
    center_mask = as_mask(n, centers)
    sample = StarSample(centers=centers)
    outside = np.flatnonzero(domain & ~center_mask)

    if isinstance(source, MdcpOracle):
        choices: List[List[int]] = [[] for _ in range(n)]
        for c in centers:
            for u in source.nbh(int(c)):
                if not center_mask[u] and domain[u]:
                    choices[u].append(int(c))
        pick = (lambda v: choices[v][rng.integers(len(choices[v]))] if choices[v] else None)
    elif isinstance(source, SimpleGraph):
        pick = (lambda v: _pick_explicit(source, v, center_mask, rng))
    else:
        pick = (lambda v: source.random_neighbor(v, center_mask, rng))

    partition = VertexPartition(n)
    for v in outside:
        c = pick(int(v))
        if c is None:
            sample.left_out.append(int(v))
            continue
        partition.union(int(v), int(c))
        sample.star_edges.append(normalize_edge(int(v), int(c)))
    logger.debug(f"star contraction: |R|={centers.size}, contracted={len(sample.star_edges)}, "
                 f"left out={len(sample.left_out)}")
    return partition, sample
