"""Sparse r-edge-connectivity certificates as stacks of edge-disjoint forests."""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

from errors import InvalidInputError
from graphs.cuts import CutWitness, edge_set_min_cut
from graphs.partition import VertexPartition
from graphs.simple_graph import Edge, SimpleGraph, as_mask, normalize_edge

logger = logging.getLogger(__name__)


@dataclass
class CertificateForests:
    """Ordered forests F_1..F_r over base vertices of a contraction.

    Attributes:
        forests: Edge lists, one per forest, edges as (u, v) with u < v.
        partition: Supervertex partition the forests live on.
    """
    forests: List[List[Edge]]
    partition: VertexPartition
    tags: List[str] = field(default_factory=list)
    active_history: List[int] = field(default_factory=list)

    @property
    def r(self) -> int:
        return len(self.forests)

    @property
    def n(self) -> int:
        return self.partition.n

    def edges(self) -> List[Edge]:
        return [e for forest in self.forests for e in forest]

    @property
    def edge_count(self) -> int:
        return sum(len(f) for f in self.forests)

    def forest_partition(self, i: int) -> VertexPartition:
        """Components of F_i (0-based) on top of the supervertex partition."""
        partition = self.partition.copy()
        partition.union_all(self.forests[i])
        return partition

    def is_edge_disjoint(self) -> bool:
        seen = set()
        for e in self.edges():
            if e in seen:
                return False
            seen.add(e)
        return True

    def is_acyclic(self) -> bool:
        """Every forest is acyclic w.r.t. the supervertices."""
        for forest in self.forests:
            partition = self.partition.copy()
            for u, v in forest:
                if not partition.union(u, v):
                    return False
        return True

    def is_laminar(self) -> bool:
        """Components of F_{i+1} refine those of F_i for every i."""
        previous: Optional[VertexPartition] = None
        for i in range(self.r):
            current = self.forest_partition(i)
            if previous is not None and not current.refines(previous):
                return False
            previous = current
        return True

    def cut_value(self, side) -> int:
        """Number of certificate edges crossing (side, V - side)."""
        mask = as_mask(self.n, side)
        return sum(1 for u, v in self.edges() if mask[u] != mask[v])

    def min_cut(self) -> CutWitness:
        """Exact minimum cut of the certificate on the supervertices."""
        return edge_set_min_cut(self.n, self.edges(), self.partition)

    def to_text(self) -> str:
        lines = []
        for i, forest in enumerate(self.forests, start=1):
            lines.append(f"F {i}")
            lines.extend(f"{u} {v}" for u, v in forest)
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return (f"CertificateForests(r={self.r}, edges={self.edge_count}, "
                f"blocks={self.partition.block_count})")


def place_edge(forest_partitions: List[VertexPartition], forests: List[List[Edge]],
               u: int, v: int, r: int, template: VertexPartition) -> int:
    """Insert (u, v) into the least-index forest where it closes no cycle.

    Forests are created lazily up to r. Returns the 0-based forest index,
    or -1 when the edge closes a cycle in all r forests.
    """
    for i in range(r):
        if i == len(forest_partitions):
            forest_partitions.append(template.copy())
            forests.append([])
        if forest_partitions[i].union(u, v):
            forests[i].append(normalize_edge(u, v))
            return i
    return -1


def ni_certificate_explicit(graph: SimpleGraph, r: int,
                            partition: Optional[VertexPartition] = None,
                            edges: Optional[Iterable[Sequence[int]]] = None
                            ) -> CertificateForests:
    """Certificate of an explicitly known graph by single-scan placement.

    Each edge goes into the first forest in which it does not create a
    cycle; edges inside a supervertex are skipped.

    Args:
        graph: The explicit graph.
        r: Number of forests.
        partition: Supervertices when certifying a contraction.
        edges: Scan order; defaults to graph.edges().
    """
    if r < 1:
        raise InvalidInputError(f"certificate needs r >= 1, got {r}")
    target = partition.copy() if partition is not None else VertexPartition(graph.n)
    forest_partitions: List[VertexPartition] = []
    forests: List[List[Edge]] = []
    for u, v in (edges if edges is not None else graph.edges()):
        u, v = int(u), int(v)
        if target.same(u, v):
            continue
        place_edge(forest_partitions, forests, u, v, r, target)
    while len(forests) < r:
        forests.append([])
    logger.debug(f"NI certificate: r={r}, kept {sum(len(f) for f in forests)} of {graph.m} edges")
    return CertificateForests(forests, target)
