"""MDCP access: minimum degree, neighbourhood, spanning forest and cut
primitives answered from the hidden graph at a charged cost."""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from errors import InvalidInputError
from graphs import CutWitness, SimpleGraph, VertexPartition, exact_min_cut, normalize_edge
from graphs.simple_graph import Edge, VertexSet
from oracles.ledger import QueryCategory, QueryLedger, log2_ceil, modeled_mincut_units

logger = logging.getLogger(__name__)

MDCP_KINDS = ("mindeg", "nbh", "spf", "cut")


@dataclass(frozen=True)
class MdcpCostTable:
    """Charged cost per MDCP primitive."""
    mindeg: int
    nbh: int
    spf: int
    cut: int = 1

    def __post_init__(self):
        if min(self.mindeg, self.nbh, self.spf, self.cut) < 1:
            raise InvalidInputError("MDCP costs must be >= 1")

    @classmethod
    def for_n(cls, n: int) -> "MdcpCostTable":
        log_n = log2_ceil(n)
        return cls(mindeg=math.ceil(math.sqrt(n)) * log_n, nbh=log_n, spf=log_n ** 6, cut=1)


class MdcpOracle:
    """Charged MDCP primitives over a hidden graph."""

    def __init__(self, graph: SimpleGraph, ledger: Optional[QueryLedger] = None,
                 costs: Optional[MdcpCostTable] = None):
        self._graph = graph
        self.ledger = ledger if ledger is not None else QueryLedger()
        self.costs = costs if costs is not None else MdcpCostTable.for_n(graph.n)

    @property
    def n(self) -> int:
        return self._graph.n

    def mindeg(self) -> int:
        self.ledger.charge(QueryCategory.MDCP_MINDEG, self.costs.mindeg)
        return int(self._graph.degrees.min())

    def nbh(self, v: int) -> Tuple[int, ...]:
        self.ledger.charge(QueryCategory.MDCP_NBH, self.costs.nbh)
        return self._graph.adjacency(v)

    def spf(self, removed: Iterable[Sequence[int]] = ()) -> List[Edge]:
        """Spanning forest of (V, E minus E'), E' a known subset of E."""
        excluded = set()
        for u, v in removed:
            u, v = int(u), int(v)
            if not self._graph.has_edge(u, v):
                raise InvalidInputError(f"spf: ({u}, {v}) is not an edge")
            excluded.add(normalize_edge(u, v))
        self.ledger.charge(QueryCategory.MDCP_SPF, self.costs.spf)
        partition = VertexPartition(self.n)
        return [e for e in self._graph.edges() if e not in excluded and partition.union(*e)]

    def cut(self, s: VertexSet) -> int:
        self.ledger.charge(QueryCategory.MDCP_CUT, self.costs.cut)
        return self._graph.cut_size(s)

    def query(self, kind: str, arg=None):
        """Dispatch one primitive by name."""
        if kind == "mindeg":
            return self.mindeg()
        if kind == "nbh":
            return self.nbh(int(arg))
        if kind == "spf":
            return self.spf(arg or ())
        if kind == "cut":
            return self.cut(arg)
        raise InvalidInputError(f"unknown MDCP primitive {kind!r}", {"known": list(MDCP_KINDS)})

    def modeled_min_cut(self, partition: VertexPartition, exponent: int = 8) -> CutWitness:
        """Exact min cut of the contraction, charged as modeled cut-primitive cost."""
        units = modeled_mincut_units(partition.block_count, exponent) * self.costs.cut
        self.ledger.charge(QueryCategory.MODELED, units)
        self.ledger.tag("mn_modeled")
        return exact_min_cut(self._graph, partition, exhaustive_limit=0)
