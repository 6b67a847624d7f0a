"""Directed subgraphs (arc sets over V) used for 1-out and 2-out sampling."""

from typing import Iterable, Iterator, List, Sequence, Set, Tuple

from errors import InvalidInputError
from graphs.simple_graph import Edge, SimpleGraph, normalize_edge


class DirectedSubgraph:
    """Per-vertex outgoing arc lists; no self-arcs, no duplicate arcs."""

    def __init__(self, n: int):
        self.n = n
        self._arcs: List[List[int]] = [[] for _ in range(n)]
        self._arc_sets: List[Set[int]] = [set() for _ in range(n)]

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "DirectedSubgraph":
        h = cls(n)
        for u, v in arcs:
            h.add_arc(int(u), int(v))
        return h

    @classmethod
    def full(cls, graph: SimpleGraph) -> "DirectedSubgraph":
        """Every edge of the graph in both directions."""
        h = cls(graph.n)
        for u in range(graph.n):
            h.add_arcs(u, graph.adjacency(u))
        return h

    def add_arc(self, u: int, v: int) -> None:
        if u == v:
            raise InvalidInputError(f"self-arc at {u}")
        if v not in self._arc_sets[u]:
            self._arc_sets[u].add(v)
            self._arcs[u].append(v)

    def add_arcs(self, u: int, heads: Iterable[int]) -> None:
        for v in heads:
            self.add_arc(u, int(v))

    def out_arcs(self, u: int) -> Tuple[int, ...]:
        return tuple(self._arcs[u])

    def out_degree(self, u: int) -> int:
        return len(self._arcs[u])

    def tails(self) -> List[int]:
        """Vertices with at least one outgoing arc, ascending."""
        return [u for u in range(self.n) if self._arcs[u]]

    @property
    def arc_count(self) -> int:
        return sum(len(a) for a in self._arcs)

    def arcs(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.n):
            for v in self._arcs[u]:
                yield (u, v)

    def edges(self) -> Set[Edge]:
        return {normalize_edge(u, v) for u, v in self.arcs()}

    def is_subgraph_of(self, graph: SimpleGraph) -> bool:
        return all(graph.has_edge(u, v) for u, v in self.arcs())

    def without_out_arcs(self, v: int) -> "DirectedSubgraph":
        """Copy with every outgoing arc of v removed."""
        h = DirectedSubgraph(self.n)
        for u in range(self.n):
            if u != v:
                h.add_arcs(u, self._arcs[u])
        return h

    def merged(self, other: "DirectedSubgraph") -> "DirectedSubgraph":
        h = DirectedSubgraph(self.n)
        for source in (self, other):
            for u, v in source.arcs():
                h.add_arc(u, v)
        return h

    def __repr__(self) -> str:
        return f"DirectedSubgraph(n={self.n}, arcs={self.arc_count})"
