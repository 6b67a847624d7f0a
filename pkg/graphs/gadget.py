"""Reduction from minimum degree to edge connectivity."""

from itertools import combinations

from errors import InvalidInputError
from graphs.simple_graph import SimpleGraph


def degree_to_connectivity_gadget(graph: SimpleGraph) -> SimpleGraph:
    """Graph on 2n vertices whose edge connectivity is delta(G) + n.

    Vertices 0..n-1 are the original ones, n..2n-1 form a clique K, and
    every original vertex is joined to every vertex of K.
    """
    n = graph.n
    if n < 2:
        raise InvalidInputError("gadget needs n >= 2")
    edges = list(graph.edges())
    edges.extend((v, n + j) for v in range(n) for j in range(n))
    edges.extend((n + a, n + b) for a, b in combinations(range(n), 2))
    return SimpleGraph(2 * n, edges)
