"""1-out and 2-out edge samples of a directed subgraph."""

from typing import Set

import numpy as np

from graphs import DirectedSubgraph, normalize_edge
from graphs.simple_graph import Edge


def one_out_sample(h: DirectedSubgraph, rng: np.random.Generator) -> Set[Edge]:
    """One uniform outgoing arc per vertex with out-arcs, as undirected edges."""
    chosen = set()
    for u in h.tails():
        arcs = h.out_arcs(u)
        chosen.add(normalize_edge(u, arcs[rng.integers(len(arcs))]))
    return chosen


def two_out_sample(h: DirectedSubgraph, rng: np.random.Generator) -> Set[Edge]:
    """Two independent uniform draws (with replacement) per vertex with out-arcs."""
    chosen = set()
    for u in h.tails():
        arcs = h.out_arcs(u)
        for pick in rng.integers(len(arcs), size=2):
            chosen.add(normalize_edge(u, arcs[pick]))
    return chosen
