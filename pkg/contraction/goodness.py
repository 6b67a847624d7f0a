"""How likely a 1-out sample is to avoid a cut: per-vertex crossing ratios."""

import csv
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, Sequence, Union

from errors import InvalidInputError
from graphs import DirectedSubgraph, SimpleGraph, normalize_edge

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class GoodnessReport:
    """q_u = fraction of u's out-arcs crossing C (0 without out-arcs)."""
    ratios: Dict[int, Fraction]
    max_q: Fraction
    sum_q: Fraction

    def is_good(self, alpha: Number, beta: Number) -> bool:
        return self.max_q <= _exact(alpha) and self.sum_q <= _exact(beta)

    def write_csv(self, path: Union[str, Path]) -> None:
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["vertex", "q_u"])
            for u in sorted(self.ratios):
                writer.writerow([u, str(self.ratios[u])])


def _exact(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x).limit_denominator(10 ** 9)


def goodness_report(graph: SimpleGraph, h: DirectedSubgraph,
                    cut: Iterable[Sequence[int]]) -> GoodnessReport:
    """Crossing ratios of H with respect to an edge set C of the graph."""
    cut_set = set()
    for u, v in cut:
        if not graph.has_edge(int(u), int(v)):
            raise InvalidInputError(f"({u}, {v}) is not an edge of the graph")
        cut_set.add(normalize_edge(int(u), int(v)))
    ratios: Dict[int, Fraction] = {}
    for u in range(h.n):
        arcs = h.out_arcs(u)
        if not arcs:
            ratios[u] = Fraction(0)
            continue
        crossing = sum(1 for v in arcs if normalize_edge(u, v) in cut_set)
        ratios[u] = Fraction(crossing, len(arcs))
    return GoodnessReport(ratios=ratios,
                          max_q=max(ratios.values(), default=Fraction(0)),
                          sum_q=sum(ratios.values(), Fraction(0)))


def miss_probability_bound(alpha: Number, beta: Number) -> float:
    """Lower bound (1 - alpha)^ceil(beta/alpha) on a 1-out sample avoiding C."""
    a, b = _exact(alpha), _exact(beta)
    if a >= 1 or a < 0:
        raise InvalidInputError(f"alpha must lie in [0, 1), got {alpha}")
    if b < 0:
        raise InvalidInputError(f"beta must be non-negative, got {beta}")
    if a == 0 or b == 0:
        raise InvalidInputError(f"ceil(beta/alpha) must be at least 1, got alpha={alpha}, beta={beta}")
    return float((1 - a) ** math.ceil(b / a))
