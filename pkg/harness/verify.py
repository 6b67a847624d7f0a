"""Check a claimed edge connectivity against the exact minimum cut."""

import logging
from dataclasses import dataclass
from typing import List, Literal, Optional

from caching import get_cache_registry
from errors import InvalidInputError
from graphs import CutWitness, SimpleGraph, cut_edges, exact_min_cut

logger = logging.getLogger(__name__)

Verdict = Literal["pass", "underestimate", "overestimate"]

_cache = get_cache_registry()


@_cache.memoize(key_fn=lambda graph: graph.digest())
def exact_witness(graph: SimpleGraph) -> CutWitness:
    """Exact minimum cut, memoised per graph digest."""
    return exact_min_cut(graph)


def exact_lambda(graph: SimpleGraph, limit: Optional[int] = None) -> Optional[int]:
    """lambda(G), or None when the graph is above `limit` vertices."""
    if graph.n < 2:
        return 0
    if limit is not None and graph.n > limit:
        return None
    return exact_witness(graph).value


@dataclass
class VerifyReport:
    verdict: Verdict
    claimed: int
    exact: int
    margin: int
    witness: List[int]
    witness_edges: List[tuple]

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "claimed": self.claimed, "exact": self.exact,
                "margin": self.margin, "witness": self.witness,
                "witness_edges": [list(e) for e in self.witness_edges]}


def verify(graph: SimpleGraph, claimed: int) -> VerifyReport:
    """Compare `claimed` with lambda(G).

    A value below lambda is flagged as an underestimate, which no run may
    produce; a value above is an overestimate with its margin.
    """
    if graph.n < 2:
        raise InvalidInputError("verification needs at least two vertices")
    witness = exact_witness(graph)
    margin = int(claimed) - witness.value
    verdict: Verdict = "pass" if margin == 0 else ("underestimate" if margin < 0 else "overestimate")
    if verdict == "underestimate":
        logger.error(f"claimed {claimed} is below the exact minimum cut {witness.value}")
    return VerifyReport(verdict=verdict, claimed=int(claimed), exact=witness.value, margin=margin,
                        witness=witness.members, witness_edges=cut_edges(graph, witness.side))
