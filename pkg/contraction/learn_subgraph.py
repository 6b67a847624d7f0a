"""Give almost every vertex of W out-degree >= h inside G[W].

A fair coin splits W into two sides. Vertices with at least h neighbours
on the other side are kept; too many dropped vertices is a FAIL. Each kept
side then recovers h neighbours into the other side.
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from errors import Failure, InvalidInputError, is_failure
from graphs import DirectedSubgraph, as_mask
from oracles import GraphView, QueryPrimitives
from recovery import wc_recover_k_from_all

logger = logging.getLogger(__name__)


def learn_subgraph(oracle: QueryPrimitives, h: int, tau: float, rng: np.random.Generator,
                   vertices: Optional[Sequence[int]] = None, clock_factor: float = 100.0,
                   sides: Optional[np.ndarray] = None) -> Union[DirectedSubgraph, Failure]:
    """Arcs inside W giving out-degree >= h to all but tau + |W|/h vertices.

    Args:
        oracle: Queries on G[W]; a GraphView's vertex set is used as W.
        h: Degree threshold and recovery target.
        tau: Allowed number of low-degree vertices.
        rng: Randomness for the bipartition and the recovery.
        vertices: W, when the oracle is not already restricted to it.
        clock_factor: Clock for each of the two recovery calls.
        sides: Optional fixed bipartition (True marks the first side).
    """
    if h < 1:
        raise InvalidInputError(f"h must be positive, got {h}")
    if vertices is not None:
        w = np.flatnonzero(as_mask(oracle.n, vertices))
    elif isinstance(oracle, GraphView):
        w = np.flatnonzero(oracle.vertices)
    else:
        w = np.arange(oracle.n)
    first = rng.random(w.size) < 0.5 if sides is None else np.asarray(sides, dtype=bool)
    if first.shape != w.shape:
        raise InvalidInputError("bipartition must label every vertex of W")
    side_one, side_two = w[first], w[~first]
    mask_one, mask_two = as_mask(oracle.n, side_one), as_mask(oracle.n, side_two)

    kept_one = [int(v) for v in side_one if oracle.cross([int(v)], mask_two) >= h]
    kept_two = [int(v) for v in side_two if oracle.cross([int(v)], mask_one) >= h]
    dropped = w.size - len(kept_one) - len(kept_two)
    allowed = tau + w.size / h
    logger.debug(f"learn_subgraph: |W|={w.size}, kept {len(kept_one)}+{len(kept_two)}, "
                 f"dropped {dropped} (allowed {allowed:.1f})")
    if dropped > allowed:
        return Failure("learn_subgraph", "too many low-degree vertices",
                       {"dropped": dropped, "allowed": allowed})

    arcs = DirectedSubgraph(oracle.n)
    for kept, other in ((kept_one, side_two), (kept_two, side_one)):
        if not kept:
            continue
        part = wc_recover_k_from_all(oracle, kept, other, h, rng,
                                     clock_factor=clock_factor, min_degree=h)
        if is_failure(part):
            return part
        arcs = arcs.merged(part)
    return arcs
