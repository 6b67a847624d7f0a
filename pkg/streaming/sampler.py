"""Independent center sets read off the front of a random-order stream.

Set i is built from its size k_i and the number f_i of members not in any
earlier set: k_i - f_i members are drawn from the union so far and the f_i
new ones are simply the next vertices of the stream. On a uniformly random
stream the r sets are distributed as r independent p-samples of [n], and
only the first |union| vertices are consumed.
"""

import logging
from typing import Callable, Iterator, List, Set, Tuple

import numpy as np

from errors import InvalidInputError, StreamExhaustedError
from streaming.events import VertexArrivalEvent

logger = logging.getLogger(__name__)


def _sizes(n: int, p: float, r: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """k_i = |X_i| and f_i = |X_i minus earlier X_j| for independent p-samples X_i."""
    masks = rng.random((r, n)) < p
    earlier = np.zeros(n, dtype=bool)
    fresh = np.empty(r, dtype=np.int64)
    for i in range(r):
        fresh[i] = np.count_nonzero(masks[i] & ~earlier)
        earlier |= masks[i]
    return masks.sum(axis=1).astype(np.int64), fresh


def _assemble(n: int, p: float, r: int, rng: np.random.Generator,
              next_fresh: Callable[[int], int]) -> List[Set[int]]:
    if not 0 < p <= 1:
        raise InvalidInputError(f"sampling probability must be in (0, 1], got {p}")
    if r < 1:
        raise InvalidInputError(f"need at least one set, got r={r}")
    sizes, fresh = _sizes(n, p, r, rng)
    needed = int(fresh.sum())
    union: List[int] = []
    sets: List[Set[int]] = []
    for k, f in zip(sizes, fresh):
        reused = rng.choice(len(union), size=int(k - f), replace=False) if k > f else []
        chosen = {union[j] for j in reused}
        new = [next_fresh(needed) for _ in range(int(f))]
        chosen.update(new)
        union.extend(new)
        sets.append(chosen)
    return sets


def parallel_center_sampler(stream: Iterator[VertexArrivalEvent], n: int, p: float, r: int,
                            rng: np.random.Generator
                            ) -> Tuple[List[Set[int]], List[VertexArrivalEvent]]:
    """r center sets taken from the stream prefix.

    Returns the sets and the consumed prefix; its length equals the size of
    the union of the sets.

    Raises:
        StreamExhaustedError: The stream ends before the union is complete.
    """
    consumed: List[VertexArrivalEvent] = []

    def next_fresh(needed: int) -> int:
        try:
            event = next(stream)
        except StopIteration:
            raise StreamExhaustedError(needed, len(consumed))
        consumed.append(event)
        return event.vertex

    sets = _assemble(n, p, r, rng, next_fresh)
    logger.debug(f"sampled {r} center sets from a prefix of {len(consumed)} vertices")
    return sets, consumed


def independent_subsets(n: int, p: float, r: int, rng: np.random.Generator) -> List[Set[int]]:
    """The same procedure with fresh members drawn uniformly instead of read."""
    order = iter(rng.permutation(n).tolist())
    return _assemble(n, p, r, rng, lambda _needed: next(order))
