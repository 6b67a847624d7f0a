"""Vertex-arrival events and stream files.

Stream format: one event per line, "V u : v1 v2 ...". The first content
line is "n <count> <model>". Blank lines and '#' lines are ignored.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from errors import GraphFormatError, InvalidInputError
from graphs import SimpleGraph

logger = logging.getLogger(__name__)

ArrivalModel = Literal["complete", "random", "explicit"]
ARRIVAL_MODELS: Tuple[str, ...] = ("complete", "random", "explicit")


@dataclass(frozen=True)
class VertexArrivalEvent:
    """One vertex with the edges revealed together with it."""
    vertex: int
    neighbors: Tuple[int, ...]

    @property
    def words(self) -> int:
        return 1 + len(self.neighbors)

    def to_line(self) -> str:
        return f"V {self.vertex} : " + " ".join(str(u) for u in self.neighbors)


@dataclass
class VertexStream:
    """Events of one pass together with the arrival model they follow."""
    n: int
    model: ArrivalModel
    events: List[VertexArrivalEvent]

    def __iter__(self):
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def order(self) -> List[int]:
        return [e.vertex for e in self.events]

    def validate(self) -> None:
        """Every vertex arrives once; backward models list only earlier vertices."""
        seen = np.zeros(self.n, dtype=bool)
        for event in self.events:
            v = event.vertex
            if not 0 <= v < self.n or seen[v]:
                raise InvalidInputError(f"vertex {v} out of range or repeated")
            if any(not 0 <= u < self.n or u == v for u in event.neighbors):
                raise InvalidInputError(f"arrival of {v} lists an invalid neighbour")
            if self.model != "complete":
                late = [u for u in event.neighbors if not seen[u]]
                if late:
                    raise InvalidInputError(
                        f"{self.model} arrival of {v} lists unseen vertices", {"unseen": late[:5]})
            seen[v] = True
        if not seen.all():
            raise InvalidInputError(f"stream misses {int(np.count_nonzero(~seen))} vertices")


def synthesize_stream(graph: SimpleGraph, model: str, rng: Optional[np.random.Generator] = None,
                      order: Optional[Sequence[int]] = None) -> VertexStream:
    """Replay a graph as a vertex-arrival stream.

    "complete" lists every incident edge; "random" and "explicit" list only
    edges to vertices that arrived earlier. "random" draws a uniform order
    from rng; the other models use `order` (identity by default) unless an
    rng is given without an order.
    """
    if model not in ARRIVAL_MODELS:
        raise InvalidInputError(f"unknown arrival model {model!r}")
    if order is None:
        if model == "random" or rng is not None:
            if rng is None:
                raise InvalidInputError("random arrival needs an rng")
            order = rng.permutation(graph.n).tolist()
        else:
            order = list(range(graph.n))
    order = [int(v) for v in order]
    if sorted(order) != list(range(graph.n)):
        raise InvalidInputError("order must be a permutation of the vertices")
    position = np.empty(graph.n, dtype=np.int64)
    position[order] = np.arange(graph.n)
    events = []
    for v in order:
        neighbors = graph.adjacency(v)
        if model != "complete":
            neighbors = tuple(u for u in neighbors if position[u] < position[v])
        events.append(VertexArrivalEvent(v, tuple(neighbors)))
    return VertexStream(graph.n, model, events)


def stream_to_text(stream: VertexStream) -> str:
    lines = [f"n {stream.n} {stream.model}"]
    lines.extend(event.to_line() for event in stream.events)
    return "\n".join(lines) + "\n"


def stream_from_text(text: str, source: str = "<string>") -> VertexStream:
    lines = [(i, line.strip()) for i, line in enumerate(text.splitlines(), start=1)
             if line.strip() and not line.strip().startswith("#")]
    if not lines:
        raise GraphFormatError(source, 1, "missing header 'n <count> <model>'")
    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "n" or parts[2] not in ARRIVAL_MODELS:
        raise GraphFormatError(source, header_no, f"bad header {header!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise GraphFormatError(source, header_no, f"bad vertex count {parts[1]!r}")
    events = []
    for line_no, line in lines[1:]:
        head, sep, tail = line.partition(":")
        tokens = head.split()
        if not sep or len(tokens) != 2 or tokens[0] != "V":
            raise GraphFormatError(source, line_no, f"expected 'V u : v1 v2 ...', got {line!r}")
        try:
            events.append(VertexArrivalEvent(int(tokens[1]), tuple(int(u) for u in tail.split())))
        except ValueError:
            raise GraphFormatError(source, line_no, f"non-integer id in {line!r}")
    stream = VertexStream(n, parts[2], events)
    try:
        stream.validate()
    except InvalidInputError as e:
        raise GraphFormatError(source, header_no, e.message)
    return stream


def read_stream(path: Union[str, Path]) -> VertexStream:
    path = Path(path)
    stream = stream_from_text(path.read_text(), str(path))
    logger.info(f"Loaded {stream.model} stream of {stream.n} vertices from {path}")
    return stream


def write_stream(stream: VertexStream, path: Union[str, Path]) -> None:
    Path(path).write_text(stream_to_text(stream))


def stream_graph(stream: VertexStream) -> SimpleGraph:
    """The graph a stream reveals."""
    edges = set()
    for event in stream.events:
        for u in event.neighbors:
            edges.add((min(u, event.vertex), max(u, event.vertex)))
    return SimpleGraph(stream.n, sorted(edges))
