"""Graph and certificate text files.

Graph format: first line "n m", then m lines "u v" (0-based, undirected,
no duplicates, no self-loops). Blank lines and lines starting with '#'
are ignored.
"""

import logging
from pathlib import Path
from typing import List, Tuple, Union

from errors import GraphFormatError, InvalidInputError
from graphs.certificate import CertificateForests
from graphs.simple_graph import SimpleGraph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _content_lines(text: str) -> List[Tuple[int, str]]:
    return [(i, line.strip()) for i, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.strip().startswith("#")]


def graph_from_text(text: str, source: str = "<string>") -> SimpleGraph:
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError(source, 1, "missing header 'n m'")
    header_no, header = lines[0]
    try:
        n, m = (int(tok) for tok in header.split())
    except ValueError:
        raise GraphFormatError(source, header_no, f"bad header {header!r}")
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(source, header_no, f"header says {m} edges, found {len(body)}")
    edges = []
    for line_no, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(source, line_no, f"expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(source, line_no, f"non-integer id in {line!r}")
    try:
        return SimpleGraph(n, edges)
    except InvalidInputError as e:
        raise GraphFormatError(source, header_no, e.message)


def graph_to_text(graph: SimpleGraph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def load_graph(path: PathLike) -> SimpleGraph:
    """Read and validate a graph file."""
    path = Path(path)
    graph = graph_from_text(path.read_text(), str(path))
    logger.info(f"Loaded {graph} from {path}")
    return graph


def save_graph(graph: SimpleGraph, path: PathLike) -> None:
    Path(path).write_text(graph_to_text(graph))


def save_certificate(certificate: CertificateForests, path: PathLike) -> None:
    """Write one "F i" section per forest followed by its edges."""
    Path(path).write_text(certificate.to_text())
