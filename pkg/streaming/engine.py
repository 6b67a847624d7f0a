"""One-pass edge connectivity over vertex-arrival streams.

One instance runs per minimum-degree estimate d = 2^l. Each instance keeps
r repetitions of star contraction, and every repetition grows 2d forests of
its contracted graph by least-index insertion while the stream passes.
At the end the exact minimum degree picks the instance with
d <= delta < 2d, and the answer is min(delta, lambda_i) over its surviving
repetitions.

Memory is counted in words: one per stored vertex id, two per stored
edge, and one per vertex for the relabel map and flags of a repetition.
A repetition that goes over budget is aborted and its words are released.
Instances are replayed one after another over the buffered events, but
their peaks are summed as if they had run side by side.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Union

import numpy as np

from connectivity.config import EcConfig
from contraction import sample_centers
from errors import Failure, InvalidInputError
from graphs import CertificateForests, VertexPartition, normalize_edge
from graphs.simple_graph import Edge
from streaming.events import VertexArrivalEvent, VertexStream
from streaming.sampler import parallel_center_sampler

logger = logging.getLogger(__name__)


class ForestStack:
    """Edge-disjoint forests F_1..F_limit, sparse union-find per forest.

    Cycles are checked on the ids passed to place(); the stored edge is the
    original one when given, so parallel edges between two supervertices
    stay distinct entries.
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise InvalidInputError(f"forest stack needs limit >= 1, got {limit}")
        self.limit = limit
        self.forests: List[List[Edge]] = []
        self._parents: List[Dict[int, int]] = []

    @staticmethod
    def _find(parent: Dict[int, int], v: int) -> int:
        while parent.get(v, v) != v:
            grand = parent.get(parent[v], parent[v])
            parent[v] = grand
            v = grand
        return v

    def place(self, u: int, v: int, edge: Optional[Edge] = None) -> int:
        """Index of the forest that took (u, v), or -1 if every forest has a cycle."""
        for i in range(self.limit):
            if i == len(self.forests):
                self.forests.append([])
                self._parents.append({})
            parent = self._parents[i]
            ru, rv = self._find(parent, u), self._find(parent, v)
            if ru != rv:
                parent.setdefault(ru, ru)
                parent[rv] = ru
                self.forests[i].append(normalize_edge(*(edge if edge is not None else (u, v))))
                return i
        return -1

    @property
    def edge_count(self) -> int:
        return sum(len(f) for f in self.forests)

    @property
    def words(self) -> int:
        return 2 * self.edge_count + sum(len(p) for p in self._parents)

    def edges(self) -> List[Edge]:
        return [e for forest in self.forests for e in forest]


class StreamRepetition:
    """One repetition: its centers, relabel map and forest stack."""

    def __init__(self, n: int, d: int, centers: Set[int], fixed: Set[int],
                 budget: int, rng: np.random.Generator, abort_without_center: bool):
        self.n = n
        self.d = d
        self.centers = centers
        self.fixed = fixed
        self.budget = budget
        self.rng = rng
        self.abort_without_center = abort_without_center
        self.relabel: Dict[int, int] = {}
        self.forests = ForestStack(2 * d)
        self.aborted: Optional[str] = None
        self.peak_words = self.words

    @property
    def words(self) -> int:
        return self.n + len(self.centers) + len(self.relabel) + self.forests.words

    def label(self, v: int) -> int:
        return self.relabel.get(v, v)

    def _abort(self, reason: str) -> None:
        self.aborted = reason
        self.relabel.clear()
        self.forests = ForestStack(1)
        logger.debug(f"repetition (d={self.d}) aborted: {reason}")

    def arrive(self, v: int, neighbors: Sequence[int], earlier: Sequence[int]) -> None:
        """Contract v if it has a center to join, then place its edges to earlier vertices."""
        if self.aborted:
            return
        if v not in self.centers and v not in self.fixed:
            options = [u for u in neighbors if u in self.centers]
            if options:
                self.relabel[v] = options[int(self.rng.integers(len(options)))]
            elif self.abort_without_center:
                self._abort(f"vertex {v} has no center neighbour")
                return
        a = self.label(v)
        for u in earlier:
            b = self.label(u)
            if a != b:
                self.forests.place(a, b, (v, u))
        words = self.words
        self.peak_words = max(self.peak_words, words)
        if words > self.budget:
            self._abort(f"{words} words over budget {self.budget}")

    def partition(self) -> VertexPartition:
        return VertexPartition.from_labels([self.label(v) for v in range(self.n)])

    def certificate(self) -> CertificateForests:
        """The forest stack as a certificate of the contraction seen so far."""
        forests = [list(f) for f in self.forests.forests]
        while len(forests) < self.forests.limit:
            forests.append([])
        return CertificateForests(forests, self.partition())

    def min_cut(self) -> Optional[int]:
        """Minimum cut of the contracted certificate; None when nothing is left to cut."""
        if self.aborted:
            return None
        certificate = self.certificate()
        if certificate.partition.block_count < 2:
            return None
        return certificate.min_cut().value

    @property
    def supervertices(self) -> int:
        return self.n - len(self.relabel)


@dataclass
class EstimateReport:
    d: int
    p: float
    repetitions: int
    aborted: int
    peak_words: int
    prefix: int = 0
    supervertices: List[int] = field(default_factory=list)
    values: List[Optional[int]] = field(default_factory=list)


class StreamEstimate:
    """All repetitions for one minimum-degree estimate d."""

    def __init__(self, n: int, d: int, p: float, center_sets: List[Set[int]], fixed: Set[int],
                 budget: int, rng: np.random.Generator, abort_without_center: bool):
        self.n = n
        self.d = d
        self.p = p
        self.fixed = fixed
        self.repetitions = [StreamRepetition(n, d, centers, fixed, budget, rng, abort_without_center)
                            for centers in center_sets]
        self.seen = np.zeros(n, dtype=bool)
        self.buffered_words = 0

    def feed(self, event: VertexArrivalEvent) -> None:
        v = event.vertex
        earlier = [u for u in event.neighbors if self.seen[u]]
        for repetition in self.repetitions:
            repetition.arrive(v, event.neighbors, earlier)
        self.seen[v] = True

    @property
    def peak_words(self) -> int:
        return self.n + len(self.fixed) + self.buffered_words + sum(
            rep.peak_words for rep in self.repetitions)

    def survivors(self) -> List[StreamRepetition]:
        return [rep for rep in self.repetitions if not rep.aborted]

    def report(self, with_values: bool = False) -> EstimateReport:
        survivors = self.survivors()
        return EstimateReport(
            d=self.d, p=self.p, repetitions=len(self.repetitions),
            aborted=len(self.repetitions) - len(survivors), peak_words=self.peak_words,
            prefix=len(self.fixed), supervertices=[rep.supervertices for rep in survivors],
            values=[rep.min_cut() for rep in survivors] if with_values else [])


@dataclass
class StreamOutcome:
    """Answer (or FAIL), exact minimum degree and the memory ledger of a pass."""
    value: Union[int, Failure]
    model: str
    delta: int
    peak_words: int
    budget: int
    estimates: List[EstimateReport] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return isinstance(self.value, Failure)

    def estimate_for(self, delta: int) -> Optional[EstimateReport]:
        for report in self.estimates:
            if report.d <= delta < 2 * report.d:
                return report
        return None


def estimate_values(n: int) -> List[int]:
    """2^l for l = 0 .. ceil(log2 n) - 1."""
    return [2 ** level for level in range(max(1, math.ceil(math.log2(max(n, 2)))))]


def _exact_degrees(events: Sequence[VertexArrivalEvent], n: int, model: str) -> np.ndarray:
    degrees = np.zeros(n, dtype=np.int64)
    for event in events:
        if model == "complete":
            degrees[event.vertex] = len(event.neighbors)
        else:
            degrees[event.vertex] += len(event.neighbors)
            for u in event.neighbors:
                degrees[u] += 1
    return degrees


def _combine(stream: VertexStream, delta: int, estimates: List[StreamEstimate],
             budget: int) -> StreamOutcome:
    reports = [estimate.report(with_values=estimate.d <= delta < 2 * estimate.d) for estimate in estimates]
    outcome = StreamOutcome(value=delta, model=stream.model, delta=delta,
                            peak_words=stream.n + sum(r.peak_words for r in reports),
                            budget=budget, estimates=reports)
    if delta == 0:
        outcome.value = 0
        return outcome
    chosen = outcome.estimate_for(delta)
    if chosen is None or chosen.aborted == chosen.repetitions:
        outcome.value = Failure("stream", "every repetition of the matching estimate aborted",
                                {"delta": delta})
        logger.info(f"{stream.model} stream: {outcome.value}")
        return outcome
    values = [v for v in chosen.values if v is not None]
    outcome.value = min([delta] + values)
    logger.info(f"{stream.model} stream: delta={delta}, d={chosen.d}, answer={outcome.value}, "
                f"peak words={outcome.peak_words}")
    return outcome


def _check_model(stream: VertexStream, allowed: Sequence[str]) -> None:
    if stream.model not in allowed:
        raise InvalidInputError(f"stream model {stream.model!r} not accepted here, need one of {allowed}")


def stream_ec_complete(stream: VertexStream, cfg: EcConfig, rng: np.random.Generator) -> StreamOutcome:
    """Edge connectivity of a complete-arrival stream in one pass.

    Centers of every repetition are sampled before the stream starts. An
    arriving vertex outside the centers joins a uniform center neighbour,
    and a vertex with none aborts that repetition.
    """
    _check_model(stream, ("complete",))
    n = stream.n
    events = list(stream)
    budget = cfg.memory_budget(n)
    r = cfg.stream_repetitions(n)
    estimates = []
    for d in estimate_values(n):
        p = cfg.stream_probability(n, d)
        center_sets = [set(sample_centers(n, p, rng).tolist()) for _ in range(r)]
        estimate = StreamEstimate(n, d, p, center_sets, set(), budget, rng, abort_without_center=True)
        for event in events:
            estimate.feed(event)
        estimates.append(estimate)
    delta = int(_exact_degrees(events, n, "complete").min()) if n else 0
    return _combine(stream, delta, estimates, budget)


def stream_ec_random(stream: VertexStream, cfg: EcConfig, rng: np.random.Generator) -> StreamOutcome:
    """Edge connectivity of a random-arrival stream in one pass.

    The center sets come from the stream prefix; the prefix vertices are
    never contracted, and a later vertex with no earlier center neighbour
    stays on its own.
    """
    _check_model(stream, ("random", "explicit"))
    n = stream.n
    events = list(stream)
    budget = cfg.memory_budget(n)
    r = cfg.stream_repetitions(n)
    estimates = []
    for d in estimate_values(n):
        p = cfg.stream_probability(n, d)
        reader = iter(events)
        center_sets, prefix = parallel_center_sampler(reader, n, p, r, rng)
        fixed = {event.vertex for event in prefix}
        estimate = StreamEstimate(n, d, p, center_sets, fixed, budget, rng, abort_without_center=False)
        estimate.buffered_words = sum(event.words for event in prefix)
        for event in prefix:
            estimate.feed(event)
        for event in reader:
            estimate.feed(event)
        estimates.append(estimate)
    delta = int(_exact_degrees(events, n, "random").min()) if n else 0
    return _combine(stream, delta, estimates, budget)


def stream_ec(stream: VertexStream, cfg: EcConfig, rng: np.random.Generator) -> StreamOutcome:
    """Dispatch on the stream's arrival model."""
    if stream.model == "complete":
        return stream_ec_complete(stream, cfg, rng)
    return stream_ec_random(stream, cfg, rng)
