"""Tests for vertex-arrival streams, the prefix sampler and the one-pass algorithms."""

from collections import Counter
from itertools import combinations

import numpy as np
import pytest
from scipy.stats import binom, chisquare

from errors import GraphFormatError, InvalidInputError, StreamExhaustedError
from graphs import exact_min_cut
from streaming import (
    ForestStack,
    StreamRepetition,
    VertexArrivalEvent,
    VertexStream,
    estimate_values,
    independent_subsets,
    parallel_center_sampler,
    read_stream,
    stream_ec,
    stream_ec_complete,
    stream_ec_random,
    stream_from_text,
    stream_graph,
    synthesize_stream,
    write_stream,
)
from tests.builders import complete_graph, cycle_graph, path_graph, random_graph, two_cliques


def _events(order):
    return [VertexArrivalEvent(v, ()) for v in order]


class TestEvents:
    """Synthesis, validation and the stream file format."""

    def test_complete_lists_all_edges(self, c6, rng):
        """Complete arrival carries every incident edge."""
        stream = synthesize_stream(c6, "complete", rng)
        assert all(len(event.neighbors) == 2 for event in stream)
        stream.validate()

    def test_random_lists_earlier_only(self, two_k5, rng):
        """Random arrival lists only previously seen vertices."""
        stream = synthesize_stream(two_k5, "random", rng)
        seen = set()
        for event in stream:
            assert set(event.neighbors) <= seen
            seen.add(event.vertex)
        assert stream_graph(stream) == two_k5

    def test_explicit_order(self, c6):
        """Explicit arrival uses the given order."""
        stream = synthesize_stream(c6, "explicit", order=[5, 4, 3, 2, 1, 0])
        assert stream.order() == [5, 4, 3, 2, 1, 0]
        assert stream.events[0].neighbors == ()

    def test_random_needs_rng(self, c6):
        """No rng, no random order."""
        with pytest.raises(InvalidInputError):
            synthesize_stream(c6, "random")

    def test_bad_model_and_order(self, c6, rng):
        """Unknown models and non-permutations are rejected."""
        with pytest.raises(InvalidInputError):
            synthesize_stream(c6, "adversarial", rng)
        with pytest.raises(InvalidInputError):
            synthesize_stream(c6, "explicit", order=[0, 0, 1, 2, 3, 4])

    def test_validate_rejects_unseen(self):
        """A random-model event listing a later vertex is invalid."""
        stream = VertexStream(2, "random", [VertexArrivalEvent(0, (1,)), VertexArrivalEvent(1, ())])
        with pytest.raises(InvalidInputError):
            stream.validate()

    def test_file_format(self, tmp_path, rng):
        """Written streams read back with header and 'V u : ...' lines."""
        stream = synthesize_stream(two_cliques(4, 2), "random", rng)
        path = tmp_path / "s.txt"
        write_stream(stream, path)
        text = path.read_text().splitlines()
        assert text[0] == "n 8 random"
        assert text[1].startswith(f"V {stream.events[0].vertex} :")
        assert read_stream(path).events == stream.events

    @pytest.mark.parametrize("text", [
        "",
        "n 3 sideways\n",
        "n 2 complete\nV 0 1\nV 1 : 0\n",
        "n 2 complete\nV 0 : x\n",
        "n 2 random\nV 0 : 1\nV 1 :\n",
    ])
    def test_format_errors(self, text):
        """Malformed stream files raise GraphFormatError."""
        with pytest.raises(GraphFormatError):
            stream_from_text(text)


class TestSampler:
    """Independent center sets from a stream prefix."""

    def test_vanishing_probability(self, rng):
        """p -> 0: r empty sets, nothing consumed."""
        sets, prefix = parallel_center_sampler(iter(_events(range(10))), 10, 1e-12, 3, rng)
        assert sets == [set(), set(), set()]
        assert prefix == []

    def test_prefix_is_union(self, rng):
        """Exactly |union| vertices are consumed, in stream order."""
        order = rng.permutation(40).tolist()
        sets, prefix = parallel_center_sampler(iter(_events(order)), 40, 0.2, 4, rng)
        union = set().union(*sets)
        assert [e.vertex for e in prefix] == order[:len(union)]
        assert {e.vertex for e in prefix} == union

    def test_single_set_is_binomial_prefix(self):
        """r = 1: Y is the first k stream vertices, k ~ Binomial(6, p)."""
        n, p, trials = 6, 0.3, 20_000
        generator = np.random.default_rng(61)
        sizes = Counter()
        for _ in range(trials):
            order = generator.permutation(n).tolist()
            (chosen,), _ = parallel_center_sampler(iter(_events(order)), n, p, 1, generator)
            assert chosen == set(order[:len(chosen)])
            sizes[len(chosen)] += 1
        observed = [sizes[k] for k in range(n + 1)]
        expected = binom.pmf(range(n + 1), n, p) * trials
        assert chisquare(observed, expected * sum(observed) / expected.sum()).pvalue > 0.01

    @pytest.mark.slow
    def test_joint_law(self):
        """n = 5, p = 0.4, r = 2: (Y1, Y2) matches two independent samples."""
        n, p, trials = 5, 0.4, 100_000
        generator = np.random.default_rng(52)
        counts = Counter()
        for _ in range(trials):
            order = generator.permutation(n).tolist()
            (y1, y2), _ = parallel_center_sampler(iter(_events(order)), n, p, 2, generator)
            counts[(frozenset(y1), frozenset(y2))] += 1
        subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]
        law = {s: p ** len(s) * (1 - p) ** (n - len(s)) for s in subsets}
        observed = [counts[(a, b)] for a in subsets for b in subsets]
        expected = [law[a] * law[b] * trials for a in subsets for b in subsets]
        assert sum(observed) == trials
        assert chisquare(observed, expected).pvalue > 0.01

    def test_stream_exhausted(self, rng):
        """A stream shorter than the union raises."""
        with pytest.raises(StreamExhaustedError) as info:
            parallel_center_sampler(iter(_events([0, 1])), 10, 1.0, 1, rng)
        assert info.value.details == {"needed": 10, "available": 2}

    @pytest.mark.parametrize("p, r", [(0.0, 1), (1.5, 1), (0.5, 0)])
    def test_bad_parameters(self, rng, p, r):
        """0 < p <= 1 and r >= 1."""
        with pytest.raises(InvalidInputError):
            parallel_center_sampler(iter(_events(range(4))), 4, p, r, rng)

    def test_independent_subsets(self, rng):
        """p = 1 gives r copies of [n] without a stream."""
        assert independent_subsets(7, 1.0, 3, rng) == [set(range(7))] * 3


class TestForestStack:
    """Least-index insertion."""

    def test_triangle(self):
        """The third triangle edge goes to the second forest, or nowhere."""
        single = ForestStack(1)
        assert [single.place(0, 1), single.place(1, 2), single.place(0, 2)] == [0, 0, -1]
        double = ForestStack(2)
        assert [double.place(0, 1), double.place(1, 2), double.place(2, 0)] == [0, 0, 1]
        assert double.forests[1] == [(0, 2)]

    def test_parallel_edges_stay_distinct(self):
        """Two edges between the same supervertices are stored by their own endpoints."""
        stack = ForestStack(2)
        assert [stack.place(0, 1, (0, 1)), stack.place(0, 1, (3, 2)), stack.place(1, 0, (5, 4))] == [0, 1, -1]
        assert stack.forests == [[(0, 1)], [(2, 3)]]

    def test_words(self):
        """Two words per edge plus one per union-find entry."""
        stack = ForestStack(3)
        stack.place(4, 9)
        assert stack.edge_count == 1
        assert stack.words == 2 + 2

    def test_positive_limit(self):
        """limit >= 1."""
        with pytest.raises(InvalidInputError):
            ForestStack(0)


class TestRepetition:
    """Contraction and certificates while the stream passes."""

    @pytest.mark.parametrize("d", [1, 2])
    def test_certificate_at_checkpoints(self, d):
        """At three checkpoints the stack certifies the contracted seen graph."""
        n = 10
        for seed in range(3):
            generator = np.random.default_rng(seed)
            graph = random_graph(n, 0.5, seed=seed)
            stream = synthesize_stream(graph, "complete", generator)
            centers = set(generator.choice(n, size=4, replace=False).tolist())
            rep = StreamRepetition(n, d, centers, set(), 10 ** 6, generator,
                                   abort_without_center=False)
            seen = set()
            for step, event in enumerate(stream, start=1):
                earlier = [u for u in event.neighbors if u in seen]
                rep.arrive(event.vertex, event.neighbors, earlier)
                seen.add(event.vertex)
                if step not in (3, 6, n):
                    continue
                certificate = rep.certificate()
                assert certificate.is_edge_disjoint() and certificate.is_acyclic()
                blocks = certificate.partition.blocks()
                seen_edges = [(u, v) for u, v in graph.edges() if u in seen and v in seen]
                for size in range(1, len(blocks)):
                    for chosen in combinations(range(1, len(blocks)), size):
                        side = {v for b in chosen for v in blocks[b]}
                        crossing = sum((u in side) != (v in side) for u, v in seen_edges)
                        assert certificate.cut_value(side) >= min(2 * d, crossing)

    def test_contracted_parallel_edges(self, rng):
        """C4 with centers 0 and 1: edges (0, 1) and (2, 3) join the same pair of blocks."""
        graph = cycle_graph(4)
        rep = StreamRepetition(4, 1, {0, 1}, set(), 10 ** 6, rng, abort_without_center=True)
        seen = set()
        for event in synthesize_stream(graph, "complete", order=[0, 1, 2, 3]):
            rep.arrive(event.vertex, event.neighbors, [u for u in event.neighbors if u in seen])
            seen.add(event.vertex)
        certificate = rep.certificate()
        assert certificate.partition.block_count == 2
        assert certificate.forests == [[(0, 1)], [(2, 3)]]
        assert certificate.is_edge_disjoint() and certificate.is_acyclic()
        assert certificate.cut_value({0, 3}) == 2
        assert rep.min_cut() == 2

    def test_abort_without_center(self, c6, rng):
        """Complete model: no center neighbour aborts the repetition."""
        rep = StreamRepetition(6, 1, {0}, set(), 10 ** 6, rng, abort_without_center=True)
        for event in synthesize_stream(c6, "complete", order=[0, 1, 3, 2, 4, 5]):
            rep.arrive(event.vertex, event.neighbors, [])
        assert rep.aborted is not None
        assert rep.min_cut() is None

    def test_budget_abort_and_peak(self, rng):
        """Survivors stay within budget; an overspend aborts."""
        graph = complete_graph(12)
        events = list(synthesize_stream(graph, "random", rng))
        roomy = StreamRepetition(12, 4, set(range(12)), set(), 10 ** 6, rng, False)
        tight = StreamRepetition(12, 4, set(range(12)), set(), 40, rng, False)
        for event in events:
            for rep in (roomy, tight):
                rep.arrive(event.vertex, event.neighbors, list(event.neighbors))
        assert roomy.aborted is None and roomy.peak_words <= 10 ** 6
        assert tight.aborted is not None


class TestStreamComplete:
    """Complete vertex arrival."""

    def test_cycle(self, desk_cfg, rng):
        """C64 in random order -> 2."""
        stream = synthesize_stream(cycle_graph(64), "complete", rng)
        outcome = stream_ec_complete(stream, desk_cfg, rng)
        assert outcome.value == 2
        assert outcome.estimate_for(2).d == 2

    def test_clique(self, desk_cfg, rng):
        """K16 -> 15."""
        stream = synthesize_stream(complete_graph(16), "complete", rng)
        assert stream_ec_complete(stream, desk_cfg, rng).value == 15

    def test_tiny_budget_fails(self, desk_cfg, rng):
        """Every repetition over budget: FAIL with the ledger kept."""
        cfg = desk_cfg.with_overrides(memory_constant=0.001)
        outcome = stream_ec_complete(synthesize_stream(cycle_graph(32), "complete", rng), cfg, rng)
        assert outcome.failed
        assert outcome.value.stage == "stream"
        assert outcome.peak_words > outcome.budget

    def test_model_checked(self, desk_cfg, rng):
        """Random-arrival events are refused."""
        with pytest.raises(InvalidInputError):
            stream_ec_complete(synthesize_stream(cycle_graph(8), "random", rng), desk_cfg, rng)

    def test_never_below_lambda(self, desk_cfg):
        """Outputs are at least lambda on random graphs."""
        for seed in range(6):
            generator = np.random.default_rng(seed)
            graph = random_graph(40, 0.3, seed=seed)
            outcome = stream_ec_complete(synthesize_stream(graph, "complete", generator),
                                         desk_cfg, generator)
            assert outcome.failed or outcome.value >= exact_min_cut(graph).value


class TestStreamRandom:
    """Random vertex arrival."""

    def test_path(self, desk_cfg, rng):
        """P64 -> 1."""
        stream = synthesize_stream(path_graph(64), "random", rng)
        assert stream_ec_random(stream, desk_cfg, rng).value == 1

    @pytest.mark.slow
    def test_planted_cut_agreement(self, desk_cfg):
        """Two K16 joined by 3 edges: modal answer 3 in at least 90% of 200 streams."""
        graph = two_cliques(16, 3)
        cfg = desk_cfg.with_overrides(stream_rep_factor=1)
        generator = np.random.default_rng(200)
        answers = Counter()
        for _ in range(200):
            outcome = stream_ec_random(synthesize_stream(graph, "random", generator), cfg, generator)
            answers[outcome.value] += 1
            assert outcome.failed or outcome.value >= 3
        assert answers.most_common(1)[0][0] == 3
        assert answers[3] >= 180

    def test_prefix_never_contracted(self, desk_cfg, rng):
        """Supervertices never exceed the prefix B on a dense graph."""
        graph = random_graph(64, 0.6, seed=64)
        stream = synthesize_stream(graph, "random", rng)
        outcome = stream_ec_random(stream, desk_cfg.with_overrides(stream_rep_factor=2), rng)
        report = outcome.estimate_for(outcome.delta)
        assert report is not None
        assert all(s <= report.prefix for s in report.supervertices)

    def test_explicit_model_accepted(self, desk_cfg, rng):
        """Explicit-arrival streams run through the same pass."""
        stream = synthesize_stream(two_cliques(6, 2), "explicit")
        assert stream_ec(stream, desk_cfg, rng).value == 2

    def test_complete_model_refused(self, desk_cfg, rng):
        """Complete-arrival events are refused."""
        with pytest.raises(InvalidInputError):
            stream_ec_random(synthesize_stream(cycle_graph(8), "complete", rng), desk_cfg, rng)


def test_estimate_values():
    """2^l for l below ceil(log2 n)."""
    assert estimate_values(16) == [1, 2, 4, 8]
    assert estimate_values(17) == [1, 2, 4, 8, 16]
    assert estimate_values(1) == [1]
