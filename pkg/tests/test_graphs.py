"""Tests for the ground-truth graph, exact min cuts, certificates and the gadget."""

import numpy as np
import pytest

from errors import ContractViolationError, GraphFormatError, InvalidInputError
from graphs import (
    CutWitness,
    DirectedSubgraph,
    SimpleGraph,
    VertexPartition,
    contract,
    cut_edges,
    degree_to_connectivity_gadget,
    exact_min_cut,
    exhaustive_min_cut,
    graph_from_text,
    graph_to_text,
    load_graph,
    min_degree,
    ni_certificate_explicit,
    save_certificate,
    save_graph,
)
from tests.builders import complete_graph, cycle_graph, path_graph, random_graph


def all_sides(n):
    """Every proper non-empty side, each bipartition once."""
    for code in range(1, 2 ** (n - 1)):
        yield np.array([(code >> i) & 1 for i in range(n)], dtype=bool)


class TestSimpleGraph:
    """Construction invariants and set counting."""

    def test_rejects_self_loop(self):
        """Self-loops are invalid input."""
        with pytest.raises(InvalidInputError):
            SimpleGraph(3, [(1, 1)])

    def test_rejects_out_of_range(self):
        """Vertex ids must lie in [0, n)."""
        with pytest.raises(InvalidInputError):
            SimpleGraph(3, [(0, 3)])

    def test_rejects_duplicate_edge(self):
        """The same undirected edge twice is rejected."""
        with pytest.raises(InvalidInputError):
            SimpleGraph(3, [(0, 1), (1, 0)])

    def test_adjacency_is_symmetric_and_sorted(self, two_k5):
        """u in adj(v) iff v in adj(u)."""
        for u in range(two_k5.n):
            assert list(two_k5.adjacency(u)) == sorted(two_k5.adjacency(u))
            for v in two_k5.adjacency(u):
                assert u in two_k5.neighbors(v)

    def test_cut_size_matches_edge_count(self, two_k5):
        """cut of one clique is the bridge count."""
        assert two_k5.cut_size(range(5)) == 3
        assert two_k5.count_between(range(5), range(5, 10)) == 3

    def test_digest_is_order_independent(self):
        """Digest depends on the edge set only."""
        a = SimpleGraph(4, [(0, 1), (2, 3), (1, 2)])
        b = SimpleGraph(4, [(2, 3), (1, 2), (1, 0)])
        assert a.digest() == b.digest()
        assert a == b

    def test_networkx_round_trip(self, c6):
        """to_networkx/from_networkx preserve the graph."""
        assert SimpleGraph.from_networkx(c6.to_networkx()) == c6


class TestMinDegree:
    """min_degree examples."""

    def test_complete(self, k4):
        """K4 has minimum degree 3."""
        assert min_degree(k4) == 3

    def test_star(self):
        """A star's leaves have degree 1."""
        star = SimpleGraph(5, [(0, i) for i in range(1, 5)])
        assert min_degree(star) == 1

    def test_isolated_vertex(self):
        """An isolated vertex gives 0."""
        assert min_degree(SimpleGraph(3, [(0, 1)])) == 0

    def test_empty_graph_is_invalid(self):
        """n = 0 violates the precondition."""
        with pytest.raises(InvalidInputError):
            min_degree(SimpleGraph(0))


class TestExactMinCut:
    """Stoer-Wagner against exhaustive enumeration."""

    def test_clique(self):
        """K6 has edge connectivity 5."""
        witness = exact_min_cut(complete_graph(6))
        assert witness.value == 5
        assert witness.verify(complete_graph(6))

    def test_two_cliques(self, two_k5):
        """Two K5 joined by three edges have lambda 3 with the clique split as witness."""
        witness = exact_min_cut(two_k5)
        assert witness.value == 3
        assert sorted(witness.members) in (list(range(5)), list(range(5, 10)))
        assert not witness.is_trivial()

    def test_disconnected_is_zero(self):
        """A disconnected graph has a zero cut at a component."""
        graph = SimpleGraph(4, [(0, 1), (2, 3)])
        witness = exact_min_cut(graph)
        assert witness.value == 0
        assert witness.verify(graph)

    def test_needs_two_vertices(self):
        """n < 2 is invalid."""
        with pytest.raises(InvalidInputError):
            exact_min_cut(SimpleGraph(1))

    def test_witness_must_be_proper(self):
        """A witness side cannot be empty or everything."""
        with pytest.raises(InvalidInputError):
            CutWitness(0, np.zeros(4, dtype=bool))

    @pytest.mark.slow
    def test_agrees_with_enumeration_on_random_suite(self):
        """200 random graphs with n <= 12: both oracles agree."""
        for seed in range(200):
            n = 4 + seed % 9
            graph = random_graph(n, 0.3 + 0.05 * (seed % 7), seed, connected=seed % 5 != 0)
            fast = exact_min_cut(graph, exhaustive_limit=0)
            slow = exhaustive_min_cut(graph.n, graph.edge_array)
            assert fast.value == slow.value
            assert fast.verify(graph)

    def test_contracted_min_cut(self, c6):
        """C6 with {0,1} and {3,4} merged still has lambda 2."""
        partition = contract(c6, [(0, 1), (3, 4)])
        assert exact_min_cut(c6, partition).value == 2

    def test_cut_edges_lists_crossing_edges(self, two_k5):
        """cut_edges returns exactly the bridges."""
        assert cut_edges(two_k5, range(5)) == [(0, 5), (1, 6), (2, 7)]


class TestContract:
    """contract examples."""

    def test_empty_edge_set(self, c6):
        """F = {} leaves n singletons."""
        assert contract(c6, []).block_count == 6

    def test_spanning_tree(self):
        """A spanning tree contracts to one block."""
        graph = path_graph(7)
        assert contract(graph, graph.edges()).block_count == 1

    def test_two_edges_of_cycle(self, c6):
        """C6 with F = {{0,1},{3,4}} has 4 blocks."""
        partition = contract(c6, [(0, 1), (3, 4)])
        assert partition.block_count == 4
        assert partition.same(3, 4)
        assert not partition.same(1, 3)

    def test_edge_not_in_graph(self, c6):
        """Contracting a non-edge is invalid."""
        with pytest.raises(InvalidInputError):
            contract(c6, [(0, 3)])


class TestVertexPartition:
    """Union-find bookkeeping."""

    def test_block_count_tracks_unions(self):
        """blocks = n - successful unions."""
        partition = VertexPartition(6)
        assert partition.union(0, 1)
        assert partition.union(1, 2)
        assert not partition.union(0, 2)
        assert partition.block_count == 4

    def test_labels_are_canonical(self):
        """Labels are ordered by smallest member."""
        partition = VertexPartition.from_labels([7, 3, 7, 3, 9])
        assert partition.labels().tolist() == [0, 1, 0, 1, 2]
        assert partition.blocks() == [[0, 2], [1, 3], [4]]

    def test_refines(self):
        """A finer partition refines a coarser one, not the reverse."""
        fine = VertexPartition.from_labels([0, 0, 1, 2])
        coarse = VertexPartition.from_labels([0, 0, 1, 1])
        assert fine.refines(coarse)
        assert not coarse.refines(fine)

    def test_copy_is_independent(self):
        """Mutating a copy leaves the original intact."""
        partition = VertexPartition(3)
        clone = partition.copy()
        clone.union(0, 1)
        assert partition.block_count == 3


class TestNiCertificate:
    """Single-scan certificates on explicit graphs."""

    def test_r_one_is_spanning_tree(self, two_k5):
        """r = 1 on a connected graph keeps n - 1 edges."""
        cert = ni_certificate_explicit(two_k5, 1)
        assert cert.edge_count == two_k5.n - 1
        assert cert.is_acyclic()

    def test_large_r_keeps_everything(self, c6):
        """r >= max degree keeps every edge."""
        cert = ni_certificate_explicit(c6, 2)
        assert sorted(cert.edges()) == sorted(c6.edges())

    def test_k4_r2(self, k4):
        """K4 with r = 2: five edges and min cut 2."""
        cert = ni_certificate_explicit(k4, 2)
        assert cert.edge_count == 5
        assert cert.min_cut().value == 2

    def test_structure(self, two_k5):
        """Forests are disjoint, acyclic and laminar."""
        cert = ni_certificate_explicit(two_k5, 3)
        assert cert.r == 3
        assert cert.is_edge_disjoint()
        assert cert.is_acyclic()
        assert cert.is_laminar()

    def test_invalid_r(self, k4):
        """r must be at least 1."""
        with pytest.raises(InvalidInputError):
            ni_certificate_explicit(k4, 0)

    @pytest.mark.parametrize("seed", range(12))
    def test_cut_values_are_truncated(self, seed):
        """For every S: min(r, |cut_cert(S)|) = min(r, |cut_G(S)|), n <= 10."""
        n = 6 + seed % 5
        graph = random_graph(n, 0.5, seed)
        r = 1 + seed % 4
        cert = ni_certificate_explicit(graph, r)
        for side in all_sides(n):
            assert min(r, cert.cut_value(side)) == min(r, graph.cut_size(side))

    def test_contracted_certificate_skips_internal_edges(self, c6):
        """Edges inside a supervertex are never placed."""
        partition = contract(c6, [(0, 1)])
        cert = ni_certificate_explicit(c6, 2, partition)
        assert (0, 1) not in cert.edges()


class TestGadget:
    """Minimum degree to edge connectivity reduction."""

    def test_triangle(self):
        """K3 -> 6 vertices, 15 edges, lambda 5."""
        gadget = degree_to_connectivity_gadget(complete_graph(3))
        assert gadget.n == 6
        assert gadget.m == 15
        assert exhaustive_min_cut(gadget.n, gadget.edge_array).value == 5

    def test_single_edge(self):
        """n = 2 single edge -> lambda 3."""
        gadget = degree_to_connectivity_gadget(SimpleGraph(2, [(0, 1)]))
        assert gadget.n == 4
        assert exact_min_cut(gadget).value == 3

    def test_five_cycle(self):
        """C5 -> lambda 2 + 5."""
        assert exact_min_cut(degree_to_connectivity_gadget(cycle_graph(5))).value == 7

    def test_edge_count_formula(self, two_k5):
        """|E'| = |E| + n^2 + n(n-1)/2."""
        n = two_k5.n
        assert degree_to_connectivity_gadget(two_k5).m == two_k5.m + n * n + n * (n - 1) // 2

    @pytest.mark.parametrize("seed", range(20))
    def test_identity_on_small_graphs(self, seed):
        """lambda(G') = delta(G) + n for n <= 8."""
        n = 2 + seed % 7
        graph = random_graph(n, 0.4, seed, connected=seed % 3 != 0)
        gadget = degree_to_connectivity_gadget(graph)
        value = exhaustive_min_cut(gadget.n, gadget.edge_array).value
        assert value == min_degree(graph) + n

    def test_needs_two_vertices(self):
        """n = 1 is rejected."""
        with pytest.raises(InvalidInputError):
            degree_to_connectivity_gadget(SimpleGraph(1))


class TestDirectedSubgraph:
    """Arc bookkeeping."""

    def test_full_has_both_directions(self, c6):
        """Every edge appears as two arcs."""
        h = DirectedSubgraph.full(c6)
        assert h.arc_count == 2 * c6.m
        assert h.edges() == set(c6.edges())

    def test_without_out_arcs(self, c6):
        """Removing a vertex's out-arcs keeps arcs into it."""
        h = DirectedSubgraph.full(c6).without_out_arcs(0)
        assert h.out_degree(0) == 0
        assert (1, 0) in set(h.arcs())

    def test_self_arc_rejected(self):
        """No self-arcs."""
        with pytest.raises(InvalidInputError):
            DirectedSubgraph(3).add_arc(1, 1)


class TestGraphFiles:
    """Text graph format."""

    def test_round_trip(self, tmp_path, two_k5):
        """save_graph then load_graph returns the same graph."""
        path = tmp_path / "g.txt"
        save_graph(two_k5, path)
        assert load_graph(path) == two_k5

    def test_comments_and_blank_lines(self):
        """'#' lines and blank lines are skipped."""
        graph = graph_from_text("# triangle\n3 3\n\n0 1\n1 2\n0 2\n")
        assert graph == complete_graph(3)

    def test_edge_count_mismatch(self):
        """Header edge count must match the body."""
        with pytest.raises(GraphFormatError):
            graph_from_text("3 2\n0 1\n")

    def test_bad_line(self):
        """Each body line has two integers."""
        with pytest.raises(GraphFormatError) as info:
            graph_from_text("3 1\n0 x\n", "bad.txt")
        assert info.value.details["line"] == 2

    def test_self_loop_in_file(self):
        """Graph invariants are checked on load."""
        with pytest.raises(InvalidInputError):
            graph_from_text("2 1\n1 1\n")

    def test_text_is_sorted(self):
        """Edges are written in ascending order."""
        assert graph_to_text(SimpleGraph(3, [(2, 1), (1, 0)])) == "3 2\n0 1\n1 2\n"

    def test_certificate_sections(self, tmp_path, k4):
        """Certificates are written as 'F i' sections."""
        path = tmp_path / "cert.txt"
        save_certificate(ni_certificate_explicit(k4, 2), path)
        lines = path.read_text().splitlines()
        assert lines[0] == "F 1"
        assert "F 2" in lines
        assert len([ln for ln in lines if not ln.startswith("F")]) == 5


def test_enumeration_disagreement_raises(monkeypatch):
    """A Stoer-Wagner/enumeration mismatch is a contract violation."""
    import graphs.cuts as cuts
    monkeypatch.setattr(cuts, "_exhaustive_block_cut",
                        lambda q, w: (-1, np.zeros(q, dtype=bool)))
    with pytest.raises(ContractViolationError):
        exact_min_cut(complete_graph(4))

