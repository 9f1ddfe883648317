import itertools

import networkx as nx
import pytest

from chordcycle.errors import Graph6Error
from chordcycle.generators import complete_graph, cycle_graph, enumerate_labeled
from chordcycle.graph import (
    Graph,
    bfs_levels,
    connected_components,
    empty_graph,
    from_edge_list,
    induced_subgraph,
    is_connected,
    parse_edge_list,
    parse_graph6,
    remove_vertices,
    to_edge_list,
    to_graph6,
)


def as_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


class TestConstruction:
    def test_path(self):
        g = from_edge_list(3, [(0, 1), (1, 2)])
        assert g.m == 2 and g.degree(1) == 2 and not g.has_edge(0, 2)

    def test_k4(self):
        g = from_edge_list(4, itertools.combinations(range(4), 2))
        assert g == complete_graph(4)
        assert all(g.degree(v) == 3 for v in range(4))

    def test_c5_degrees(self):
        g = from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert [g.degree(v) for v in range(5)] == [2] * 5

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(-1, 0)]])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(ValueError):
            from_edge_list(3, edges)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0))

    def test_duplicate_edges_collapse(self):
        assert from_edge_list(2, [(0, 1), (1, 0)]).m == 1

    def test_mask_round_trip(self):
        for g in enumerate_labeled(4):
            assert Graph.from_mask(4, g.edge_mask()) == g


class TestGraph6:
    def test_k1(self):
        assert to_graph6(empty_graph(1)) == "@"
        assert parse_graph6("@") == empty_graph(1)

    def test_k0(self):
        assert to_graph6(empty_graph(0)) == "?"

    def test_known_string(self):
        g = parse_graph6("D?{")
        assert to_graph6(g) == "D?{"
        ref = nx.from_graph6_bytes(b"D?{")
        assert sorted(map(sorted, ref.edges())) == sorted(map(sorted, g.edges()))
        assert sorted(g.degree(v) for v in range(5)) == [1, 1, 1, 1, 4]

    @pytest.mark.parametrize("bad", ["not-graph6!", "D?", "D?{{", "", "\x7f"])
    def test_malformed(self, bad):
        with pytest.raises(Graph6Error):
            parse_graph6(bad)

    def test_header_accepted(self):
        assert parse_graph6(">>graph6<<C~") == complete_graph(4)

    @pytest.mark.parametrize("n", range(0, 6))
    def test_exhaustive_round_trip_small(self, n):
        for g in enumerate_labeled(n):
            s = to_graph6(g)
            assert parse_graph6(s) == g
            assert s == nx.to_graph6_bytes(as_nx(g), header=False).decode().strip()

    def test_round_trip_n7_stride(self):
        # every 13th labelled graph on 7 vertices; 13 is odd, so all bit positions vary
        for mask in range(0, 1 << 21, 13):
            g = Graph.from_mask(7, mask)
            s = to_graph6(g)
            assert len(s) == 5 and parse_graph6(s).edge_mask() == mask

    @pytest.mark.parametrize("n", [62, 63, 64, 100, 258])
    def test_long_headers_match_reference(self, n):
        g = cycle_graph(n)
        s = to_graph6(g)
        assert s == nx.to_graph6_bytes(as_nx(g), header=False).decode().strip()
        assert parse_graph6(s) == g


class TestEdgeListText:
    def test_round_trip(self):
        g = cycle_graph(6)
        assert parse_edge_list(to_edge_list(g)) == g

    def test_bad_count(self):
        with pytest.raises(ValueError):
            parse_edge_list("3 2\n0 1\n")


class TestLevels:
    def test_c6_sizes(self):
        for z in range(6):
            assert [len(lv) for lv in bfs_levels(cycle_graph(6), z).levels] == [1, 2, 2, 1]

    def test_k4(self):
        d = bfs_levels(complete_graph(4), 0)
        assert d.levels == ((0,), (1, 2, 3)) and d.unreached == ()

    def test_disconnected(self):
        d = bfs_levels(from_edge_list(4, [(0, 1), (2, 3)]), 0)
        assert d.levels == ((0,), (1,)) and d.unreached == (2, 3)

    def test_matches_reference_distances(self):
        g = from_edge_list(8, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (6, 7)])
        dist = nx.single_source_shortest_path_length(as_nx(g), 1)
        for i, lv in enumerate(bfs_levels(g, 1).levels):
            assert all(dist[v] == i for v in lv)


class TestInducedAndComponents:
    def test_triangle_from_k4(self):
        h, mapping = induced_subgraph(complete_graph(4), [3, 1, 2])
        assert h == complete_graph(3) and mapping == {1: 0, 2: 1, 3: 2}

    def test_c5_path(self):
        h, _ = induced_subgraph(cycle_graph(5), {0, 1, 2})
        assert h.edges() == [(0, 1), (1, 2)]

    def test_empty_selection(self):
        h, mapping = induced_subgraph(cycle_graph(5), [])
        assert h.n == 0 and mapping == {}

    def test_remove(self):
        h, _ = remove_vertices(cycle_graph(5), [0])
        assert h.m == 3 and h.n == 4

    def test_components(self):
        assert connected_components(cycle_graph(5)) == [(0, 1, 2, 3, 4)]
        two = from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert [len(c) for c in connected_components(two)] == [3, 3]
        assert connected_components(empty_graph(0)) == []
        assert not is_connected(two)
