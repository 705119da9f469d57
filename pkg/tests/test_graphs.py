from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lplab.errors import FormatError, UsageError
from lplab.graphs import (
    Graph,
    all_pairs_distances,
    bfs_distances,
    encode_graph6,
    format_edge_list,
    is_connected,
    parse_edge_list,
    parse_graph6,
)
from oracles import from_networkx, to_networkx


def small_graphs(max_n=7):
    """Hypothesis strategy: a random simple graph on 1..max_n vertices."""

    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        pairs = list(itertools.combinations(range(n), 2))
        picked = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
        return Graph.from_edges(n, picked)

    return build()


class TestEdgeList:
    def test_p4(self):
        g = parse_edge_list("4 3\n0 1\n1 2\n2 3")
        assert g.n == 4 and g.m == 3
        assert sorted(g.edges()) == [(0, 1), (1, 2), (2, 3)]

    def test_k1(self):
        g = parse_edge_list("1 0")
        assert g.n == 1 and g.m == 0

    def test_star(self):
        g = parse_edge_list("4 3\n0 1\n0 2\n0 3")
        assert sorted(g.edges()) == [(0, 1), (0, 2), (0, 3)]
        assert g.degree(0) == 3

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "4\n",
            "4 1\n0 0",  # self-loop
            "4 2\n0 1\n1 0",  # duplicate edge
            "4 1\n0 9",  # out of range
            "4 1\nx y",
            "4 2\n0 1",  # wrong edge count
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(FormatError):
            parse_edge_list(text)

    def test_format_round_trip(self, c5):
        assert sorted(parse_edge_list(format_edge_list(c5)).edges()) == sorted(c5.edges())


class TestGraph6:
    def test_k1(self):
        g = parse_graph6("@")
        assert g.n == 1 and g.m == 0
        assert encode_graph6(g) == "@"

    def test_p4(self):
        g = parse_graph6("Ch")
        assert sorted(g.edges()) == [(0, 1), (1, 2), (2, 3)]
        assert encode_graph6(g) == "Ch"

    def test_k13(self):
        g = parse_graph6("Cs")
        assert sorted(g.edges()) == [(0, 1), (0, 2), (0, 3)]

    def test_header_stripped(self):
        assert parse_graph6(">>graph6<<Ch").m == 3

    @pytest.mark.parametrize("line", ["", "C\x1f", "C", "Chh"])
    def test_malformed(self, line):
        with pytest.raises(FormatError):
            parse_graph6(line)

    def test_round_trip_corpus(self, corpus_by_n):
        for gs in corpus_by_n.values():
            for g in gs:
                s = encode_graph6(g)
                g2 = parse_graph6(s)
                assert g2.n == g.n and sorted(g2.edges()) == sorted(g.edges())

    def test_against_networkx(self, corpus_by_n):
        for g in corpus_by_n[6]:
            ours = encode_graph6(g)
            theirs = nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()
            assert ours == theirs
            back = from_networkx(nx.from_graph6_bytes(ours.encode()))
            assert sorted(back.edges()) == sorted(g.edges())

    def test_large_order_header(self):
        n = 70
        g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
        g2 = parse_graph6(encode_graph6(g))
        assert g2.n == n and sorted(g2.edges()) == sorted(g.edges())


class TestSparse6:
    def test_round_trip_via_networkx(self, corpus_by_n):
        for g in corpus_by_n[6][:40]:
            line = nx.to_sparse6_bytes(to_networkx(g), header=False).decode().strip()
            g2 = parse_graph6(line)
            assert sorted(g2.edges()) == sorted(g.edges())

    def test_header(self):
        g = parse_graph6(">>sparse6<<:Cca")
        assert g.n == 4


class TestDistances:
    def test_bfs_p4_single(self, p4):
        assert bfs_distances(p4, {0}) == [0, 1, 2, 3]

    def test_bfs_p4_multi(self, p4):
        assert bfs_distances(p4, {0, 3}) == [0, 1, 1, 0]

    def test_bfs_k13(self, k13):
        assert bfs_distances(k13, {1}) == [1, 0, 2, 2]

    def test_bfs_empty_sources(self, p4):
        with pytest.raises(UsageError):
            bfs_distances(p4, set())

    def test_bfs_unreachable(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert bfs_distances(g, {0}) == [0, 1, None, None]

    def test_connected(self, p4, k13):
        assert is_connected(p4) and is_connected(k13)
        assert is_connected(Graph.from_edges(1, []))
        assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))

    def test_all_pairs_p4(self, p4):
        assert all_pairs_distances(p4)[0] == [0, 1, 2, 3]

    def test_all_pairs_c5(self, c5):
        d = all_pairs_distances(c5)
        for u in range(5):
            for v in range(5):
                assert d[u][v] == d[v][u]
                assert d[u][v] in ({0} if u == v else {1, 2})

    def test_bfs_matches_all_pairs_corpus(self, corpus_by_n):
        for gs in corpus_by_n.values():
            for g in gs:
                d = all_pairs_distances(g)
                for s in range(g.n):
                    assert bfs_distances(g, {s}) == d[s]


@given(small_graphs())
@settings(max_examples=200, deadline=None)
def test_graph6_round_trip_property(g):
    g2 = parse_graph6(encode_graph6(g))
    assert g2.n == g.n and sorted(g2.edges()) == sorted(g.edges())


@given(small_graphs())
@settings(max_examples=100, deadline=None)
def test_triangle_inequality(g):
    d = all_pairs_distances(g)
    for u, v, w in itertools.product(range(g.n), repeat=3):
        if d[u][v] is not None and d[v][w] is not None and d[u][w] is not None:
            assert d[u][w] <= d[u][v] + d[v][w]


@given(small_graphs())
@settings(max_examples=100, deadline=None)
def test_adjacent_levels_differ_by_at_most_one(g):
    dist = bfs_distances(g, {0})
    for u, v in g.edges():
        if dist[u] is not None and dist[v] is not None:
            assert abs(dist[u] - dist[v]) <= 1
