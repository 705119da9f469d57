from __future__ import annotations

import itertools

import pytest

from lplab.errors import UsageError
from lplab.graphs import Graph
from lplab.longest import enumerate_longest_paths
from lplab.systems import (
    certified_system,
    common_vertices,
    enumerate_good_paths,
    make_path_system,
    multiplicity_profile,
    path_distance_value,
    t_count,
    t_prime,
)
from oracles import f_oracle, max_edge_disjoint_oracle


@pytest.fixture
def k13_system(k13):
    """The three longest paths of the star, as a certified system."""
    return make_path_system(k13, [[1, 0, 2], [1, 0, 3], [2, 0, 3]], require_longest=True)


@pytest.fixture
def branchy_system():
    """Relaxed 10-vertex system with exactly one good subpath on member 0."""
    g = Graph.from_edges(
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (1, 7), (7, 5), (8, 3), (3, 9), (9, 5), (2, 6)],
    )
    members = [[0, 1, 2, 3, 4], [1, 7, 5], [8, 3, 9, 5], [2, 6]]
    return make_path_system(g, members, require_longest=False)


class TestMakePathSystem:
    def test_certifies(self, k13_system):
        assert k13_system.k == 3
        assert k13_system.longest_certified
        assert k13_system.multiplicity == (3, 2, 2, 2)

    def test_relaxed_members_allowed(self, p4):
        ps = make_path_system(p4, [[0, 1], [2, 3]], require_longest=False)
        assert not ps.longest_certified

    def test_rejects_non_path(self, p4):
        with pytest.raises(UsageError, match="member 1 is not a path"):
            make_path_system(p4, [[0, 1], [0, 2]], require_longest=False)

    def test_rejects_short_member_when_longest_required(self, p4):
        with pytest.raises(UsageError, match="member 0 is not a longest path"):
            make_path_system(p4, [[0, 1]], require_longest=True)

    def test_rejects_empty(self, p4):
        with pytest.raises(UsageError):
            make_path_system(p4, [], require_longest=False)

    def test_certified_system_checks_length(self, p4):
        lps = enumerate_longest_paths(p4)
        ps = certified_system(p4, lps.paths, lps.length)
        assert ps.longest_certified
        with pytest.raises(UsageError):
            certified_system(p4, lps.paths, lps.length + 1)


class TestPathDistanceValue:
    def test_star(self, k13_system):
        assert path_distance_value(k13_system) == (0, frozenset({0}))

    def test_relaxed_p7(self, p7):
        ps = make_path_system(p7, [[0, 1], [2, 3], [5, 6]], require_longest=False)
        assert path_distance_value(ps) == (4, frozenset({2, 3}))

    def test_matches_oracle_on_corpus(self, corpus_by_n):
        checked = 0
        for n in (4, 5):
            for g in corpus_by_n[n]:
                lps = enumerate_longest_paths(g)
                for combo in itertools.combinations(lps.paths, min(3, len(lps.paths))):
                    ps = certified_system(g, combo, lps.length)
                    f, mins = path_distance_value(ps)
                    sets = [p.vertices for p in combo]
                    assert f == f_oracle(g, sets)
                    assert mins
                    checked += 1
        assert checked > 50

    def test_zero_iff_common_vertex(self, corpus_by_n):
        for g in corpus_by_n[5]:
            lps = enumerate_longest_paths(g)
            for combo in itertools.combinations(lps.paths, min(3, len(lps.paths))):
                ps = certified_system(g, combo, lps.length)
                f, _ = path_distance_value(ps)
                assert (f == 0) == bool(common_vertices(ps))


class TestCommonVertices:
    def test_star(self, k13_system):
        assert common_vertices(k13_system) == frozenset({0})

    def test_empty(self, p4):
        ps = make_path_system(p4, [[0, 1], [2, 3]], require_longest=False)
        assert common_vertices(ps) == frozenset()


class TestMultiplicityProfile:
    def test_star(self, k13_system):
        prof = multiplicity_profile(k13_system)
        assert prof.n_counts == (0, 3, 1)
        assert prof.n(3) == 1 and prof.n(2) == 3 and prof.n(1) == 0
        # host 0 = (1, 0, 2): center has multiplicity 3, leaves 2
        assert prof.x_sets[0][2] == frozenset({0})
        assert prof.x_sets[0][1] == frozenset({1, 2})
        assert prof.x_sets[0][0] == frozenset()

    def test_weighted_count_identity(self, corpus_by_n):
        # sum of i * n_i equals the total vertex count over members, k(ell+1)
        for g in corpus_by_n[5]:
            lps = enumerate_longest_paths(g)
            k = min(3, len(lps.paths))
            for combo in itertools.combinations(lps.paths, k):
                ps = certified_system(g, combo, lps.length)
                prof = multiplicity_profile(ps)
                total = sum((i + 1) * c for i, c in enumerate(prof.n_counts))
                assert total == k * (lps.length + 1)


class TestGoodPaths:
    def test_star_host0(self, k13_system):
        goods = enumerate_good_paths(k13_system, 0)
        intervals = sorted((q.start, q.end) for q in goods)
        assert intervals == [(0, 1), (1, 1), (1, 2)]
        single = next(q for q in goods if (q.start, q.end) == (1, 1))
        assert set(single.witness_pairs) == {(1, 2), (2, 1)}
        assert single.n_vertices == 1 and single.edge_count == 0

    def test_star_counts(self, k13_system):
        for host in range(3):
            assert t_count(k13_system, host) == 3
            assert t_prime(k13_system, host) == 3

    def test_branchy_single_good(self, branchy_system):
        goods = enumerate_good_paths(branchy_system, 0)
        assert len(goods) == 1
        q = goods[0]
        assert (q.start, q.end) == (1, 3)
        assert q.witness_pairs == ((1, 2),)
        assert q.n_vertices == 3

    def test_no_goods_when_member_missed(self, p7):
        # member 2 is far from member 0's vertex set: no interval of host 0
        # that meets everything can exist inside [0,1]
        ps = make_path_system(p7, [[0, 1], [1, 2], [5, 6]], require_longest=False)
        assert enumerate_good_paths(ps, 0) == []
        assert t_prime(ps, 0) == 0

    def test_requires_three_members(self, p4):
        ps = make_path_system(p4, [[0, 1], [1, 2]], require_longest=False)
        with pytest.raises(UsageError):
            enumerate_good_paths(ps, 0)

    def test_host_index_range(self, k13_system):
        with pytest.raises(UsageError):
            enumerate_good_paths(k13_system, 3)

    def test_t_prime_matches_exhaustive_oracle(self, corpus_by_n):
        checked = 0
        for g in corpus_by_n[6][:60]:
            lps = enumerate_longest_paths(g)
            if len(lps.paths) < 3:
                continue
            for combo in itertools.combinations(lps.paths, 3):
                ps = certified_system(g, combo, lps.length)
                for host in range(3):
                    goods = enumerate_good_paths(ps, host)
                    if not goods:
                        continue
                    assert t_prime(ps, host) == max_edge_disjoint_oracle(goods)
                    checked += 1
        assert checked > 100

    def test_good_interiors_avoid_witness_members(self, corpus_by_n):
        for g in corpus_by_n[6][:40]:
            lps = enumerate_longest_paths(g)
            if len(lps.paths) < 3:
                continue
            combo = lps.paths[:3]
            ps = certified_system(g, combo, lps.length)
            for host in range(3):
                seq = ps.paths[host].vertices
                for q in enumerate_good_paths(ps, host):
                    interior = set(seq[q.start + 1 : q.end])
                    for i, j in q.witness_pairs:
                        assert seq[q.start] in ps.paths[i].vertices
                        assert seq[q.end] in ps.paths[j].vertices
                        assert not interior & set(ps.paths[i].vertices)
                        assert not interior & set(ps.paths[j].vertices)


class TestCertifiedInvariants:
    def test_t_and_f_laws(self, corpus_by_n):
        """t >= t' and f <= k * (n - 1) over certified 3-member systems."""
        for g in corpus_by_n[5]:
            lps = enumerate_longest_paths(g)
            if len(lps.paths) < 3:
                continue
            for combo in itertools.combinations(lps.paths, 3):
                ps = certified_system(g, combo, lps.length)
                f, _ = path_distance_value(ps)
                assert 0 <= f <= 3 * (g.n - 1)
                if f > 0:
                    prof = multiplicity_profile(ps)
                    assert prof.n(3) == 0  # no vertex on all members
                for host in range(3):
                    assert t_count(ps, host) >= t_prime(ps, host) >= 0
