"""Path systems: k paths on one graph and the quantities derived from them.

Covers the path-distance-function f, common vertices, per-host multiplicity
classes X^i with the global counts n_i, good subpaths, and the counts t / t'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import UsageError
from .graphs import Graph, bfs_distances, is_connected
from .longest import Path, is_path, longest_path_length


@dataclass(frozen=True)
class PathSystem:
    """A graph plus an ordered list of k member paths."""

    graph: Graph
    paths: tuple[Path, ...]
    multiplicity: tuple[int, ...]
    longest_certified: bool

    @property
    def k(self) -> int:
        return len(self.paths)

    def to_json(self) -> dict:
        from .graphs import GRAPH6_SMALL_MAX, encode_graph6

        return {
            "graph6": encode_graph6(self.graph) if self.graph.n <= GRAPH6_SMALL_MAX else None,
            "members": [list(p.vertices) for p in self.paths],
            "longest_certified": self.longest_certified,
        }


@dataclass(frozen=True)
class GoodPath:
    """A good subpath of a host path, as a position interval on the host."""

    host_index: int
    start: int
    end: int
    witness_pairs: tuple[tuple[int, int], ...]
    n_vertices: int

    @property
    def edge_count(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class MultiplicityProfile:
    """X^i sets per host plus the global counts n_1..n_k."""

    x_sets: tuple[tuple[frozenset[int], ...], ...]  # [host][i-1]
    n_counts: tuple[int, ...]  # n_1..n_k

    def n(self, i: int) -> int:
        return self.n_counts[i - 1]


def make_path_system(
    g: Graph,
    paths: Sequence[Sequence[int] | Path],
    require_longest: bool,
) -> PathSystem:
    if not paths:
        raise UsageError("a path system needs at least one member")
    members = []
    for idx, p in enumerate(paths):
        seq = tuple(p.vertices if isinstance(p, Path) else p)
        if not is_path(g, seq):
            raise UsageError(f"member {idx} is not a path: {list(seq)}")
        members.append(Path(seq))
    certified = False
    if require_longest:
        ell = longest_path_length(g)
        for idx, p in enumerate(members):
            if p.length != ell:
                raise UsageError(
                    f"member {idx} is not a longest path "
                    f"(length {p.length}, ell = {ell}): {list(p.vertices)}"
                )
        certified = True
    mult = [0] * g.n
    for p in members:
        for v in p.vertices:
            mult[v] += 1
    return PathSystem(
        graph=g,
        paths=tuple(members),
        multiplicity=tuple(mult),
        longest_certified=certified,
    )


def certified_system(g: Graph, paths: Sequence[Path], ell: int) -> PathSystem:
    """Fast constructor for members already known to be longest paths of g.

    Scanners use this to avoid recomputing ell(G) per subset; callers are
    responsible for ell being correct.
    """
    mult = [0] * g.n
    for p in paths:
        if p.length != ell:
            raise UsageError(f"member of length {p.length} is not longest (ell = {ell})")
        for v in p.vertices:
            mult[v] += 1
    return PathSystem(
        graph=g,
        paths=tuple(paths),
        multiplicity=tuple(mult),
        longest_certified=True,
    )


def path_distance_value(ps: PathSystem) -> tuple[int, frozenset[int]]:
    """f(G, P): min over vertices v of the sum of distances to each member.

    Returns the value and the full set of minimizing vertices.
    """
    g = ps.graph
    if not is_connected(g):
        raise UsageError("path-distance-function requires a connected graph")
    sums = [0] * g.n
    for p in ps.paths:
        dist = bfs_distances(g, p.vertices)
        for v in range(g.n):
            sums[v] += dist[v]  # type: ignore[operator]
    best = min(sums)
    return best, frozenset(v for v in range(g.n) if sums[v] == best)


def common_vertices(ps: PathSystem) -> frozenset[int]:
    acc = -1
    for p in ps.paths:
        acc &= p.mask
    verts = []
    while acc:
        low = acc & -acc
        verts.append(low.bit_length() - 1)
        acc ^= low
    return frozenset(verts)


def multiplicity_profile(ps: PathSystem) -> MultiplicityProfile:
    k = ps.k
    mult = ps.multiplicity
    x_sets = []
    for p in ps.paths:
        per_i: list[set[int]] = [set() for _ in range(k)]
        for v in p.vertices:
            per_i[mult[v] - 1].add(v)
        x_sets.append(tuple(frozenset(s) for s in per_i))
    n_counts = [0] * k
    for v, c in enumerate(mult):
        if c:
            n_counts[c - 1] += 1
    return MultiplicityProfile(x_sets=tuple(x_sets), n_counts=tuple(n_counts))


def enumerate_good_paths(ps: PathSystem, host_index: int) -> list[GoodPath]:
    """All good subpaths of the host, with their witnessing (i, j) pairs.

    A subpath Q with endpoints u (start) and v (end) is good for the ordered
    pair (i, j) of other members when u lies on path i, v lies on path j,
    no int-vertex of Q lies on path i or j, and V(Q) meets every member
    other than the host.  Single-vertex subpaths are admitted.
    """
    k = ps.k
    if k < 3:
        raise UsageError(f"good paths need k >= 3 members, got {k}")
    if not 0 <= host_index < k:
        raise UsageError(f"host index {host_index} out of range")
    host = ps.paths[host_index]
    seq = host.vertices
    others = [i for i in range(k) if i != host_index]
    omask = {i: ps.paths[i].mask for i in others}
    # prefix[i] = OR of bits of seq[:i]; vertex sets of intervals via XOR
    prefix = [0]
    acc = 0
    for v in seq:
        acc |= 1 << v
        prefix.append(acc)
    goods = []
    L = len(seq)
    for a in range(L):
        for b in range(a, L):
            qmask = prefix[b + 1] ^ prefix[a]
            if any(not qmask & omask[m] for m in others):
                continue
            imask = (prefix[b] ^ prefix[a + 1]) if b - a >= 2 else 0
            ubit = 1 << seq[a]
            vbit = 1 << seq[b]
            pairs = []
            for i in others:
                if not omask[i] & ubit or omask[i] & imask:
                    continue
                for j in others:
                    if j == i:
                        continue
                    if omask[j] & vbit and not omask[j] & imask:
                        pairs.append((i, j))
            if pairs:
                goods.append(
                    GoodPath(
                        host_index=host_index,
                        start=a,
                        end=b,
                        witness_pairs=tuple(pairs),
                        n_vertices=b - a + 1,
                    )
                )
    return goods


def t_count(ps: PathSystem, host_index: int) -> int:
    """Number of distinct good subpaths of the host."""
    return len(enumerate_good_paths(ps, host_index))


def t_prime(ps: PathSystem, host_index: int) -> int:
    """Maximum number of pairwise edge-disjoint good subpaths of the host.

    Zero-edge subpaths have no edges and always count; for the rest, greedy
    interval scheduling over host-edge ranges is exact.
    """
    goods = enumerate_good_paths(ps, host_index)
    return _max_edge_disjoint(goods)


def _max_edge_disjoint(goods: Sequence[GoodPath]) -> int:
    count = sum(1 for q in goods if q.edge_count == 0)
    intervals = sorted(
        ((q.start, q.end) for q in goods if q.edge_count > 0),
        key=lambda ab: ab[1],
    )
    free_from = -1
    for a, b in intervals:
        if a >= free_from:
            count += 1
            free_from = b
    return count
