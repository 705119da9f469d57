"""Immutable undirected simple graphs, hop distances, and graph6/sparse6 I/O.

Vertices are dense 0-based integers.  Adjacency is kept twice: as sorted
neighbor lists (for ordered traversal) and as per-vertex bit-vectors (for
fast set algebra in the scanners).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import FormatError, UsageError

# One-byte graph6 headers cover n <= 62; larger graphs travel as edge lists.
GRAPH6_SMALL_MAX = 62

DistanceVector = list  # list[Optional[int]]; None marks an unreachable vertex


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    nbr_masks: tuple[int, ...] = field(repr=False)
    m: int

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise UsageError(f"graph order must be >= 1, got {n}")
        masks = [0] * n
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"vertex out of range in edge ({u}, {v})")
            if u == v:
                raise FormatError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise FormatError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        adj = tuple(tuple(_bits(mask)) for mask in masks)
        return Graph(n=n, adj=adj, nbr_masks=tuple(masks), m=len(seen))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr_masks[u] >> v & 1)

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# edge-list format


def parse_edge_list(text: str) -> Graph:
    """Parse the "n m" / "u v" edge-list format."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise FormatError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError(f"header must be 'n m', got {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise FormatError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"malformed edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"malformed edge line {ln!r}") from None
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# graph6 / sparse6


def _g6_check_bytes(s: str) -> None:
    for off, ch in enumerate(s):
        if not (63 <= ord(ch) <= 126):
            raise FormatError(f"invalid graph6 byte {ch!r} at offset {off}")


def _g6_parse_order(s: str) -> tuple[int, int]:
    """Return (n, offset of first data byte)."""
    if not s:
        raise FormatError("empty graph6 string")
    c0 = ord(s[0]) - 63
    if c0 < 63:
        return c0, 1
    if len(s) < 4:
        raise FormatError("truncated graph6 order header at offset 1")
    if s[1] != "~":
        n = 0
        for i in range(1, 4):
            n = (n << 6) | (ord(s[i]) - 63)
        return n, 4
    if len(s) < 8:
        raise FormatError("truncated graph6 order header at offset 2")
    n = 0
    for i in range(2, 8):
        n = (n << 6) | (ord(s[i]) - 63)
    return n, 8


def _g6_encode_order(n: int) -> str:
    if n <= GRAPH6_SMALL_MAX:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> sh) & 63) + 63) for sh in (12, 6, 0))
    return "~~" + "".join(chr(((n >> sh) & 63) + 63) for sh in (30, 24, 18, 12, 6, 0))


def parse_graph6(line: str) -> Graph:
    """Decode a graph6 (or sparse6) line into a Graph."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    elif s.startswith(">>sparse6<<"):
        s = s[len(">>sparse6<<"):]
    if s.startswith(":"):
        return _parse_sparse6(s)
    _g6_check_bytes(s)
    n, off = _g6_parse_order(s)
    if n < 1:
        raise FormatError("graph6 order must be >= 1")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - off < need:
        raise FormatError(
            f"truncated graph6 bit-stream at offset {len(s)}: "
            f"need {need} data bytes, got {len(s) - off}"
        )
    if len(s) - off > need:
        raise FormatError(f"trailing bytes after graph6 data at offset {off + need}")
    edges = []
    bit = 0
    for x in range(1, n):
        for y in range(x):
            byte = ord(s[off + bit // 6]) - 63
            if byte >> (5 - bit % 6) & 1:
                edges.append((y, x))
            bit += 1
    return Graph.from_edges(n, edges)


def _parse_sparse6(s: str) -> Graph:
    body = s[1:]
    _g6_check_bytes(body)
    n, off = _g6_parse_order(body)
    if n < 1:
        raise FormatError("sparse6 order must be >= 1")
    k = max(1, (n - 1).bit_length())
    bits = []
    for ch in body[off:]:
        byte = ord(ch) - 63
        bits.extend((byte >> sh) & 1 for sh in range(5, -1, -1))
    edges = []
    seen = set()
    v = 0
    pos = 0
    while pos + 1 + k <= len(bits):
        b = bits[pos]
        x = 0
        for i in range(pos + 1, pos + 1 + k):
            x = (x << 1) | bits[i]
        pos += 1 + k
        if b:
            v += 1
        if v >= n or x >= n:
            break
        if x > v:
            v = x
        else:
            if x == v:
                raise FormatError(f"sparse6 self-loop at vertex {x}")
            key = (x, v)
            if key not in seen:  # padding may repeat the final edge
                seen.add(key)
                edges.append(key)
    return Graph.from_edges(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode a Graph as a canonical graph6 line (inverse of parse_graph6)."""
    out = [_g6_encode_order(g.n)]
    acc = 0
    nacc = 0
    for x in range(1, g.n):
        row = g.nbr_masks[x]
        for y in range(x):
            acc = (acc << 1) | (row >> y & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = 0
                nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return "".join(out)


# ---------------------------------------------------------------------------
# distances


def bfs_distances(g: Graph, sources: Iterable[int]) -> DistanceVector:
    """Multi-source BFS: entry v is min over s in sources of d_G(v, s)."""
    src = list(sources)
    if not src:
        raise UsageError("source set must be nonempty")
    dist: list[Optional[int]] = [None] * g.n
    queue: deque[int] = deque()
    for s in src:
        if not 0 <= s < g.n:
            raise UsageError(f"source vertex {s} out of range")
        if dist[s] is None:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        du = dist[u]
        assert du is not None
        for w in g.adj[u]:
            if dist[w] is None:
                dist[w] = du + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    full = g.vertex_mask()
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.nbr_masks[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def all_pairs_distances(g: Graph) -> list[DistanceVector]:
    """All-pairs hop distances by Floyd-Warshall (independent of the BFS route)."""
    inf = float("inf")
    n = g.n
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in g.edges():
        d[u][v] = d[v][u] = 1
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is inf:
                continue
            di = d[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return [[None if x is inf else int(x) for x in row] for row in d]
