"""Graph model, DIMACS .col I/O, generator families, and a coloring oracle.

Vertices are 1-based everywhere (the DIMACS convention); the algebraic
encoding maps vertex i to variable index i-1.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple


class GraphError(ValueError):
    """Raised for malformed graphs or generator parameters."""


class DimacsError(GraphError):
    """Raised on DIMACS parse failures; message carries the line number."""


Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on vertices 1..n_vertices."""

    n_vertices: int
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise GraphError("graph needs at least one vertex")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u < v <= self.n_vertices):
                raise GraphError(f"edge ({u},{v}) out of range or unordered")

    @classmethod
    def make(cls, n_vertices: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        canon = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        return cls(n_vertices, frozenset(canon))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> Dict[int, set]:
        adj: Dict[int, set] = {v: set() for v in range(1, self.n_vertices + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS .col text: `c` comments, one `p edge <n> <m>`, `e <u> <v>` lines.

    Duplicate edges and both orientations collapse; a declared edge count
    that disagrees with the distinct-edge count warns but does not fail.
    """
    n_vertices: Optional[int] = None
    declared_m: Optional[int] = None
    edges: set = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n_vertices is not None:
                raise DimacsError(f"line {lineno}: duplicate p line")
            if len(fields) != 4 or fields[1] != "edge":
                raise DimacsError(f"line {lineno}: expected `p edge <n> <m>`")
            try:
                n_vertices, declared_m = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer p fields") from None
            if n_vertices < 1:
                raise DimacsError(f"line {lineno}: vertex count must be positive")
        elif fields[0] == "e":
            if n_vertices is None:
                raise DimacsError(f"line {lineno}: e line before p line")
            if len(fields) != 3:
                raise DimacsError(f"line {lineno}: expected `e <u> <v>`")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer edge endpoints") from None
            if u == v:
                raise DimacsError(f"line {lineno}: self-loop at {u}")
            if not (1 <= u <= n_vertices and 1 <= v <= n_vertices):
                raise DimacsError(f"line {lineno}: endpoint out of range 1..{n_vertices}")
            edges.add((u, v) if u < v else (v, u))
        else:
            raise DimacsError(f"line {lineno}: unknown line type {fields[0]!r}")
    if n_vertices is None:
        raise DimacsError("missing p line")
    if declared_m is not None and declared_m != len(edges):
        warnings.warn(f"DIMACS header declares {declared_m} edges, found {len(edges)} distinct")
    return Graph(n_vertices, frozenset(edges))


def write_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n_vertices} {g.n_edges}"]
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.make(n, itertools.combinations(range(1, n + 1), 2))


def gen_wheel(rim: int) -> Graph:
    """Cycle 1..rim plus a hub vertex rim+1 adjacent to every rim vertex."""
    if rim < 3:
        raise GraphError("wheel rim must have at least 3 vertices")
    hub = rim + 1
    edges = [(i, i % rim + 1) for i in range(1, rim + 1)]
    edges.extend((i, hub) for i in range(1, rim + 1))
    return Graph.make(hub, edges)


def gen_kneser(t: int, r: int) -> Graph:
    """Vertices are the r-subsets of {1..t} in lexicographic order, numbered
    from 1; edges join disjoint subsets."""
    if not 1 <= r <= t:
        raise GraphError("kneser requires 1 <= r <= t")
    subsets = list(itertools.combinations(range(1, t + 1), r))
    index = {s: i + 1 for i, s in enumerate(subsets)}
    edges = []
    for a, b in itertools.combinations(subsets, 2):
        if not set(a) & set(b):
            edges.append((index[a], index[b]))
    return Graph.make(len(subsets), edges)


def gen_mycielski(k: int) -> Graph:
    """Mycielski graph of order k, indexed so order 2 is a single edge (K2).

    Each step maps G on vertices 1..n to a graph on 1..2n+1: original edges,
    a shadow vertex n+i adjacent to the neighbors of i, and an apex 2n+1
    adjacent to every shadow.  Triangle-free with chromatic number k.
    """
    if k < 2:
        raise GraphError("mycielski order must be >= 2")
    g = gen_complete(2)
    for _ in range(k - 2):
        n = g.n_vertices
        apex = 2 * n + 1
        edges = list(g.edges)
        for u, v in g.edges:
            edges.append((u, n + v))
            edges.append((v, n + u))
        edges.extend((n + i, apex) for i in range(1, n + 1))
        g = Graph.make(apex, edges)
    return g


def gen_random(n: int, edge_prob: float, seed: int) -> Graph:
    """G(n, p) with a deterministic stream: random.Random(seed) (Mersenne
    Twister), scanning pairs (1,2), (1,3), ..., (n-1,n) in lexicographic
    order and including each independently with probability edge_prob."""
    if n < 1:
        raise GraphError("random graph needs n >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise GraphError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if rng.random() < edge_prob
    ]
    return Graph.make(n, edges)


def enumerate_triangles(g: Graph) -> List[Tuple[int, int, int]]:
    """All triangles (u, v, w) with u < v < w, each reported once."""
    adj = g.adjacency()
    out = []
    for u, v in g.sorted_edges():
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                out.append((u, v, w))
    out.sort()
    return out


def enumerate_cliques(g: Graph, size: int) -> List[Tuple[int, ...]]:
    """All cliques of the given size, vertices ascending, lexicographic order."""
    if size < 1:
        raise GraphError("clique size must be positive")
    if size == 1:
        return [(v,) for v in range(1, g.n_vertices + 1)]
    adj = g.adjacency()
    out: List[Tuple[int, ...]] = []

    def extend(clique: Tuple[int, ...], candidates: List[int]) -> None:
        if len(clique) == size:
            out.append(clique)
            return
        for i, v in enumerate(candidates):
            extend(clique + (v,), [w for w in candidates[i + 1 :] if w in adj[v]])

    for v in range(1, g.n_vertices + 1):
        extend((v,), sorted(w for w in adj[v] if w > v))
    return out


def spanning_tree(g: Graph, origin: int) -> Dict[int, int]:
    """BFS tree over origin's component as a child -> parent map.

    The origin itself is absent; so is every vertex outside its component.
    """
    if not 1 <= origin <= g.n_vertices:
        raise GraphError(f"origin {origin} out of range")
    adj = g.adjacency()
    parent: Dict[int, int] = {}
    frontier = [origin]
    seen = {origin}
    while frontier:
        nxt = []
        for u in frontier:
            for v in sorted(adj[u]):
                if v not in seen:
                    seen.add(v)
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    return parent


def components(g: Graph) -> List[List[int]]:
    """Connected components as sorted vertex lists, ordered by smallest member."""
    remaining = set(range(1, g.n_vertices + 1))
    out = []
    while remaining:
        start = min(remaining)
        comp = {start} | set(spanning_tree(g, start))
        out.append(sorted(comp))
        remaining -= comp
    return out


def oracle_colorable(g: Graph, k: int) -> bool:
    """Exact backtracking test for a proper k-coloring.

    Vertices are tried in descending-degree order; a vertex may only open
    one color beyond those already in use, which prunes color symmetry
    without affecting exactness.  Intended for n up to ~20.
    """
    if k < 1:
        return False
    adj = g.adjacency()
    order = sorted(range(1, g.n_vertices + 1), key=lambda v: (-len(adj[v]), v))
    color: Dict[int, int] = {}

    def bt(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        banned = {color[u] for u in adj[v] if u in color}
        limit = min(k, used + 1)
        for c in range(1, limit + 1):
            if c in banned:
                continue
            color[v] = c
            if bt(i + 1, max(used, c)):
                return True
            del color[v]
        return False

    return bt(0, 0)


__all__ = [
    "Graph",
    "GraphError",
    "DimacsError",
    "parse_dimacs",
    "write_dimacs",
    "gen_complete",
    "gen_wheel",
    "gen_kneser",
    "gen_mycielski",
    "gen_random",
    "enumerate_triangles",
    "enumerate_cliques",
    "spanning_tree",
    "components",
    "oracle_colorable",
]
