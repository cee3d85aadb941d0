"""Immutable simple graphs with edge-contraction bookkeeping.

Vertices are opaque hashable, mutually orderable ids (nonnegative ints in
files; tuples work fine in memory). Edges are stored as sorted 2-tuples.
Every operation returns a new graph, so search code can branch freely
without aliasing bugs; all values are safe to share across workers.

Contracting an edge merges its endpoints into the smaller endpoint id.
That rule makes contraction sequences replayable from original-graph edge
ids without a separate rename table: the surviving id of a merged group is
always the minimum of the group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property


class GraphError(ValueError):
    """Malformed graph data: loops, unknown vertices, missing edges."""


def edge_key(u, v):
    """Normalize an endpoint pair to the canonical (min, max) edge tuple."""
    if u == v:
        raise GraphError(f"loop edge at {u!r}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph (no loops, no parallel edges)."""

    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2 or not e[0] < e[1]:
                raise GraphError(f"edge {e!r} is not a sorted pair")
            if e[0] not in self.vertices or e[1] not in self.vertices:
                raise GraphError(f"edge {e!r} has an endpoint outside the vertex set")

    @staticmethod
    def from_edges(edges, vertices=()) -> "Graph":
        es = frozenset(edge_key(u, v) for u, v in edges)
        vs = frozenset(vertices) | frozenset(v for e in es for v in e)
        return Graph(vs, es)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(nb) for v, nb in adj.items()}

    def neighbors(self, v) -> frozenset:
        try:
            return self.adjacency[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u, v) -> bool:
        return edge_key(u, v) in self.edges

    def sorted_vertices(self) -> list:
        return sorted(self.vertices)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def induced_subgraph(self, s) -> "Graph":
        s = frozenset(s)
        unknown = s - self.vertices
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)!r}")
        return Graph(s, frozenset(e for e in self.edges if e[0] in s and e[1] in s))

    def delete_vertices(self, s) -> "Graph":
        s = frozenset(s)
        unknown = s - self.vertices
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)!r}")
        return self.induced_subgraph(self.vertices - s)


@dataclass(frozen=True)
class EdgeSet:
    """A subset of a reference graph's edges."""

    graph: Graph
    edges: frozenset

    def __post_init__(self):
        extra = self.edges - self.graph.edges
        if extra:
            raise GraphError(f"edges not in graph: {sorted(extra)!r}")

    @staticmethod
    def of(graph: Graph, edges) -> "EdgeSet":
        return EdgeSet(graph, frozenset(edge_key(u, v) for u, v in edges))

    def __len__(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)


@dataclass(frozen=True)
class Instance:
    """A contraction-planarization question: graph plus contraction budget."""

    graph: Graph
    budget: int

    def __post_init__(self):
        if self.budget < 0:
            raise GraphError(f"negative budget {self.budget}")


def contract_edge(g: Graph, e) -> Graph:
    """Contract one edge; the merged vertex keeps the smaller endpoint id."""
    keep, drop = edge_key(*e)
    if (keep, drop) not in g.edges:
        raise GraphError(f"edge {e!r} not in graph")
    edges = set()
    for u, v in g.edges:
        if u == drop:
            u = keep
        if v == drop:
            v = keep
        if u != v:
            edges.add(edge_key(u, v))
    return Graph(g.vertices - {drop}, frozenset(edges))


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # the smaller id survives, matching contract_edge
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def contract_edge_set(g: Graph, es) -> tuple[Graph, int]:
    """Contract every edge of es at once.

    Each connected component of the spanning subgraph (V, es) collapses to
    its minimum vertex id. Returns the contracted graph and the number of
    elementary contractions used: (vertices touched by es) minus (number of
    es-components), which is at most |es|.
    """
    edges = es.edges if isinstance(es, EdgeSet) else frozenset(edge_key(u, v) for u, v in es)
    extra = edges - g.edges
    if extra:
        raise GraphError(f"edges not in graph: {sorted(extra)!r}")
    uf = _UnionFind()
    touched = set()
    merges = 0
    for u, v in edges:
        touched.update((u, v))
        if uf.union(u, v):
            merges += 1
    new_edges = set()
    for u, v in g.edges:
        ru = uf.find(u) if u in touched else u
        rv = uf.find(v) if v in touched else v
        if ru != rv:
            new_edges.add(edge_key(ru, rv))
    dropped = frozenset(v for v in touched if uf.find(v) != v)
    return Graph(g.vertices - dropped, frozenset(new_edges)), merges


def contract_sequence(g: Graph, edges) -> tuple[Graph, int]:
    """Replay edges (given in original ids) one at a time through merges.

    An edge whose endpoints have already been merged together is skipped; it
    costs no contraction. Returns the final graph and contractions used.
    """
    current = {}

    def resolve(v):
        while v in current:
            v = current[v]
        return v

    used = 0
    for u, v in edges:
        ru, rv = resolve(u), resolve(v)
        if ru == rv:
            continue
        g = contract_edge(g, (ru, rv))
        keep, drop = edge_key(ru, rv)
        current[drop] = keep
        used += 1
    return g, used


def connected_components(g: Graph) -> list[Graph]:
    """Maximal connected induced subgraphs, ordered by smallest vertex id."""
    seen = set()
    comps = []
    for start in g.sorted_vertices():
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(g.induced_subgraph(comp))
    return comps


# -- witness structures ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WitnessStructure:
    """A partition of a host graph certifying that target is its contraction.

    parts maps each target vertex to a nonempty host vertex set; the parts
    must partition the host, induce connected subgraphs, and be adjacent
    exactly when their target vertices are.
    """

    host: Graph
    target: Graph
    parts: dict


def _is_connected_in(g: Graph, vs: frozenset) -> bool:
    if not vs:
        return False
    it = iter(vs)
    start = next(it)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v) & vs:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


def verify_witness_structure(ws: WitnessStructure) -> bool:
    """Check all witness-structure invariants; malformed input yields False."""
    parts = {x: frozenset(vs) for x, vs in ws.parts.items()}
    if frozenset(parts) != ws.target.vertices:
        return False
    union = set()
    total = 0
    for vs in parts.values():
        if not vs or not vs <= ws.host.vertices:
            return False
        union |= vs
        total += len(vs)
    if total != len(union) or union != set(ws.host.vertices):
        return False
    for vs in parts.values():
        if not _is_connected_in(ws.host, vs):
            return False
    labels = sorted(parts)
    for x, y in itertools.combinations(labels, 2):
        adjacent = any(
            ws.host.has_edge(u, v) for u in parts[x] for v in parts[y]
        )
        if adjacent != ws.target.has_edge(x, y):
            return False
    return True


def witness_edges(ws: WitnessStructure) -> frozenset:
    """Host edges whose endpoints lie in different witness sets."""
    owner = {v: x for x, vs in ws.parts.items() for v in vs}
    return frozenset(e for e in ws.host.edges if owner[e[0]] != owner[e[1]])


def quotient_by_parts(host: Graph, parts: dict) -> Graph:
    """Contract each part of a partition to one vertex (keyed by part label)."""
    owner = {v: x for x, vs in parts.items() for v in vs}
    edges = set()
    for u, v in host.edges:
        if owner[u] != owner[v]:
            edges.add(edge_key(owner[u], owner[v]))
    return Graph(frozenset(parts), frozenset(edges))


_ISO_LIMIT = 8


def is_isomorphic_small(g1: Graph, g2: Graph) -> bool:
    """Exhaustive isomorphism test for graphs with at most 8 vertices."""
    if g1.n > _ISO_LIMIT or g2.n > _ISO_LIMIT:
        raise GraphError(f"isomorphism check limited to {_ISO_LIMIT} vertices")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    d1 = sorted(g1.degree(v) for v in g1.vertices)
    d2 = sorted(g2.degree(v) for v in g2.vertices)
    if d1 != d2:
        return False
    vs1 = g1.sorted_vertices()
    for perm in itertools.permutations(g2.sorted_vertices()):
        phi = dict(zip(vs1, perm))
        if all(g1.degree(v) == g2.degree(phi[v]) for v in vs1):
            if all(g2.has_edge(phi[u], phi[v]) for u, v in g1.edges):
                return True
    return False


# -- small constructors ------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(itertools.combinations(range(n), 2), range(n))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(
        ((i, a + j) for i in range(a) for j in range(b)), range(a + b)
    )


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(((i, (i + 1) % n) for i in range(n)), range(n))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(((i, i + 1) for i in range(n - 1)), range(n))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    overlap = g1.vertices & g2.vertices
    if overlap:
        raise GraphError(f"vertex sets overlap: {sorted(overlap)!r}")
    return Graph(g1.vertices | g2.vertices, g1.edges | g2.edges)


# -- edge-list text format ---------------------------------------------------
#
# Optional header line `p <n> <m>` declaring the vertex set 0..n-1, then one
# `u v` pair per line with nonnegative integer ids; `#` starts a comment
# line. Without a header the vertex set is the set of edge endpoints.


def parse_edge_list(text: str) -> Graph:
    edges = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise GraphError(f"line {lineno}: duplicate header")
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: header must be 'p <n> <m>'")
            header = (int(parts[1]), int(parts[2]))
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: vertex ids must be nonnegative")
        edges.append((u, v))
    if header is None:
        return Graph.from_edges(edges)
    g = Graph.from_edges(edges, range(header[0]))
    if g.n != header[0]:
        raise GraphError(f"header claims {header[0]} vertices, ids reach higher")
    if g.m != header[1]:
        raise GraphError(f"header claims {header[1]} edges, found {g.m}")
    return g


def format_edge_list(g: Graph) -> str:
    contiguous = all(isinstance(v, int) for v in g.vertices) and g.vertices == frozenset(
        range(g.n)
    )
    lines = [f"p {g.n} {g.m}"] if contiguous else []
    if not contiguous and g.vertices != {v for e in g.edges for v in e}:
        raise GraphError("isolated vertices outside 0..n-1 cannot be written")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
