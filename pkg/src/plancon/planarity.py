"""Certifying planarity tests, combinatorial embeddings, and cycle interiors.

The verdict and rotation system come from the left-right planarity test
(networkx). Everything downstream of the verdict is built and checked here:
face traversal from the rotation system, Euler-count validation, interior
computation by dual traversal, and Kuratowski subdivisions extracted by
iterative edge deletion and validated structurally. A returned certificate
never depends on trusting the backend: embeddings are replayed through the
face invariants, and subdivisions are re-checked edge by edge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .graph import Graph, complete_bipartite, complete_graph, edge_key


class PlanarityError(ValueError):
    """Bad input to an embedding operation: malformed rotation, non-cycle,
    or a request that needs the opposite planarity verdict."""


def _to_nx(g: Graph) -> nx.Graph:
    ng = nx.Graph()
    ng.add_nodes_from(g.sorted_vertices())
    ng.add_edges_from(g.sorted_edges())
    return ng


def is_planar(g: Graph) -> bool:
    """Planarity verdict only; no certificate is built."""
    return nx.check_planarity(_to_nx(g))[0]


def _edges_planar(edges) -> bool:
    ng = nx.Graph()
    ng.add_edges_from(edges)
    return nx.check_planarity(ng)[0]


# -- embeddings ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Embedding:
    """A combinatorial planar embedding: a cyclic edge order per vertex.

    faces are closed vertex walks derived from the rotation; outer maps each
    component (keyed by its smallest vertex) to the index of its outer face.
    Isolated vertices get a degenerate one-vertex face.
    """

    graph: Graph
    rotation: dict
    faces: tuple
    outer: dict

    @cached_property
    def component_of(self) -> dict:
        comp = {}
        for start in self.graph.sorted_vertices():
            if start in comp:
                continue
            stack = [start]
            comp[start] = start
            while stack:
                v = stack.pop()
                for w in self.graph.neighbors(v):
                    if w not in comp:
                        comp[w] = start
                        stack.append(w)
        return comp

    @cached_property
    def edge_faces(self) -> dict:
        """edge -> list of face indices (a face repeats for bridge edges)."""
        incidence = {}
        for idx, walk in enumerate(self.faces):
            if len(walk) == 1:
                continue
            for i, u in enumerate(walk):
                v = walk[(i + 1) % len(walk)]
                incidence.setdefault(edge_key(u, v), []).append(idx)
        return incidence

    @property
    def outer_face(self) -> int:
        """Outer face of the component holding the smallest vertex."""
        root = min(self.outer)
        return self.outer[root]

    def outer_face_of(self, vertex) -> int:
        return self.outer[self.component_of[vertex]]

    def reroot(self, face_index: int) -> "Embedding":
        """Designate another face as the outer face of its component."""
        walk = self.faces[face_index]
        root = self.component_of[walk[0]]
        outer = dict(self.outer)
        outer[root] = face_index
        return Embedding(self.graph, self.rotation, self.faces, outer)


def _trace_faces(graph: Graph, rotation: dict) -> tuple:
    """Walk every directed edge once, turning by the rotation order."""
    index = {}
    for v, ring in rotation.items():
        if len(set(ring)) != len(ring):
            raise PlanarityError(f"repeated neighbor in rotation at {v!r}")
        if frozenset(ring) != graph.neighbors(v):
            raise PlanarityError(f"rotation at {v!r} does not match the graph")
        index[v] = {u: i for i, u in enumerate(ring)}
    faces = []
    seen = set()
    for u in graph.sorted_vertices():
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                ring = rotation[b]
                a, b = b, ring[(index[b][a] + 1) % len(ring)]
            faces.append(tuple(walk))
    for v in graph.sorted_vertices():
        if not rotation.get(v):
            faces.append((v,))
    return tuple(faces)


def _default_outer(graph: Graph, faces: tuple) -> dict:
    comp = {}
    for start in graph.sorted_vertices():
        if start in comp:
            continue
        stack = [start]
        comp[start] = start
        while stack:
            v = stack.pop()
            for w in graph.neighbors(v):
                if w not in comp:
                    comp[w] = start
                    stack.append(w)
    outer = {}
    for idx, walk in enumerate(faces):
        root = comp[walk[0]]
        if root not in outer or len(walk) > len(faces[outer[root]]):
            outer[root] = idx
    return outer


def build_embedding(graph: Graph, rotation: dict, outer: dict | None = None) -> Embedding:
    """Assemble and validate an embedding from a rotation system."""
    rot = {v: tuple(rotation.get(v, ())) for v in graph.vertices}
    faces = _trace_faces(graph, rot)
    emb = Embedding(graph, rot, faces, outer or _default_outer(graph, faces))
    validate_embedding(emb)
    return emb


def validate_embedding(emb: Embedding) -> None:
    """Raise unless faces satisfy the Euler count in every component and
    every edge is traversed exactly twice."""
    counts = {}
    for e, fs in emb.edge_faces.items():
        counts[e] = len(fs)
    for e in emb.graph.edges:
        if counts.get(e, 0) != 2:
            raise PlanarityError(f"edge {e!r} traversed {counts.get(e, 0)} times")
    if sum(counts.values()) != 2 * emb.graph.m:
        raise PlanarityError("stray directed edges in face walks")
    stats = {}
    for v in emb.graph.vertices:
        root = emb.component_of[v]
        n, m, _ = stats.get(root, (0, 0, 0))
        stats[root] = (n + 1, m, 0)
    for u, v in emb.graph.edges:
        root = emb.component_of[u]
        n, m, _ = stats[root]
        stats[root] = (n, m + 1, 0)
    face_count = {}
    for walk in emb.faces:
        root = emb.component_of[walk[0]]
        face_count[root] = face_count.get(root, 0) + 1
    for root, (n, m, _) in stats.items():
        if face_count.get(root, 0) != m - n + 2:
            raise PlanarityError(
                f"component {root!r}: {face_count.get(root, 0)} faces, "
                f"Euler requires {m - n + 2}"
            )
    for root, idx in emb.outer.items():
        if emb.component_of[emb.faces[idx][0]] != root:
            raise PlanarityError("outer face assigned to the wrong component")


def embed(g: Graph) -> Embedding:
    """Planar embedding of g; raises if g is nonplanar."""
    ok, pe = nx.check_planarity(_to_nx(g))
    if not ok:
        raise PlanarityError("graph is nonplanar")
    data = pe.get_data()
    rotation = {v: tuple(data.get(v, ())) for v in g.vertices}
    return build_embedding(g, rotation)


def faces(emb: Embedding) -> tuple:
    """Face walks of the embedding, in deterministic traversal order."""
    validate_embedding(emb)
    return emb.faces


# -- cycle interiors ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CycleRegion:
    """The two sides of a cycle in an embedded graph.

    interior holds the vertices strictly inside (away from the outer face),
    exterior the rest of the cycle's component; the three sets partition the
    component's vertices.
    """

    cycle: tuple
    interior: frozenset
    exterior: frozenset


def cycle_interior(emb: Embedding, cycle) -> CycleRegion:
    """Split a component at a cycle by dual traversal from the outer face."""
    cyc = tuple(cycle)
    if len(cyc) > 1 and cyc[0] == cyc[-1]:
        cyc = cyc[:-1]
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise PlanarityError(f"not a simple cycle: {cyc!r}")
    blocked = set()
    for i, u in enumerate(cyc):
        v = cyc[(i + 1) % len(cyc)]
        if not emb.graph.has_edge(u, v):
            raise PlanarityError(f"cycle step {u!r}-{v!r} is not an edge")
        blocked.add(edge_key(u, v))
    root = emb.component_of[cyc[0]]
    start = emb.outer[root]
    reached = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        walk = emb.faces[f]
        for i, u in enumerate(walk):
            if len(walk) == 1:
                continue
            e = edge_key(u, walk[(i + 1) % len(walk)])
            if e in blocked:
                continue
            for nf in emb.edge_faces[e]:
                if nf not in reached:
                    reached.add(nf)
                    stack.append(nf)
    cset = frozenset(cyc)
    interior = set()
    for idx, walk in enumerate(emb.faces):
        if idx in reached or emb.component_of[walk[0]] != root:
            continue
        interior.update(walk)
    interior -= cset
    component = frozenset(
        v for v in emb.graph.vertices if emb.component_of[v] == root
    )
    exterior = component - interior - cset
    return CycleRegion(cyc, frozenset(interior), frozenset(exterior))


# -- Kuratowski subdivisions --------------------------------------------------


@dataclass(frozen=True, eq=False)
class KuratowskiSubdivision:
    """A subdivision of K5 or K3,3 witnessing nonplanarity.

    Each path runs between two branch vertices; paths meet only at branch
    vertices, and the branch connection pattern equals the kind's graph.
    """

    kind: str  # "K5" | "K33"
    branch_vertices: tuple
    paths: tuple  # of vertex tuples, each from one branch vertex to another

    def edges(self) -> frozenset:
        out = set()
        for path in self.paths:
            out.update(edge_key(a, b) for a, b in zip(path, path[1:]))
        return frozenset(out)

    def vertices(self) -> frozenset:
        return frozenset(v for path in self.paths for v in path)


def validate_kuratowski(g: Graph, ks: KuratowskiSubdivision) -> bool:
    """Structural check of a subdivision certificate against its host."""
    branches = ks.branch_vertices
    if ks.kind == "K5":
        pattern, expected = complete_graph(5), 5
    elif ks.kind == "K33":
        pattern, expected = complete_bipartite(3, 3), 6
    else:
        return False
    if len(branches) != expected or len(set(branches)) != expected:
        return False
    if not set(branches) <= g.vertices:
        return False
    bset = set(branches)
    seen_internal = set()
    pairs = set()
    for path in ks.paths:
        if len(path) < 2 or path[0] not in bset or path[-1] not in bset:
            return False
        if len(set(path)) != len(path):
            return False
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                return False
        internal = set(path[1:-1])
        if internal & bset or internal & seen_internal:
            return False
        seen_internal |= internal
        pairs.add(edge_key(path[0], path[-1]))
    if len(pairs) != len(ks.paths):
        return False
    label = {b: i for i, b in enumerate(sorted(branches))}
    got = frozenset(edge_key(label[a], label[b]) for a, b in pairs)
    for phi in itertools.permutations(range(expected)):
        if frozenset(edge_key(phi[a], phi[b]) for a, b in got) == pattern.edges:
            return True
    return False


def _minimal_nonplanar_edges(edges: list) -> list:
    """Shrink a nonplanar edge list to a minimal one by block deletion."""
    current = list(edges)
    nblocks = 2
    while nblocks <= len(current):
        size = len(current)
        chunk = (size + nblocks - 1) // nblocks
        blocks = [current[i : i + chunk] for i in range(0, size, chunk)]
        for i in range(len(blocks)):
            rest = [e for j, blk in enumerate(blocks) if j != i for e in blk]
            if rest and not _edges_planar(rest):
                current = rest
                nblocks = max(nblocks - 1, 2)
                break
        else:
            if nblocks >= len(current):
                break
            nblocks = min(nblocks * 2, len(current))
    return current


def _parse_subdivision(edges: list) -> KuratowskiSubdivision:
    sub = Graph.from_edges(edges)
    degs = {v: sub.degree(v) for v in sub.vertices}
    branch = sorted(v for v, d in degs.items() if d >= 3)
    if all(degs[b] == 4 for b in branch) and len(branch) == 5:
        kind = "K5"
    elif all(degs[b] == 3 for b in branch) and len(branch) == 6:
        kind = "K33"
    else:
        raise PlanarityError("minimal nonplanar subgraph is not a subdivision")
    bset = set(branch)
    paths = []
    seen = set()
    for b in branch:
        for nb in sorted(sub.neighbors(b)):
            path = [b, nb]
            while path[-1] not in bset:
                prev, cur = path[-2], path[-1]
                (nxt,) = set(sub.neighbors(cur)) - {prev}
                path.append(nxt)
            if path[0] > path[-1] or (path[0] == path[-1]):
                continue
            key = tuple(path)
            if key not in seen:
                seen.add(key)
                paths.append(key)
    return KuratowskiSubdivision(kind, tuple(branch), tuple(paths))


def find_kuratowski(g: Graph) -> KuratowskiSubdivision:
    """Extract a validated Kuratowski subdivision from a nonplanar graph.

    Deterministic for a fixed input: edges are scanned in sorted order and
    deleted in blocks while nonplanarity survives, leaving a minimal
    nonplanar subgraph, which is necessarily a K5 or K3,3 subdivision.
    """
    if is_planar(g):
        raise PlanarityError("graph is planar; nothing to extract")
    minimal = _minimal_nonplanar_edges(g.sorted_edges())
    ks = _parse_subdivision(minimal)
    if not validate_kuratowski(g, ks):
        raise PlanarityError("extracted subdivision failed validation")
    return ks


def test_planarity(g: Graph):
    """One certificate either way: an Embedding or a KuratowskiSubdivision."""
    if is_planar(g):
        return embed(g)
    return find_kuratowski(g)


# -- embedding text format ----------------------------------------------------
#
# One line per vertex, `v: n1 n2 ... nk` in rotation order, then one
# `outer: <face walk>` line per component.


def format_embedding(emb: Embedding) -> str:
    lines = []
    for v in emb.graph.sorted_vertices():
        ring = " ".join(str(u) for u in emb.rotation[v])
        lines.append(f"{v}: {ring}".rstrip())
    for root in sorted(emb.outer):
        walk = emb.faces[emb.outer[root]]
        lines.append("outer: " + " ".join(str(u) for u in walk))
    return "\n".join(lines) + "\n"


def _canonical_cycle(walk: tuple) -> tuple:
    best = None
    n = len(walk)
    for seq in (walk, tuple(reversed(walk))):
        for s in range(n):
            cand = tuple(seq[(s + i) % n] for i in range(n))
            if best is None or cand < best:
                best = cand
    return best


def parse_embedding(text: str, graph: Graph) -> Embedding:
    """Parse and validate the rotation format against a host graph."""
    rotation = {}
    outer_walks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        items = [int(tok) for tok in rest.split()]
        if head.strip() == "outer":
            outer_walks.append(tuple(items))
            continue
        v = int(head)
        if v in rotation:
            raise PlanarityError(f"line {lineno}: duplicate rotation for {v}")
        rotation[v] = tuple(items)
    if frozenset(rotation) != graph.vertices:
        raise PlanarityError("rotation lines do not cover the vertex set")
    emb = build_embedding(graph, rotation)
    outer = {}
    canon = {_canonical_cycle(w): i for i, w in enumerate(emb.faces)}
    for walk in outer_walks:
        idx = canon.get(_canonical_cycle(walk))
        if idx is None:
            raise PlanarityError(f"outer walk {walk!r} is not a face")
        root = emb.component_of[walk[0]]
        outer[root] = idx
    if frozenset(outer) != frozenset(emb.outer):
        raise PlanarityError("outer lines do not cover every component")
    return Embedding(graph, emb.rotation, emb.faces, outer)
