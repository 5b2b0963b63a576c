"""Finite directed graphs as surjective relations, plus walk primitives.

A graph here is a finite vertex set with an edge relation in which every
vertex has at least one incoming and one outgoing edge.  Graphs are
immutable after construction; adjacency is kept in canonical sorted order
so that every derived object (walks, covering walks, exports) is
deterministic for a fixed input.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class NotIrreducibleError(ValueError):
    """Raised when an operation requires a strongly connected graph."""


@dataclass(frozen=True)
class SurjectivityReport:
    """Which vertices violate the surjective-relation requirement."""

    no_incoming: tuple
    no_outgoing: tuple

    @property
    def ok(self) -> bool:
        return not self.no_incoming and not self.no_outgoing


class DirectedGraph:
    """Immutable finite directed graph over sortable, hashable vertex ids.

    Degree tables and adjacency are built at construction; shortest-path
    trees are computed per source on first use and memoized (graphs on
    the augmented side can have tens of thousands of vertices, so an
    eager all-pairs table would be wasteful).
    """

    __slots__ = ("_vertices", "_vertex_set", "_succ", "_pred", "_edges",
                 "_edge_set", "_sp_cache", "_scc_flag")

    def __init__(self, vertices, edges):
        vs = sorted(set(vertices))
        vset = set(vs)
        eset = set()
        for e in edges:
            u, v = e
            if u not in vset or v not in vset:
                raise ValueError(f"edge {e!r} uses undeclared vertex")
            eset.add((u, v))
        succ = {v: [] for v in vs}
        pred = {v: [] for v in vs}
        for (u, v) in sorted(eset):
            succ[u].append(v)
            pred[v].append(u)
        self._vertices = tuple(vs)
        self._vertex_set = frozenset(vs)
        self._succ = {v: tuple(ws) for v, ws in succ.items()}
        self._pred = {v: tuple(sorted(ws)) for v, ws in pred.items()}
        self._edges = tuple(sorted(eset))
        self._edge_set = frozenset(eset)
        self._sp_cache = {}
        self._scc_flag = None

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> tuple:
        return self._edges

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._vertex_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"DirectedGraph({len(self._vertices)} vertices, {len(self._edges)} edges)"

    def has_edge(self, u, v) -> bool:
        return (u, v) in self._edge_set

    def successors(self, v) -> tuple:
        return self._succ[v]

    def predecessors(self, v) -> tuple:
        return self._pred[v]

    def out_degree(self, v) -> int:
        return len(self._succ[v])

    def in_degree(self, v) -> int:
        return len(self._pred[v])

    def shortest_path(self, a, b) -> tuple:
        """BFS path from a to b, inclusive of both endpoints."""
        parents = self._sp_cache.get(a)
        if parents is None:
            parents = {a: None}
            queue = deque([a])
            while queue:
                x = queue.popleft()
                for y in self._succ[x]:
                    if y not in parents:
                        parents[y] = x
                        queue.append(y)
            self._sp_cache[a] = parents
        if b not in parents:
            raise NotIrreducibleError(f"no walk from {a!r} to {b!r}")
        path = [b]
        while path[-1] != a:
            path.append(parents[path[-1]])
        path.reverse()
        return tuple(path)

    def is_strongly_connected(self) -> bool:
        if self._scc_flag is None:
            self._scc_flag = self._compute_scc()
        return self._scc_flag

    def _compute_scc(self) -> bool:
        if not self._vertices:
            return False
        root = self._vertices[0]
        for adj in (self._succ, self._pred):
            seen = {root}
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            if len(seen) != len(self._vertices):
                return False
        return True


def singleton_graph(vertex=("H",)) -> DirectedGraph:
    """The one-vertex graph with a loop; level 0 of every covering."""
    return DirectedGraph([vertex], [(vertex, vertex)])


def validate_surjective(g: DirectedGraph) -> SurjectivityReport:
    """Report every vertex missing an incoming or outgoing edge."""
    no_in = tuple(v for v in g.vertices if g.in_degree(v) == 0)
    no_out = tuple(v for v in g.vertices if g.out_degree(v) == 0)
    return SurjectivityReport(no_in, no_out)


def is_irreducible(g: DirectedGraph) -> bool:
    """True iff there is a walk between every ordered pair of vertices."""
    rep = validate_surjective(g)
    if not rep.ok:
        raise ValueError(
            f"graph is not a surjective relation: no incoming {rep.no_incoming}, "
            f"no outgoing {rep.no_outgoing}")
    return g.is_strongly_connected()


@dataclass(frozen=True)
class Walk:
    """A vertex sequence (v_0, ..., v_l) whose consecutive pairs are edges."""

    graph: DirectedGraph = field(repr=False)
    vertices: tuple

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ValueError("a walk has at least one vertex")
        for v in vs:
            if v not in self.graph:
                raise ValueError(f"walk vertex {v!r} not in graph")
        for a, b in zip(vs, vs[1:]):
            if not self.graph.has_edge(a, b):
                raise ValueError(f"({a!r}, {b!r}) is not an edge")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def first(self):
        return self.vertices[0]

    @property
    def last(self):
        return self.vertices[-1]

    def __getitem__(self, i):
        return self.vertices[i]

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def edge_set(self) -> frozenset:
        return frozenset(zip(self.vertices, self.vertices[1:]))

    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def __repr__(self) -> str:
        return f"Walk(length={self.length}, {self.vertices[0]!r}->{self.vertices[-1]!r})"


def concat(w1: Walk, w2: Walk) -> Walk:
    """Join two walks sharing an endpoint; the junction vertex appears once."""
    if w1.graph != w2.graph:
        raise ValueError("walks live in different graphs")
    if w1.last != w2.first:
        raise ValueError(f"cannot join: {w1.last!r} != {w2.first!r}")
    return Walk(w1.graph, w1.vertices + w2.vertices[1:])


def concat_all(walks) -> Walk:
    walks = list(walks)
    out = walks[0]
    for w in walks[1:]:
        out = concat(out, w)
    return out


def subwalk(w: Walk, a: int, b: int) -> Walk:
    """The restriction (v_a, ..., v_b); requires 0 <= a <= b <= length."""
    if not (0 <= a <= b <= w.length):
        raise ValueError(f"indices [{a},{b}] out of range for length {w.length}")
    return Walk(w.graph, w.vertices[a:b + 1])


def edge_covering_walk(g: DirectedGraph, u, v) -> Walk:
    """A walk from u to v traversing every edge of g at least once.

    Edges are visited in canonical sorted order, each reached by a
    shortest path from the current endpoint.  Deterministic for a fixed
    input; no attempt is made to minimise length.
    """
    if not is_irreducible(g):
        raise NotIrreducibleError("edge covering walk requires an irreducible graph")
    if u not in g or v not in g:
        raise ValueError("endpoints must be vertices of the graph")
    seq = [u]
    for (a, b) in g.edges:
        seq.extend(g.shortest_path(seq[-1], a)[1:])
        seq.append(b)
    seq.extend(g.shortest_path(seq[-1], v)[1:])
    return Walk(g, tuple(seq))
