"""Level providers: explicit or implicit descriptions of covering levels.

A provider answers vertex, edge, map, anchor and covering-walk queries
for the *input* side of the construction.  The built-in generators
(`fixed-point`, `odometer`) answer arithmetically at unbounded depth and
are the vehicles for schedule-faithful deep checks; file-backed
coverings answer from parsed graphs up to their parsed depth and raise
``DepthExceededError`` beyond it.
"""
from __future__ import annotations

from .anchors import AnchorData, AnchorError, check_anchor_invariants, select_lexmin_families
from .covering import CoveringSequence, GraphHom
from .graphs import DirectedGraph, Walk, edge_covering_walk, is_irreducible, singleton_graph


class DepthExceededError(RuntimeError):
    """A query went deeper than the backing data supports."""


class BudgetExceededError(RuntimeError):
    """An explicit materialization would exceed the configured size budget."""


class CoveringProvider:
    """Interface for one input covering; see the generator subclasses."""

    name = "provider"
    bidirectional = False

    #: parsed depth for file-backed data, None when unbounded
    depth: int | None = None

    def check_level(self, n: int) -> None:
        if n < 0:
            raise ValueError("levels are numbered from 0")
        if self.depth is not None and n > self.depth:
            raise DepthExceededError(
                f"provider depth exceeded: level {n} beyond parsed depth {self.depth}")

    # -- level structure -----------------------------------------------
    def vertex_count(self, n: int) -> int:
        raise NotImplementedError

    def vertices(self, n: int) -> tuple:
        raise NotImplementedError

    def successors(self, n: int, v) -> tuple:
        raise NotImplementedError

    def predecessors(self, n: int, v) -> tuple:
        raise NotImplementedError

    def map_down(self, n: int, v):
        """Image of level-n vertex v at level n-1."""
        raise NotImplementedError

    def is_irreducible(self, n: int) -> bool:
        raise NotImplementedError

    # -- anchors ---------------------------------------------------------
    def fwd_anchor(self, n: int, i: int):
        """Forward orbit entry at level n, 0 <= i <= n+1."""
        raise NotImplementedError

    def bwd_anchor(self, n: int, i: int):
        """Backward orbit entry at level n, -(n+1) <= i <= 0."""
        raise NotImplementedError

    # -- edge-covering walks ----------------------------------------------
    def walk_len(self, n: int) -> int:
        """Length of the canonical edge-covering walk at level n >= 1."""
        raise NotImplementedError

    def walk_pos(self, n: int, k: int):
        """Vertex at position k of the canonical edge-covering walk."""
        raise NotImplementedError

    # -- materialization ---------------------------------------------------
    def level_graph(self, n: int) -> DirectedGraph:
        self.check_level(n)
        if n == 0:
            vs = self.vertices(0)
            return DirectedGraph(vs, [(vs[0], vs[0])])
        vs = self.vertices(n)
        edges = [(u, w) for u in vs for w in self.successors(n, u)]
        return DirectedGraph(vs, edges)

    def materialize(self, depth: int) -> CoveringSequence:
        """Explicit covering for levels 0..depth."""
        levels = [self.level_graph(n) for n in range(depth + 1)]
        homs = []
        for n in range(1, depth + 1):
            mapping = {v: self.map_down(n, v) for v in levels[n].vertices}
            homs.append(GraphHom(levels[n], levels[n - 1], mapping, name=f"phi_{n}"))
        anchors = {n: (self.fwd_anchor(n, 0), self.bwd_anchor(n, 0))
                   for n in range(1, depth + 1)}
        return CoveringSequence(levels, homs, anchors=anchors, name=self.name)

    def anchor_data(self, depth: int) -> AnchorData:
        fwd = tuple(tuple(self.fwd_anchor(n, i) for i in range(n + 2))
                    for n in range(1, depth + 1))
        bwd = tuple(tuple(self.bwd_anchor(n, i) for i in range(-(n + 1), 1))
                    for n in range(1, depth + 1))
        return AnchorData(forward=fwd, backward=bwd)


class FixedPointProvider(CoveringProvider):
    """Every level is the one-vertex loop; the simplest chain-transitive input."""

    name = "fixed-point"
    bidirectional = True
    depth = None

    def vertex_count(self, n):
        self.check_level(n)
        return 1

    def vertices(self, n):
        self.check_level(n)
        return (0,)

    def successors(self, n, v):
        return (0,)

    def predecessors(self, n, v):
        return (0,)

    def map_down(self, n, v):
        return 0

    def is_irreducible(self, n):
        return True

    def fwd_anchor(self, n, i):
        return 0

    def bwd_anchor(self, n, i):
        return 0

    def walk_len(self, n):
        return 1

    def walk_pos(self, n, k):
        if not 0 <= k <= 1:
            raise IndexError(k)
        return 0


class OdometerProvider(CoveringProvider):
    """Binary odometer: level n is the 2^n-cycle, maps are residues.

    All oracles are arithmetic, so queries stay cheap at depths where the
    cycle itself could never be materialized.  The covering-walk oracle
    mirrors the canonical edge-covering construction on a cycle: from the
    forward anchor endpoint, wrap around once to cover every edge, then
    continue to the backward endpoint; the trajectory is position
    ``(n + k) mod 2^n`` with total length ``3*2^n - 2n``.
    """

    name = "odometer"
    bidirectional = True
    depth = None

    def vertex_count(self, n):
        self.check_level(n)
        return 2 ** n

    def vertices(self, n):
        self.check_level(n)
        if n > 24:
            raise BudgetExceededError(f"cannot enumerate 2^{n} vertices")
        return tuple(range(2 ** n))

    def successors(self, n, v):
        if n == 0:
            return (0,)
        return ((v + 1) % (2 ** n),)

    def predecessors(self, n, v):
        if n == 0:
            return (0,)
        return ((v - 1) % (2 ** n),)

    def map_down(self, n, v):
        if n == 1:
            return 0
        return v % (2 ** (n - 1))

    def is_irreducible(self, n):
        return True

    def fwd_anchor(self, n, i):
        return i % (2 ** n)

    def bwd_anchor(self, n, i):
        return i % (2 ** n)

    def walk_len(self, n):
        return 3 * 2 ** n - 2 * n

    def walk_pos(self, n, k):
        if not 0 <= k <= self.walk_len(n):
            raise IndexError(k)
        return (n + k) % (2 ** n)


class ExplicitCoveringProvider(CoveringProvider):
    """Provider backed by a parsed CoveringSequence.

    Anchor families come from the lex-smallest coherent walk search,
    constrained by any anchors pinned in the file; covering walks are
    materialized per level with the canonical construction.
    """

    def __init__(self, seq: CoveringSequence):
        self.seq = seq
        self.name = seq.name
        self.depth = seq.depth
        self.bidirectional = all(h.is_hom and h.bidirectional for h in seq.homs)
        self._anchors = None
        self._walks = {}

    def _anchor_family(self) -> AnchorData:
        if self._anchors is None:
            for n in range(1, self.seq.depth + 1):
                if not is_irreducible(self.seq.level(n)):
                    raise AnchorError(f"level {n} is not irreducible")
            self._anchors = select_lexmin_families(
                self.seq, self.seq.depth, pinned=self.seq.anchors or None)
        return self._anchors

    def vertex_count(self, n):
        self.check_level(n)
        return len(self.seq.level(n))

    def vertices(self, n):
        self.check_level(n)
        return self.seq.level(n).vertices

    def successors(self, n, v):
        self.check_level(n)
        return self.seq.level(n).successors(v)

    def predecessors(self, n, v):
        self.check_level(n)
        return self.seq.level(n).predecessors(v)

    def map_down(self, n, v):
        self.check_level(n)
        return self.seq.phi(n)(v)

    def is_irreducible(self, n):
        self.check_level(n)
        return self.seq.level(n).is_strongly_connected()

    def fwd_anchor(self, n, i):
        self.check_level(n)
        return self._anchor_family().fwd_entry(n, i)

    def bwd_anchor(self, n, i):
        self.check_level(n)
        return self._anchor_family().bwd_entry(n, i)

    def _walk(self, n: int) -> Walk:
        self.check_level(n)
        if n not in self._walks:
            g = self.seq.level(n)
            self._walks[n] = edge_covering_walk(
                g, self.fwd_anchor(n, n), self.bwd_anchor(n, -n))
        return self._walks[n]

    def walk_len(self, n):
        return self._walk(n).length

    def walk_pos(self, n, k):
        return self._walk(n)[k]

    def level_graph(self, n):
        self.check_level(n)
        return self.seq.level(n)

    def materialize(self, depth):
        if depth > self.seq.depth:
            raise DepthExceededError(
                f"provider depth exceeded: requested {depth}, parsed {self.seq.depth}")
        return CoveringSequence(self.seq.levels[:depth + 1], self.seq.homs[:depth],
                                anchors=self.seq.anchors, name=self.seq.name)


GENERATORS = {
    "fixed-point": FixedPointProvider,
    "odometer": OdometerProvider,
}


def make_generator(name: str) -> CoveringProvider:
    try:
        return GENERATORS[name]()
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; expected one of {sorted(GENERATORS)}")
