"""Graph homomorphisms with structural flags, and covering sequences.

A *cover* is an edge-surjective homomorphism in which all out-neighbours
of any vertex share one image (written "+directional" throughout).  A
*bidirectional* cover additionally satisfies the dual in-neighbour
condition; towers of bidirectional covers present invertible dynamics in
the limit.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import DirectedGraph, is_irreducible, singleton_graph, validate_surjective


class NotAHomomorphismError(ValueError):
    """Raised when a flag check is asked of a map that is not a homomorphism."""


class GraphHom:
    """A total vertex map between two graphs, with cached structural flags.

    Flags are computed once at construction.  ``recompute_flags`` rederives
    them from scratch so tests can assert the cache is honest.
    """

    __slots__ = ("source", "target", "mapping", "name",
                 "is_hom", "edge_surjective", "plus_directional", "bidirectional")

    def __init__(self, source: DirectedGraph, target: DirectedGraph,
                 mapping: dict, name: str = ""):
        missing = [v for v in source.vertices if v not in mapping]
        if missing:
            raise ValueError(f"map is partial: no image for {missing[:3]!r}...")
        for v in source.vertices:
            if mapping[v] not in target:
                raise ValueError(f"image {mapping[v]!r} of {v!r} not in target")
        self.source = source
        self.target = target
        self.mapping = {v: mapping[v] for v in source.vertices}
        self.name = name
        self.is_hom, self.edge_surjective, self.plus_directional, self.bidirectional = \
            self._compute_flags()

    def _compute_flags(self):
        m = self.mapping
        hom = all(self.target.has_edge(m[u], m[v]) for (u, v) in self.source.edges)
        if not hom:
            return False, False, False, False
        image_edges = {(m[u], m[v]) for (u, v) in self.source.edges}
        edge_surj = image_edges == set(self.target.edges)
        plus = all(
            len({m[w] for w in self.source.successors(v)}) <= 1
            for v in self.source.vertices)
        minus = all(
            len({m[w] for w in self.source.predecessors(v)}) <= 1
            for v in self.source.vertices)
        return True, edge_surj, plus, plus and minus

    def recompute_flags(self) -> tuple:
        return self._compute_flags()

    def __call__(self, v):
        return self.mapping[v]

    @property
    def is_cover(self) -> bool:
        return self.is_hom and self.edge_surjective and self.plus_directional

    def __eq__(self, other):
        if not isinstance(other, GraphHom):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.mapping == other.mapping)

    def __repr__(self):
        tag = self.name or "hom"
        return f"GraphHom({tag}: {len(self.source)} -> {len(self.target)} vertices)"


def identity_hom(g: DirectedGraph) -> GraphHom:
    return GraphHom(g, g, {v: v for v in g.vertices}, name="id")


def check_homomorphism(h: GraphHom) -> bool:
    """True iff every source edge maps to a target edge."""
    return h.is_hom


def check_edge_surjective(h: GraphHom) -> bool:
    if not h.is_hom:
        raise NotAHomomorphismError("edge surjectivity is only defined for homomorphisms")
    return h.edge_surjective


def check_plus_directional(h: GraphHom) -> bool:
    if not h.is_hom:
        raise NotAHomomorphismError("+directionality is only defined for homomorphisms")
    return h.plus_directional


def check_bidirectional(h: GraphHom) -> bool:
    if not h.is_hom:
        raise NotAHomomorphismError("bidirectionality is only defined for homomorphisms")
    return h.bidirectional


def compose(homs) -> GraphHom:
    """Compose a chain [h1, h2, ..., hk] as h1 o h2 o ... o hk.

    The last element is applied first, so consecutive entries must satisfy
    ``homs[i].source == homs[i+1].target``.
    """
    homs = list(homs)
    if not homs:
        raise ValueError("cannot compose an empty chain")
    for a, b in zip(homs, homs[1:]):
        if a.source != b.target:
            raise ValueError(f"chain mismatch between {a!r} and {b!r}")
    innermost = homs[-1]
    mapping = {}
    for v in innermost.source.vertices:
        x = v
        for h in reversed(homs):
            x = h.mapping[x]
        mapping[v] = x
    name = "*".join(h.name or "h" for h in homs)
    return GraphHom(innermost.source, homs[0].target, mapping, name=name)


@dataclass(frozen=True)
class CoveringSequence:
    """Levels 0..N with one hom per step down; level 0 is the singleton.

    ``homs[i]`` maps ``levels[i+1]`` to ``levels[i]``.  ``anchors`` holds
    optional per-level pinned anchor vertices (as parsed from files).
    """

    levels: tuple
    homs: tuple
    anchors: dict = field(default_factory=dict)
    name: str = "covering"

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "homs", tuple(self.homs))
        if len(self.homs) != len(self.levels) - 1:
            raise ValueError("need exactly one hom per consecutive level pair")
        for i, h in enumerate(self.homs):
            if h.source != self.levels[i + 1] or h.target != self.levels[i]:
                raise ValueError(f"hom {i} does not map level {i + 1} to level {i}")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def level(self, n: int) -> DirectedGraph:
        return self.levels[n]

    def phi(self, n: int) -> GraphHom:
        """The hom from level n down to level n-1 (n >= 1)."""
        return self.homs[n - 1]

    def phi_between(self, m: int, n: int) -> GraphHom:
        """The composite from level m down to level n (m >= n)."""
        if m == n:
            return identity_hom(self.levels[m])
        return compose([self.homs[i] for i in range(n, m)])


@dataclass(frozen=True)
class LevelCheck:
    level: int
    hom_name: str
    surjective: bool
    is_cover: bool
    bidirectional: bool
    irreducible: bool
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.surjective and self.is_cover and self.irreducible


@dataclass(frozen=True)
class CoveringReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def chain_transitive(self) -> bool:
        return all(c.irreducible for c in self.checks)

    @property
    def bidirectional(self) -> bool:
        return all(c.bidirectional for c in self.checks if c.level > 0)

    def render(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(
                f"level {c.level}: surjective={'ok' if c.surjective else 'FAIL'} "
                f"cover={'ok' if c.is_cover else 'FAIL'} "
                f"bidirectional={'yes' if c.bidirectional else 'no'} "
                f"irreducible={'yes' if c.irreducible else 'NO'}"
                + (f"  [{c.hom_name}] {c.detail}" if c.detail else ""))
        lines.append(f"chain_transitive={'yes' if self.chain_transitive else 'NO'}")
        lines.append(f"overall={'ok' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def validate_covering(c: CoveringSequence) -> CoveringReport:
    """Check every level and hom of a covering; never raises.

    Reports, per level: the surjective-relation check, whether the hom
    into the previous level is a cover, its bidirectionality, and
    irreducibility.  Chain transitivity is the conjunction of the
    per-level irreducibility results.
    """
    checks = []
    g0 = c.levels[0]
    base_ok = (len(g0) == 1 and len(g0.edges) == 1)
    checks.append(LevelCheck(
        level=0, hom_name="", surjective=validate_surjective(g0).ok and base_ok,
        is_cover=True, bidirectional=True,
        irreducible=g0.is_strongly_connected(),
        detail="" if base_ok else "level 0 must be the singleton loop"))
    for n in range(1, len(c.levels)):
        g = c.levels[n]
        h = c.homs[n - 1]
        surj = validate_surjective(g)
        detail = ""
        if not surj.ok:
            detail = f"missing in-edges {surj.no_incoming[:3]}, out-edges {surj.no_outgoing[:3]}"
        elif not h.is_cover:
            why = []
            if not h.is_hom:
                why.append("not a homomorphism")
            else:
                if not h.edge_surjective:
                    why.append("not edge-surjective")
                if not h.plus_directional:
                    why.append("out-neighbour images differ")
            detail = ", ".join(why)
        irr = surj.ok and g.is_strongly_connected()
        checks.append(LevelCheck(
            level=n, hom_name=h.name or f"phi_{n}", surjective=surj.ok,
            is_cover=h.is_cover, bidirectional=h.is_hom and h.bidirectional,
            irreducible=irr, detail=detail))
    return CoveringReport(tuple(checks))
