"""Explicit construction of the augmented tower.

Each level adjoins to the input graph a loop vertex and two connector
paths; the covering map of the next level sends its first path
positionwise onto the concatenated word

    loop  (path1  cover-walk  path2)^2  path1  (one forward orbit edge)

and its second path onto the mirrored word.  Building the words by
actual walk concatenation keeps this module an independent oracle for
the arithmetic model in ``address``: the two must agree wherever both
exist, and tests hold them to that.
"""
from __future__ import annotations

from dataclasses import dataclass

from .anchors import AnchorData, AnchorError, check_anchor_invariants
from .covering import CoveringSequence, GraphHom
from .graphs import DirectedGraph, Walk, concat_all, edge_covering_walk, singleton_graph
from .providers import BudgetExceededError, CoveringProvider, ExplicitCoveringProvider
from .report import WitnessReport

HUB_ID = ("H",)

DEFAULT_BUDGET = 200_000


def f_id(v) -> tuple:
    return ("F", v)


def p_id(path_id: int, j: int) -> tuple:
    return ("p", path_id, j)


@dataclass(frozen=True)
class EmbeddingLevel:
    """One explicit augmented level: the union graph and its pieces."""

    n: int
    f_graph: DirectedGraph
    graph: DirectedGraph
    p1: Walk        # hub -> forward anchor endpoint, in graph ids
    p2: Walk        # backward anchor endpoint -> hub, in graph ids
    w: Walk         # edge-covering walk between the endpoints, in graph ids

    @property
    def l1(self) -> int:
        return self.p1.length

    @property
    def l2(self) -> int:
        return self.p2.length

    def f_vertices(self) -> tuple:
        return tuple(f_id(v) for v in self.f_graph.vertices)


@dataclass(frozen=True)
class EmbeddingTower:
    """Levels 1..depth of the explicit construction over one input."""

    provider: CoveringProvider
    g0: DirectedGraph
    levels: tuple
    homs: tuple

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> EmbeddingLevel:
        if not 1 <= n <= self.depth:
            raise IndexError(f"level {n} not built (depth {self.depth})")
        return self.levels[n - 1]

    def graph(self, n: int) -> DirectedGraph:
        return self.g0 if n == 0 else self.level(n).graph

    def hom(self, n: int) -> GraphHom:
        """The covering map from level n down to level n-1."""
        return self.homs[n - 1]

    def as_covering(self) -> CoveringSequence:
        levels = (self.g0,) + tuple(l.graph for l in self.levels)
        return CoveringSequence(levels, self.homs, name=f"tower({self.provider.name})")

    def address_vertex(self, tower_addr) -> tuple:
        """Explicit vertex id for an implicit address at a built level."""
        a = tower_addr
        if a.level == 0 or a.kind == "hub":
            return HUB_ID
        if a.kind == "f":
            return f_id(a.vertex)
        return p_id(a.path_id, a.index)


def select_anchor_threads(source, depth: int) -> AnchorData:
    """Coherent anchor walk families for levels 1..depth of the input.

    Accepts a provider (generators answer in closed form) or an explicit
    CoveringSequence (lex-smallest coherent family, honouring any pinned
    anchors).  The returned family is validated against the input maps;
    an incoherent input is reported with its failing level.
    """
    if isinstance(source, CoveringSequence):
        source = ExplicitCoveringProvider(source)
    data = source.anchor_data(depth)
    check_anchor_invariants(source.materialize(depth), data)
    return data


def _path_walk(graph: DirectedGraph, vertices) -> Walk:
    return Walk(graph, tuple(vertices))


def _build_first_level(provider, l11: int, l21: int) -> EmbeddingLevel:
    fg = provider.level_graph(1)
    end1 = provider.fwd_anchor(1, 1)
    end2 = provider.bwd_anchor(1, -1)
    w_f = edge_covering_walk(fg, end1, end2)
    p1_ids = [HUB_ID] + [p_id(1, j) for j in range(1, l11)] + [f_id(end1)]
    p2_ids = [f_id(end2)] + [p_id(2, j) for j in range(1, l21)] + [HUB_ID]
    vertices = set(p1_ids) | set(p2_ids) | {f_id(v) for v in fg.vertices}
    edges = {(HUB_ID, HUB_ID)}
    edges.update(zip(p1_ids, p1_ids[1:]))
    edges.update(zip(p2_ids, p2_ids[1:]))
    edges.update((f_id(u), f_id(v)) for (u, v) in fg.edges)
    graph = DirectedGraph(vertices, edges)
    return EmbeddingLevel(
        n=1, f_graph=fg, graph=graph,
        p1=_path_walk(graph, p1_ids), p2=_path_walk(graph, p2_ids),
        w=_path_walk(graph, tuple(f_id(v) for v in w_f.vertices)))


def _image_words(provider, prev: EmbeddingLevel) -> tuple:
    """The two concatenated image words, as explicit walks in level n."""
    n = prev.n
    g = prev.graph
    loop = Walk(g, (HUB_ID, HUB_ID))
    try:
        fwd_edge = Walk(g, (f_id(provider.fwd_anchor(n, n)),
                            f_id(provider.fwd_anchor(n, n + 1))))
        bwd_edge = Walk(g, (f_id(provider.bwd_anchor(n, -(n + 1))),
                            f_id(provider.bwd_anchor(n, -n))))
    except ValueError as exc:
        raise AnchorError(f"anchor orbit edge missing at level {n}: {exc}") from exc
    block = [prev.p1, prev.w, prev.p2]
    word1 = concat_all([loop] + block + block + [prev.p1, fwd_edge])
    word2 = concat_all([bwd_edge, prev.p2] + block + block + [loop])
    return word1, word2


def build_level(provider, prev: EmbeddingLevel,
                budget: int = DEFAULT_BUDGET) -> tuple:
    """Build level n+1 above `prev` and the covering map between them.

    Returns (EmbeddingLevel, GraphHom).  Raises BudgetExceededError before
    materializing anything too large, and AnchorError when the anchor
    family is incoherent with the input maps.
    """
    n = prev.n
    word1, word2 = _image_words(provider, prev)
    l1n, l2n = word1.length, word2.length
    predicted = (l1n - 1) + (l2n - 1) + 1 + provider.vertex_count(n + 1)
    if predicted > budget:
        raise BudgetExceededError(
            f"level {n + 1} would have {predicted} vertices, budget {budget}")

    fg = provider.level_graph(n + 1)
    end1 = provider.fwd_anchor(n + 1, n + 1)
    end2 = provider.bwd_anchor(n + 1, -(n + 1))
    if provider.map_down(n + 1, end1) != provider.fwd_anchor(n, n + 1):
        raise AnchorError(f"forward anchor family incoherent at level {n + 1}")
    if provider.map_down(n + 1, end2) != provider.bwd_anchor(n, -(n + 1)):
        raise AnchorError(f"backward anchor family incoherent at level {n + 1}")

    p1_ids = [HUB_ID] + [p_id(1, j) for j in range(1, l1n)] + [f_id(end1)]
    p2_ids = [f_id(end2)] + [p_id(2, j) for j in range(1, l2n)] + [HUB_ID]
    vertices = set(p1_ids) | set(p2_ids) | {f_id(v) for v in fg.vertices}
    edges = {(HUB_ID, HUB_ID)}
    edges.update(zip(p1_ids, p1_ids[1:]))
    edges.update(zip(p2_ids, p2_ids[1:]))
    edges.update((f_id(u), f_id(v)) for (u, v) in fg.edges)
    graph = DirectedGraph(vertices, edges)

    w_f = edge_covering_walk(fg, end1, end2)
    level = EmbeddingLevel(
        n=n + 1, f_graph=fg, graph=graph,
        p1=_path_walk(graph, p1_ids), p2=_path_walk(graph, p2_ids),
        w=_path_walk(graph, tuple(f_id(v) for v in w_f.vertices)))

    mapping = {HUB_ID: HUB_ID}
    for v in fg.vertices:
        mapping[f_id(v)] = f_id(provider.map_down(n + 1, v))
    for j in range(1, l1n):
        mapping[p_id(1, j)] = word1[j]
    for j in range(1, l2n):
        mapping[p_id(2, j)] = word2[j]
    # the path endpoints are input vertices; their images must agree with
    # the word ends, else the map would not be well-defined
    if mapping[f_id(end1)] != word1[l1n]:
        raise AnchorError(f"path-1 endpoint image mismatch at level {n + 1}")
    if mapping[f_id(end2)] != word2[0]:
        raise AnchorError(f"path-2 endpoint image mismatch at level {n + 1}")
    hom = GraphHom(graph, prev.graph, mapping, name=f"phi_{n + 1}")
    return level, hom


def build_embedding(provider: CoveringProvider, max_level: int,
                    l11: int = 1, l21: int = 1,
                    budget: int = DEFAULT_BUDGET) -> EmbeddingTower:
    """Explicit tower for levels 1..max_level over a chain-transitive input."""
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    if l11 < 1 or l21 < 1:
        raise ValueError("initial path lengths must be >= 1")
    provider.check_level(max_level)
    if not provider.is_irreducible(1):
        raise ValueError("input covering is not chain transitive at level 1")
    g0 = singleton_graph(HUB_ID)
    first = _build_first_level(provider, l11, l21)
    levels = [first]
    homs = [GraphHom(first.graph, g0, {v: HUB_ID for v in first.graph.vertices},
                     name="phi_1")]
    while len(levels) < max_level:
        if not provider.is_irreducible(len(levels) + 1):
            raise ValueError(f"input level {len(levels) + 1} is not irreducible")
        level, hom = build_level(provider, levels[-1], budget=budget)
        levels.append(level)
        homs.append(hom)
    return EmbeddingTower(provider=provider, g0=g0,
                          levels=tuple(levels), homs=tuple(homs))


def _local_image_sets(hom: GraphHom, vertex) -> tuple:
    """Images of the out- and in-neighbourhoods of one vertex."""
    g = hom.source
    out_images = {hom(w) for w in g.successors(vertex)}
    in_images = {hom(w) for w in g.predecessors(vertex)}
    return out_images, in_images


def verify_construction(tower: EmbeddingTower, mode: str = "relaxed") -> WitnessReport:
    """Certify that every built map is a cover, with the critical vertices.

    For each level the three vertices that need care are the loop vertex
    and the two path endpoints; the report records, per level, the global
    cover flags, the loop-vertex certificate (all three incident edges
    map to the previous loop), the local image agreement at both
    endpoints, and the minimum preimage count.
    """
    rep = WitnessReport(claim="well-defined", level=tower.depth, mode=mode,
                        verdict=True, params={"levels": tower.depth})
    want_bidi = tower.provider.bidirectional
    for n in range(1, tower.depth + 1):
        hom = tower.hom(n)
        level = tower.level(n)
        ok = hom.is_cover
        if want_bidi:
            ok = ok and hom.bidirectional
        rep.add(f"cover_{n}", 1 if hom.is_cover else 0)
        rep.add(f"bidirectional_{n}", 1 if hom.bidirectional else 0)
        if not ok:
            rep.verdict = False
            bad = _first_offender(hom)
            if bad is not None:
                rep.add(f"bad_{n}_{_vertex_tag(bad)}", 1)
            continue

        prev_loop = (HUB_ID, HUB_ID)
        hub_edges = [(HUB_ID, HUB_ID),
                     (level.p1[0], level.p1[1]),
                     (level.p2[-2], level.p2[-1])]
        to_loop = sum(1 for (u, v) in hub_edges if (hom(u), hom(v)) == prev_loop)
        rep.add(f"hub_edges_to_loop_{n}", to_loop)
        if to_loop != 3:
            rep.verdict = False

        for tag, vertex in (("fwd", level.p1[-1]), ("bwd", level.p2[0])):
            out_images, in_images = _local_image_sets(hom, vertex)
            good = len(out_images) == 1 and (not want_bidi or len(in_images) == 1)
            rep.add(f"{tag}_endpoint_ok_{n}", 1 if good else 0)
            if not good:
                rep.verdict = False

        if n >= 2:
            counts = {}
            for v in hom.source.vertices:
                counts[hom(v)] = counts.get(hom(v), 0) + 1
            least = min(counts.get(v, 0) for v in hom.target.vertices)
            rep.add(f"min_preimages_{n}", least)
            if least < 2:
                rep.verdict = False
    return rep


def _vertex_tag(v) -> str:
    if v == HUB_ID:
        return "H"
    if v[0] == "F":
        return f"F:{v[1]}"
    return f"p{v[1]}:{v[2]}"


def _first_offender(hom: GraphHom):
    """A vertex witnessing why the map fails the cover conditions."""
    g = hom.source
    for (u, v) in g.edges:
        if not hom.target.has_edge(hom(u), hom(v)):
            return u
    for v in g.vertices:
        if len({hom(w) for w in g.successors(v)}) > 1:
            return v
    image_edges = {(hom(u), hom(v)) for (u, v) in g.edges}
    for e in hom.target.edges:
        if e not in image_edges:
            return e[0]
    return None
