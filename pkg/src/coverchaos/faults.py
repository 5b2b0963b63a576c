"""Designed sabotage for every checker, to rule out vacuous passes.

Each wrapper or helper breaks exactly the structure one checker relies
on; the test suite asserts the corresponding checker then reports fail.
None of these are reachable from the normal build or CLI paths.
"""
from __future__ import annotations

from .address import ImplicitTower
from .covering import GraphHom
from .embed import EmbeddingTower, f_id, p_id
from .graphs import DirectedGraph


class ShiftedDecoder(ImplicitTower):
    """Decoder with an off-by-one segment boundary.

    Path positions are read one slot early, so decoded values disagree
    with the canonical targets of pattern, translation, and cover counts.
    """

    def __init__(self, engine: ImplicitTower, delta: int = -1):
        super().__init__(engine.provider, engine.l11, engine.l21)
        self._delta = delta

    def word_value(self, level, path_id, position):
        l = self.path_lengths(level)[path_id - 1]
        shifted = min(max(position + self._delta, 0), l)
        return super().word_value(level, path_id, shifted)


class TruncatedWalkProvider:
    """Provider whose covering walk stalls after its first step.

    The reported walk no longer traverses every input edge, so decoded
    windows miss vertices: the designed fault for density and
    transitivity (visible on inputs with more than one vertex per level).
    """

    def __init__(self, base, cutoff: int = 1):
        self._base = base
        self._cutoff = cutoff
        self.name = base.name + "+truncated-walk"
        self.bidirectional = base.bidirectional
        self.depth = base.depth

    def __getattr__(self, attr):
        return getattr(self._base, attr)

    def walk_pos(self, n, k):
        return self._base.walk_pos(n, min(k, self._cutoff))


def flip_path_image(tower: EmbeddingTower, n: int, j: int = None) -> GraphHom:
    """A copy of the level-n map with one interior path image flipped to the
    loop vertex; the construction checker must name the break."""
    hom = tower.hom(n)
    level = tower.level(n)
    if j is None:
        j = level.l1 // 2
    victim = p_id(1, j)
    if victim not in hom.mapping:
        raise ValueError(f"level {n} has no interior path vertex {j}")
    mapping = dict(hom.mapping)
    from .embed import HUB_ID
    mapping[victim] = HUB_ID if mapping[victim] != HUB_ID else mapping[p_id(1, j + 1)]
    return GraphHom(hom.source, hom.target, mapping, name=hom.name + "+flip")


def add_mismatched_edge(tower: EmbeddingTower, n: int) -> tuple:
    """Level-n graph and map with an extra input-to-path edge whose images
    disagree with the path predecessor; breaks local in-image uniqueness."""
    level = tower.level(n)
    hom = tower.hom(n)
    if level.l1 < 3:
        raise ValueError("need an interior path long enough to attack")
    j = level.l1 // 2
    culprit = f_id(level.f_graph.vertices[0])
    g = DirectedGraph(level.graph.vertices,
                      set(level.graph.edges) | {(culprit, p_id(1, j))})
    tampered = GraphHom(g, hom.target, dict(hom.mapping), name=hom.name + "+edge")
    return g, tampered


def poison_with_input_sample(engine: ImplicitTower, level: int):
    """An input-side address: it can never collapse onto the loop vertex, so
    any common-collapse claim over a sample set containing it is false."""
    v = engine.provider.fwd_anchor(level, 0)
    return engine.f_addr(level, v)


def never_collapsing_pair(engine: ImplicitTower, level: int) -> tuple:
    """The loop thread and an input thread: their traces stay on opposite
    sides of the splitting forever, so no agreement time exists."""
    return engine.hub(level), poison_with_input_sample(engine, level)


def poison_with_tail_sample(engine: ImplicitTower, level: int):
    """A path position close to the end of path 1: positive return-time
    candidates either leave the path or land on different vertices."""
    l1 = engine.path_lengths(level)[0]
    return engine.path_addr(level, 1, l1 - 3)
