"""Anchor threads: coherent forward/backward orbit walks through a covering.

The augmented construction needs, at every level n >= 1, a forward walk
of length n+1 and a backward walk of length n+1 in the input level graph,
chosen so that applying the covering map sends the level-(n+1) walks
entrywise onto the level-n walks at matching orbit positions.  Generator
inputs supply these in closed form; file-backed coverings get the
lexicographically smallest coherent family, found by backtracking.
"""
from __future__ import annotations

from dataclasses import dataclass

from .covering import CoveringSequence


class AnchorError(ValueError):
    """No coherent anchor family exists, or a supplied one is incoherent."""


@dataclass(frozen=True)
class AnchorData:
    """Walk families for levels 1..depth.

    ``forward[n-1]`` is the tuple (v at orbit position 0, ..., position n+1)
    in level n; ``backward[n-1]`` is (position -(n+1), ..., position 0).
    The last forward entry and the first backward entry are the one-step
    extension vertices.
    """

    forward: tuple
    backward: tuple

    @property
    def depth(self) -> int:
        return len(self.forward)

    def fwd_entry(self, n: int, i: int):
        """Vertex at forward orbit position i of level n, 0 <= i <= n+1."""
        if not (0 <= i <= n + 1):
            raise IndexError(f"forward position {i} out of range at level {n}")
        return self.forward[n - 1][i]

    def bwd_entry(self, n: int, i: int):
        """Vertex at backward orbit position i of level n, -(n+1) <= i <= 0."""
        if not (-(n + 1) <= i <= 0):
            raise IndexError(f"backward position {i} out of range at level {n}")
        return self.backward[n - 1][i + n + 1]

    def anchor_pair(self, n: int) -> tuple:
        return self.fwd_entry(n, 0), self.bwd_entry(n, 0)


def check_anchor_invariants(seq: CoveringSequence, anchors: AnchorData) -> None:
    """Raise AnchorError unless the family is coherent over the covering."""
    depth = anchors.depth
    if depth > seq.depth:
        raise AnchorError("anchor family deeper than the covering")
    for n in range(1, depth + 1):
        g = seq.level(n)
        fwd = anchors.forward[n - 1]
        bwd = anchors.backward[n - 1]
        if len(fwd) != n + 2 or len(bwd) != n + 2:
            raise AnchorError(f"level {n}: walk families must have length {n + 1}")
        for walk, tag in ((fwd, "forward"), (bwd, "backward")):
            for a, b in zip(walk, walk[1:]):
                if not g.has_edge(a, b):
                    raise AnchorError(f"level {n} {tag} family: ({a!r},{b!r}) is not an edge")
        if n > 1:
            phi = seq.phi(n)
            prev_fwd = anchors.forward[n - 2]
            prev_bwd = anchors.backward[n - 2]
            for i in range(n + 1):
                if phi(fwd[i]) != prev_fwd[i]:
                    raise AnchorError(
                        f"forward coherence fails at level {n} position {i}: "
                        f"{phi(fwd[i])!r} != {prev_fwd[i]!r}")
            for i in range(n + 1):
                # backward position of bwd[-(i+1)] is -i; compare suffixes
                if phi(bwd[-(i + 1)]) != prev_bwd[-(i + 1)]:
                    raise AnchorError(
                        f"backward coherence fails at level {n} position {-i}: "
                        f"{phi(bwd[-(i + 1)])!r} != {prev_bwd[-(i + 1)]!r}")


def _lift_candidates(g, phi, images, first_free):
    """All walks in g of length len(images)+first_free-1 whose mapped prefix
    equals ``images``; ``first_free`` extra unconstrained steps at the end.

    Yields tuples in lexicographic order.
    """
    preimages = {}
    for v in g.vertices:
        preimages.setdefault(phi(v), []).append(v)

    def extend(prefix, k):
        if k == len(images) + first_free:
            yield tuple(prefix)
            return
        if k < len(images):
            candidates = [v for v in preimages.get(images[k], ())
                          if not prefix or g.has_edge(prefix[-1], v)]
        else:
            candidates = list(g.successors(prefix[-1]))
        for v in candidates:
            prefix.append(v)
            yield from extend(prefix, k + 1)
            prefix.pop()

    yield from extend([], 0)


def select_lexmin_families(seq: CoveringSequence, depth: int,
                           pinned: dict | None = None) -> AnchorData:
    """Backtracking search for the lex-smallest coherent anchor family.

    ``pinned`` maps level -> (v1, v2) forcing the forward walk to start at
    v1 and the backward walk to end at v2.  Raises AnchorError when no
    coherent family satisfies the pins.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if depth > seq.depth:
        raise AnchorError(f"covering has {seq.depth} levels, requested depth {depth}")
    pinned = pinned or {}

    def ok_pin(walk, n, side):
        pin = pinned.get(n)
        if pin is None:
            return True
        v1, v2 = pin
        return walk[0] == v1 if side == "fwd" else walk[-1] == v2

    def search(side):
        # walks[n-1] has length n+1 (n+2 entries); coherence couples the
        # shared orbit positions of consecutive levels.
        chosen = []

        def images_for(walk_next_level, n):
            phi = seq.phi(n + 1)
            return tuple(phi(v) for v in walk_next_level)

        def candidates(n):
            g = seq.level(n)
            phi = seq.phi(n)
            if n == 1:
                # free walks of length 2
                for a in g.vertices:
                    for b in g.successors(a):
                        for c in g.successors(b):
                            yield (a, b, c)
            else:
                prev = chosen[n - 2]
                if side == "fwd":
                    # positions 0..n constrained onto prev, one free step after
                    yield from _lift_candidates(g, phi, prev, 1)
                else:
                    # positions -(n+1)..0: one free step before the constrained suffix
                    for walk in _lift_candidates_rev(g, phi, prev):
                        yield walk

        def extend(n):
            if n > depth:
                return True
            for walk in candidates(n):
                if not ok_pin(walk, n, side):
                    continue
                chosen.append(walk)
                if extend(n + 1):
                    return True
                chosen.pop()
            return False

        if not extend(1):
            raise AnchorError(
                f"no coherent {side} anchor family to depth {depth}"
                + (" under the pinned anchors" if pinned else ""))
        return tuple(chosen)

    def _lift_candidates_rev(g, phi, images):
        # walks whose mapped suffix equals ``images``; one free step in front
        preimages = {}
        for v in g.vertices:
            preimages.setdefault(phi(v), []).append(v)

        def extend(prefix, k):
            if k == len(images):
                yield tuple(prefix)
                return
            candidates = [v for v in preimages.get(images[k], ())
                          if not prefix or g.has_edge(prefix[-1], v)]
            for v in candidates:
                prefix.append(v)
                yield from extend(prefix, k + 1)
                prefix.pop()

        for start in g.vertices:
            for rest in extend([], 0):
                if g.has_edge(start, rest[0]):
                    yield (start,) + rest

    forward = search("fwd")
    backward = search("bwd")
    data = AnchorData(forward=forward, backward=backward)
    check_anchor_invariants(seq, data)
    return data
