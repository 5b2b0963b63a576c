"""Implicit vertices of the augmented tower and their arithmetic.

A vertex of the augmented level-n graph is one of: the loop vertex
("hub"), an interior vertex of one of the two connector paths, or a
vertex of the input level graph.  Deep levels are never materialized;
covering maps are evaluated by locating a path index inside the
concatenated image word of the path, using exact integer offsets.  All
indices are Python ints, so levels with path lengths around 5^250 decode
as cheaply as level 2.
"""
from __future__ import annotations

from dataclasses import dataclass

from .providers import BudgetExceededError, CoveringProvider, DepthExceededError

HUB = "hub"
PATH = "path"
INF = "f"


@dataclass(frozen=True, order=True)
class Address:
    """One vertex of an augmented level, in normalized form.

    Construct through an ``ImplicitTower`` so endpoint identifications
    (path index 0 / full length) are applied eagerly and equality is
    syntactic.
    """

    level: int
    kind: str
    path_id: int = 0
    index: int = 0
    vertex: object = None

    def __str__(self) -> str:
        if self.kind == HUB:
            return "H"
        if self.kind == PATH:
            return f"p{self.path_id}:{self.index}"
        return f"F:{self.vertex}"

    @property
    def is_hub(self) -> bool:
        return self.kind == HUB

    @property
    def in_input(self) -> bool:
        return self.kind == INF


@dataclass(frozen=True)
class ThreadPrefix:
    """Compatible coordinates (v_0, ..., v_n) of one point, one per level."""

    entries: tuple

    @property
    def depth(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, i) -> Address:
        return self.entries[i]

    def __str__(self) -> str:
        return " ".join(str(a) for a in self.entries)


# segment kinds inside an image word
_SEG_HUB = "hub"
_SEG_P1 = "p1"
_SEG_P2 = "p2"
_SEG_W = "w"
_SEG_FWD_EDGE = "fe"
_SEG_BWD_EDGE = "be"


class ImplicitTower:
    """Arithmetic model of the augmented tower over one input provider.

    Holds the path-length recurrences, the per-level segment tables of
    both image words, and every operation that works on addresses:
    normalization, neighbour steps, covering-map evaluation, orbit
    prefixes, core-window offsets and the deep-level schedules.
    """

    def __init__(self, provider: CoveringProvider, l11: int = 1, l21: int = 1,
                 consistency_checks: bool = False):
        if l11 < 1 or l21 < 1:
            raise ValueError("initial path lengths must be >= 1")
        self.provider = provider
        self.l11 = l11
        self.l21 = l21
        self.consistency_checks = consistency_checks
        self._lengths = [None, (l11, l21)]  # level -> (l1, l2)
        self._segments = {}

    # -- lengths ---------------------------------------------------------

    def path_lengths(self, n: int) -> tuple:
        """(l1, l2) for level n >= 1, by the image-word recurrences."""
        if n < 1:
            raise ValueError("paths exist from level 1")
        while len(self._lengths) <= n:
            k = len(self._lengths) - 1
            l1, l2 = self._lengths[k]
            lw = self.provider.walk_len(k)
            self._lengths.append((2 + 3 * l1 + 2 * (lw + l2),
                                  2 + 3 * l2 + 2 * (l1 + lw)))
        return self._lengths[n]

    def walk_len(self, n: int) -> int:
        return self.provider.walk_len(n)

    def vertex_count(self, n: int) -> int:
        """Exact size of the augmented level-n graph."""
        if n == 0:
            return 1
        l1, l2 = self.path_lengths(n)
        # hub + interiors of both paths + input vertices
        return (l1 - 1) + (l2 - 1) + 1 + self.provider.vertex_count(n)

    # -- address construction ----------------------------------------------

    def hub(self, n: int) -> Address:
        return Address(level=n, kind=HUB)

    def f_addr(self, n: int, vertex) -> Address:
        if n == 0:
            return self.hub(0)
        return Address(level=n, kind=INF, vertex=vertex)

    def path_addr(self, n: int, path_id: int, index: int) -> Address:
        """Normalized path address; endpoints collapse to hub/input vertices."""
        if n < 1:
            raise ValueError("paths exist from level 1")
        if path_id not in (1, 2):
            raise ValueError("path_id must be 1 or 2")
        l1, l2 = self.path_lengths(n)
        length = l1 if path_id == 1 else l2
        if not 0 <= index <= length:
            raise IndexError(f"path {path_id} index {index} out of [0,{length}] at level {n}")
        if path_id == 1:
            if index == 0:
                return self.hub(n)
            if index == l1:
                return self.f_addr(n, self.provider.fwd_anchor(n, n))
        else:
            if index == 0:
                return self.f_addr(n, self.provider.bwd_anchor(n, -n))
            if index == l2:
                return self.hub(n)
        return Address(level=n, kind=PATH, path_id=path_id, index=index)

    def normalize(self, a: Address) -> Address:
        if a.kind == PATH:
            return self.path_addr(a.level, a.path_id, a.index)
        if a.level == 0:
            return self.hub(0)
        return a

    def parse_address(self, n: int, text: str) -> Address:
        """Parse 'H', 'p1:<j>', 'p2:<j>' or 'F:<vertex>' at level n."""
        if text == "H":
            return self.hub(n)
        if text.startswith("p1:") or text.startswith("p2:"):
            pid = int(text[1])
            idx = int(text[3:])
            return self.path_addr(n, pid, idx)
        if text.startswith("F:"):
            raw = text[2:]
            vertex = int(raw) if raw.lstrip("-").isdigit() else raw
            return self.f_addr(n, vertex)
        raise ValueError(f"cannot parse address {text!r}")

    # -- image-word segment tables ------------------------------------------

    def segments(self, level: int, path_id: int) -> tuple:
        """Segment table of the image word of path `path_id` of `level`.

        Entries are (start, length, kind); positions are indices into the
        level-`level` path, values live at level-1 below.  Defined for
        level >= 2 (the level-1 map collapses everything to the root).
        """
        if level < 2:
            raise ValueError("segment tables describe maps between levels >= 2 and below")
        key = (level, path_id)
        cached = self._segments.get(key)
        if cached is not None:
            return cached
        n = level - 1
        l1, l2 = self.path_lengths(n)
        lw = self.provider.walk_len(n)
        if path_id == 1:
            kinds = (_SEG_HUB, _SEG_P1, _SEG_W, _SEG_P2,
                     _SEG_P1, _SEG_W, _SEG_P2, _SEG_P1, _SEG_FWD_EDGE)
            lens = (1, l1, lw, l2, l1, lw, l2, l1, 1)
        else:
            kinds = (_SEG_BWD_EDGE, _SEG_P2, _SEG_P1, _SEG_W,
                     _SEG_P2, _SEG_P1, _SEG_W, _SEG_P2, _SEG_HUB)
            lens = (1, l2, l1, lw, l2, l1, lw, l2, 1)
        table = []
        start = 0
        for kind, ln in zip(kinds, lens):
            table.append((start, ln, kind))
            start += ln
        expect = self.path_lengths(level)[path_id - 1]
        if start != expect:
            raise AssertionError(f"segment table length {start} != l_{path_id},{level} {expect}")
        table = tuple(table)
        self._segments[key] = table
        return table

    def _segment_value(self, n: int, seg_kind: str, offset: int) -> Address:
        if seg_kind == _SEG_HUB:
            return self.hub(n)
        if seg_kind == _SEG_P1:
            return self.path_addr(n, 1, offset)
        if seg_kind == _SEG_P2:
            return self.path_addr(n, 2, offset)
        if seg_kind == _SEG_W:
            return self.f_addr(n, self.provider.walk_pos(n, offset))
        if seg_kind == _SEG_FWD_EDGE:
            return self.f_addr(n, self.provider.fwd_anchor(n, n + offset))
        if seg_kind == _SEG_BWD_EDGE:
            return self.f_addr(n, self.provider.bwd_anchor(n, -(n + 1) + offset))
        raise AssertionError(seg_kind)

    def word_value(self, level: int, path_id: int, position: int) -> Address:
        """Level-(level-1) vertex at `position` of the image word."""
        if level == 1:
            return self.hub(0)
        for (start, length, kind) in self.segments(level, path_id):
            if start <= position <= start + length:
                return self._segment_value(level - 1, kind, position - start)
        l = self.path_lengths(level)[path_id - 1]
        raise IndexError(f"position {position} out of [0,{l}] in image word")

    # -- covering-map evaluation ----------------------------------------------

    def decode_step(self, a: Address) -> Address:
        """Image of a level-(n+1) address at level n."""
        n1 = a.level
        if n1 < 1:
            raise ValueError("level 0 has no level below")
        if n1 == 1:
            return self.hub(0)
        if a.kind == HUB:
            return self.hub(n1 - 1)
        if a.kind == INF:
            return self.f_addr(n1 - 1, self.provider.map_down(n1, a.vertex))
        return self.word_value(n1, a.path_id, a.index)

    def decode(self, a: Address, target: int) -> Address:
        """Iterated map evaluation down to `target`."""
        if target > a.level:
            raise ValueError(f"cannot decode level {a.level} up to {target}")
        while a.level > target:
            a = self.decode_step(a)
        return a

    # -- neighbour structure ---------------------------------------------------

    def step(self, a: Address, direction: int):
        """Out-neighbours (+1) or in-neighbours (-1) of a, as addresses."""
        if direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        n = a.level
        if n == 0:
            return (self.hub(0),)
        l1, l2 = self.path_lengths(n)
        if a.kind == HUB:
            if direction == 1:
                return tuple(sorted({self.hub(n), self.path_addr(n, 1, 1)}))
            return tuple(sorted({self.hub(n), self.path_addr(n, 2, l2 - 1)}))
        if a.kind == PATH:
            nxt = a.index + direction
            return (self.path_addr(n, a.path_id, nxt),)
        # input vertex: input edges, plus path-endpoint incidences
        out = set()
        if direction == 1:
            for w in self.provider.successors(n, a.vertex):
                out.add(self.f_addr(n, w))
            if a.vertex == self.provider.bwd_anchor(n, -n):
                out.add(self.path_addr(n, 2, 1))
        else:
            for w in self.provider.predecessors(n, a.vertex):
                out.add(self.f_addr(n, w))
            if a.vertex == self.provider.fwd_anchor(n, n):
                out.add(self.path_addr(n, 1, l1 - 1))
        return tuple(sorted(out))

    def forward_image(self, a: Address) -> Address:
        """Common image one level down of all out-neighbours of `a`.

        Well-defined because every map in the tower sends all successors
        of a vertex to a single vertex; this is what makes one forward
        application of the dynamics lose exactly one level of a prefix.
        """
        n = a.level
        if n < 1:
            raise ValueError("need level >= 1 to push forward")
        if a.kind == HUB:
            image = self.hub(n - 1)
        elif a.kind == PATH:
            image = self.decode_step(self.path_addr(n, a.path_id, a.index + 1))
        else:
            succ = self.provider.successors(n, a.vertex)[0]
            image = self.decode_step(self.f_addr(n, succ))
        if self.consistency_checks:
            images = {self.decode_step(b) for b in self.step(a, 1)}
            if images != {image}:
                raise AssertionError(f"successor images of {a} disagree: {images}")
        return image

    # -- orbit prefixes -----------------------------------------------------------

    def thread_from(self, a: Address) -> ThreadPrefix:
        """The compatible prefix (decode to every level) ending at `a`."""
        entries = [a]
        while entries[-1].level > 0:
            entries.append(self.decode_step(entries[-1]))
        return ThreadPrefix(tuple(reversed(entries)))

    def push_forward(self, t: ThreadPrefix, steps: int = 1) -> ThreadPrefix:
        """Depth-(n-steps) prefix of the forward orbit; one level lost per step."""
        if steps < 0:
            raise ValueError("steps must be >= 0")
        if steps > t.depth:
            raise ValueError(f"prefix depth {t.depth} cannot absorb {steps} steps")
        for _ in range(steps):
            t = ThreadPrefix(tuple(self.forward_image(t[j + 1]) for j in range(t.depth)))
        return t

    # -- core windows and schedules --------------------------------------------------

    def mid_offset(self, k: int) -> int:
        """Offset of the middle path-1 copy inside the level-k image word."""
        l1, l2 = self.path_lengths(k - 1)
        return 1 + l1 + self.provider.walk_len(k - 1) + l2

    def q_interval(self, m: int, n: int) -> tuple:
        """Index window of the core segment of path 1 at level m over level n.

        Descending from m to n, always select the middle path-1 copy of
        the image word; the window maps positionwise onto the whole
        level-n path 1 and has length l_{1,n}.
        """
        if not m > n >= 1:
            raise ValueError("need m > n >= 1")
        lo = 0
        for k in range(n + 1, m + 1):
            lo += self.mid_offset(k)
        return lo, lo + self.path_lengths(n)[0]

    def strict_schedule(self, n0: int, kmax: int, max_eval_level: int = 2000) -> list:
        """Pairs (n_k, m_k) with m_k the least level above n_k + l_{1,n_k}."""
        if n0 < 1 or kmax < 1:
            raise ValueError("need n0 >= 1 and kmax >= 1")
        pairs = []
        n = n0
        for _ in range(kmax):
            if n > max_eval_level:
                raise DepthExceededError(
                    f"schedule level {n} too deep to evaluate path lengths "
                    f"(cap {max_eval_level})")
            m = n + self.path_lengths(n)[0] + 1
            pairs.append((n, m))
            n = m + 1
        return pairs

    def relaxed_schedule(self, n0: int, kmax: int) -> list:
        """Materialization-friendly pairs: m_1 = n0+2, then m_{k+1} = m_k + 2."""
        if n0 < 1 or kmax < 1:
            raise ValueError("need n0 >= 1 and kmax >= 1")
        pairs = []
        n, m = n0, n0 + 2
        for _ in range(kmax):
            pairs.append((n, m))
            n, m = m + 1, m + 2
        return pairs

    # -- enumeration ------------------------------------------------------------------

    def enumerate_addresses(self, n: int, cap: int = 2_000_000) -> list:
        """Every vertex of the augmented level-n graph, as addresses."""
        if self.vertex_count(n) > cap:
            raise BudgetExceededError(
                f"level {n} has {self.vertex_count(n)} vertices, cap {cap}")
        if n == 0:
            return [self.hub(0)]
        l1, l2 = self.path_lengths(n)
        out = [self.hub(n)]
        out.extend(Address(level=n, kind=PATH, path_id=1, index=j) for j in range(1, l1))
        out.extend(Address(level=n, kind=PATH, path_id=2, index=j) for j in range(1, l2))
        out.extend(self.f_addr(n, v) for v in self.provider.vertices(n))
        return out

    def decoded_row(self, m: int, n: int, lo: int, hi: int, cap: int = 300_000) -> list:
        """decode(path-1 position j, n) for j in [lo, hi]; guarded by cap."""
        if hi - lo + 1 > cap:
            raise BudgetExceededError(f"row of {hi - lo + 1} positions exceeds cap {cap}")
        return [self.decode(self.path_addr(m, 1, j), n) for j in range(lo, hi + 1)]
