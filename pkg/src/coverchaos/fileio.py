"""Covering file parsing/formatting and DOT export.

The covering file is UTF-8 and line oriented: a ``covering <name>``
header, then for each level >= 1 a block

    level <n>
    vertices <id> <id> ...
    edges
    <u> <v>
    ...
    map            (levels >= 2; level 1 maps implicitly to the root)
    <v> -> <u>
    ...
    anchors <v1> <v2>    (optional)
    end

Files written by ``format_covering`` re-parse to an equal sequence.
"""
from __future__ import annotations

from .covering import CoveringSequence, GraphHom
from .graphs import DirectedGraph

ROOT_VERTEX = "v0"


class CoveringParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_covering(text: str) -> CoveringSequence:
    lines = text.splitlines()
    pos = 0

    def peek():
        return lines[pos].split() if pos < len(lines) else None

    def take():
        nonlocal pos
        tokens = lines[pos].split()
        pos += 1
        return tokens

    def skip_blank():
        nonlocal pos
        while pos < len(lines) and not lines[pos].split():
            pos += 1

    skip_blank()
    if peek() is None or peek()[0] != "covering" or len(peek()) != 2:
        raise CoveringParseError(pos + 1, "expected header 'covering <name>'")
    name = take()[1]

    levels = [DirectedGraph([ROOT_VERTEX], [(ROOT_VERTEX, ROOT_VERTEX)])]
    homs = []
    anchors = {}
    expected = 1
    skip_blank()
    while peek() is not None:
        head_line = pos + 1
        tokens = take()
        if tokens[0] != "level" or len(tokens) != 2:
            raise CoveringParseError(head_line, "expected 'level <n>'")
        try:
            n = int(tokens[1])
        except ValueError:
            raise CoveringParseError(head_line, f"bad level number {tokens[1]!r}")
        if n != expected:
            raise CoveringParseError(head_line, f"expected level {expected}, got {n}")

        skip_blank()
        tokens = take() if peek() is not None else None
        if not tokens or tokens[0] != "vertices" or len(tokens) < 2:
            raise CoveringParseError(pos, "expected 'vertices <id> ...'")
        vertices = tokens[1:]
        vset = set(vertices)
        if len(vset) != len(vertices):
            raise CoveringParseError(pos, "duplicate vertex ids")

        skip_blank()
        tokens = take() if peek() is not None else None
        if not tokens or tokens != ["edges"]:
            raise CoveringParseError(pos, "expected 'edges'")
        edges = []
        while True:
            skip_blank()
            tokens = peek()
            if tokens is None:
                raise CoveringParseError(pos + 1, "unterminated edges section")
            if tokens[0] in ("map", "anchors", "end"):
                break
            lineno = pos + 1
            tokens = take()
            if len(tokens) != 2:
                raise CoveringParseError(lineno, f"edge line needs 'u v', got {lines[lineno-1]!r}")
            u, v = tokens
            if u not in vset or v not in vset:
                raise CoveringParseError(lineno, f"edge uses undeclared vertex {u!r} or {v!r}")
            edges.append((u, v))

        mapping = {}
        tokens = peek()
        if tokens and tokens[0] == "map":
            if n == 1:
                raise CoveringParseError(pos + 1, "level 1 maps implicitly; no map section allowed")
            take()
            while True:
                skip_blank()
                tokens = peek()
                if tokens is None:
                    raise CoveringParseError(pos + 1, "unterminated map section")
                if tokens[0] in ("anchors", "end"):
                    break
                lineno = pos + 1
                tokens = take()
                if len(tokens) != 3 or tokens[1] != "->":
                    raise CoveringParseError(lineno, "map line needs '<v> -> <u>'")
                v, _, u = tokens
                if v not in vset:
                    raise CoveringParseError(lineno, f"map source {v!r} not a level-{n} vertex")
                if u not in levels[n - 1]:
                    raise CoveringParseError(lineno, f"map target {u!r} not a level-{n-1} vertex")
                mapping[v] = u
        elif n > 1:
            raise CoveringParseError(pos + 1, f"level {n} needs a map section")

        tokens = peek()
        if tokens and tokens[0] == "anchors":
            lineno = pos + 1
            tokens = take()
            if len(tokens) != 3:
                raise CoveringParseError(lineno, "expected 'anchors <v1> <v2>'")
            if tokens[1] not in vset or tokens[2] not in vset:
                raise CoveringParseError(lineno, "anchor vertices must belong to this level")
            anchors[n] = (tokens[1], tokens[2])

        skip_blank()
        tokens = take() if peek() is not None else None
        if tokens != ["end"]:
            raise CoveringParseError(pos, "expected 'end'")

        try:
            g = DirectedGraph(vertices, edges)
        except ValueError as exc:
            raise CoveringParseError(head_line, str(exc))
        if n == 1:
            mapping = {v: ROOT_VERTEX for v in vertices}
        missing = [v for v in vertices if v not in mapping]
        if missing:
            raise CoveringParseError(head_line, f"map is partial: {missing[:3]}")
        levels.append(g)
        homs.append(GraphHom(g, levels[n - 1], mapping, name=f"phi_{n}"))
        expected += 1
        skip_blank()

    if len(levels) == 1:
        raise CoveringParseError(len(lines), "covering has no levels")
    return CoveringSequence(levels, homs, anchors=anchors, name=name)


def format_covering(seq: CoveringSequence) -> str:
    out = [f"covering {seq.name}"]
    for n in range(1, seq.depth + 1):
        g = seq.level(n)
        out.append(f"level {n}")
        out.append("vertices " + " ".join(str(v) for v in g.vertices))
        out.append("edges")
        out.extend(f"{u} {v}" for (u, v) in g.edges)
        if n > 1:
            hom = seq.phi(n)
            out.append("map")
            out.extend(f"{v} -> {hom(v)}" for v in g.vertices)
        if n in seq.anchors:
            v1, v2 = seq.anchors[n]
            out.append(f"anchors {v1} {v2}")
        out.append("end")
    return "\n".join(out) + "\n"


def _dot_tag(v) -> str:
    if v == ("H",):
        return "H"
    if v[0] == "F":
        return f"F:{v[1]}"
    return f"p{v[1]}:{v[2]}"


def format_dot(tower, n: int) -> str:
    """One DOT digraph for built level n, with stable vertex labels."""
    g = tower.graph(n)
    lines = [f"digraph level{n} {{"]
    for v in g.vertices:
        lines.append(f'  "{_dot_tag(v)}";')
    for (u, v) in g.edges:
        lines.append(f'  "{_dot_tag(u)}" -> "{_dot_tag(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
