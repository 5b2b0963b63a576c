import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverchaos.graphs import (DirectedGraph, NotIrreducibleError, Walk,
                               concat, edge_covering_walk, is_irreducible,
                               singleton_graph, subwalk, validate_surjective)

LOOP = singleton_graph("a")
TWO_CYCLE = DirectedGraph("ab", [("a", "b"), ("b", "a")])
FOUR_CYCLE = DirectedGraph(range(4), [(i, (i + 1) % 4) for i in range(4)])


def reachability_oracle(g):
    """Transitive closure by brute iteration; the independent reference for
    strong connectivity."""
    reach = {v: {v} | set(g.successors(v)) for v in g.vertices}
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            new = set().union(*(reach[w] for w in reach[v]))
            if not new <= reach[v]:
                reach[v] |= new
                changed = True
    return all(u in reach[v] for v in g.vertices for u in g.vertices)


@st.composite
def surjective_graphs(draw, max_vertices=5):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    vs = list(range(n))
    extra = draw(st.sets(st.tuples(st.sampled_from(vs), st.sampled_from(vs))))
    # a random permutation cycle guarantees every vertex has both degrees
    perm = draw(st.permutations(vs))
    base = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
    return DirectedGraph(vs, base | extra)


@st.composite
def walks(draw, graph, min_len=0, max_len=8):
    length = draw(st.integers(min_value=min_len, max_value=max_len))
    v = draw(st.sampled_from(graph.vertices))
    seq = [v]
    for _ in range(length):
        seq.append(draw(st.sampled_from(graph.successors(seq[-1]))))
    return Walk(graph, tuple(seq))


class TestSurjectivity:
    def test_singleton_loop_ok(self):
        assert validate_surjective(LOOP).ok

    def test_missing_degrees_reported(self):
        g = DirectedGraph("ab", [("a", "b")])
        rep = validate_surjective(g)
        assert not rep.ok
        assert rep.no_incoming == ("a",)
        assert rep.no_outgoing == ("b",)

    def test_four_cycle_ok(self):
        # every vertex of a cycle has in- and out-degree exactly one
        rep = validate_surjective(FOUR_CYCLE)
        assert rep.ok
        assert all(FOUR_CYCLE.in_degree(v) == 1 for v in FOUR_CYCLE.vertices)


class TestIrreducibility:
    def test_singleton(self):
        assert is_irreducible(LOOP)

    def test_disjoint_loops(self):
        g = DirectedGraph("ab", [("a", "a"), ("b", "b")])
        assert not is_irreducible(g)

    def test_four_cycle(self):
        assert is_irreducible(FOUR_CYCLE)
        assert reachability_oracle(FOUR_CYCLE)

    def test_rejects_non_surjective(self):
        with pytest.raises(ValueError):
            is_irreducible(DirectedGraph("ab", [("a", "b")]))

    @settings(max_examples=150, deadline=None)
    @given(surjective_graphs())
    def test_agrees_with_oracle(self, g):
        assert is_irreducible(g) == reachability_oracle(g)


class TestWalks:
    def test_concat_loop(self):
        w = Walk(LOOP, ("a", "a"))
        joined = concat(w, w)
        assert joined.vertices == ("a", "a", "a")
        assert joined.length == 2

    def test_concat_two_cycle(self):
        w1 = Walk(TWO_CYCLE, ("a", "b"))
        w2 = Walk(TWO_CYCLE, ("b", "a"))
        assert concat(w1, w2).vertices == ("a", "b", "a")

    def test_concat_lengths_add(self):
        w1 = Walk(FOUR_CYCLE, (0, 1, 2, 3))
        w2 = Walk(FOUR_CYCLE, (3, 0, 1, 2, 3, 0))
        assert concat(w1, w2).length == 3 + 5

    def test_concat_endpoint_mismatch(self):
        with pytest.raises(ValueError):
            concat(Walk(TWO_CYCLE, ("a", "b")), Walk(TWO_CYCLE, ("a", "b")))

    def test_concat_graph_mismatch(self):
        with pytest.raises(ValueError):
            concat(Walk(LOOP, ("a", "a")), Walk(TWO_CYCLE, ("a", "b")))

    def test_subwalk_identity(self):
        w = Walk(FOUR_CYCLE, (0, 1, 2, 3, 0))
        assert subwalk(w, 0, w.length) == w

    def test_subwalk_middle(self):
        w = Walk(TWO_CYCLE, ("a", "b", "a"))
        assert subwalk(w, 1, 2).vertices == ("b", "a")

    def test_subwalk_degenerate(self):
        w = Walk(TWO_CYCLE, ("a", "b", "a"))
        assert subwalk(w, 1, 1).vertices == ("b",)
        assert subwalk(w, 1, 1).length == 0

    def test_subwalk_out_of_range(self):
        w = Walk(TWO_CYCLE, ("a", "b"))
        with pytest.raises(ValueError):
            subwalk(w, 0, 2)
        with pytest.raises(ValueError):
            subwalk(w, -1, 1)

    def test_invalid_walk_rejected(self):
        with pytest.raises(ValueError):
            Walk(FOUR_CYCLE, (0, 2))

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_concat_associative(self, data):
        g = data.draw(surjective_graphs())
        w1 = data.draw(walks(g))
        w2 = data.draw(walks(g))
        w2 = Walk(g, (w1.last,) + w2.vertices[1:]) if w1.last == w2.first else None
        if w2 is None:
            return
        w3 = data.draw(walks(g))
        if w3.first != w2.last:
            return
        assert concat(concat(w1, w2), w3) == concat(w1, concat(w2, w3))

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_subwalk_composition(self, data):
        g = data.draw(surjective_graphs())
        w = data.draw(walks(g, min_len=1))
        a = data.draw(st.integers(0, w.length))
        b = data.draw(st.integers(a, w.length))
        inner = subwalk(w, a, b)
        c = data.draw(st.integers(0, inner.length))
        d = data.draw(st.integers(c, inner.length))
        assert subwalk(inner, c, d) == subwalk(w, a + c, a + d)


class TestEdgeCoveringWalk:
    def test_singleton(self):
        w = edge_covering_walk(LOOP, "a", "a")
        assert w.vertices == ("a", "a")

    def test_two_cycle(self):
        w = edge_covering_walk(TWO_CYCLE, "a", "a")
        assert w.vertices == ("a", "b", "a")

    def test_full_two_vertex_graph(self):
        g = DirectedGraph("ab", [("a", "a"), ("a", "b"), ("b", "b"), ("b", "a")])
        w = edge_covering_walk(g, "a", "b")
        assert w.first == "a" and w.last == "b"
        assert w.edge_set() == set(g.edges)

    def test_deterministic(self):
        g = DirectedGraph("abc", [("a", "b"), ("b", "c"), ("c", "a"), ("a", "c")])
        assert edge_covering_walk(g, "a", "c") == edge_covering_walk(g, "a", "c")

    def test_not_irreducible_rejected(self):
        g = DirectedGraph("ab", [("a", "a"), ("b", "b")])
        with pytest.raises(NotIrreducibleError):
            edge_covering_walk(g, "a", "b")

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_covers_all_edges(self, data):
        g = data.draw(surjective_graphs())
        if not is_irreducible(g):
            return
        u = data.draw(st.sampled_from(g.vertices))
        v = data.draw(st.sampled_from(g.vertices))
        w = edge_covering_walk(g, u, v)
        assert w.first == u and w.last == v
        assert w.edge_set() == set(g.edges)


def test_graph_equality_and_order():
    g1 = DirectedGraph("ba", [("a", "b"), ("b", "a")])
    assert g1 == TWO_CYCLE
    assert g1.vertices == ("a", "b")
    assert g1.edges == (("a", "b"), ("b", "a"))


def test_shortest_path():
    assert FOUR_CYCLE.shortest_path(0, 2) == (0, 1, 2)
    assert FOUR_CYCLE.shortest_path(3, 1) == (3, 0, 1)
    with pytest.raises(NotIrreducibleError):
        DirectedGraph("ab", [("a", "a"), ("b", "b")]).shortest_path("a", "b")


def test_all_pairs_walks_exist_when_irreducible():
    for g in (LOOP, TWO_CYCLE, FOUR_CYCLE):
        for u, v in itertools.product(g.vertices, repeat=2):
            path = g.shortest_path(u, v)
            assert path[0] == u and path[-1] == v
