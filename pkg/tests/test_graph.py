from itertools import combinations

import pytest

from oracles import disjoint_label_pairs
from sgi import families as fam
from sgi.graph import (GraphError, LabeledGraph, ParseError, automorphisms, disjoint_edge_pairs,
                       format_graph, orientation_character, parse_graph)

SIZES = {  # vertices, edges, disjoint pairs
    ("2K3",): (6, 6, 9),
    ("K5",): (5, 10, 15),
    ("K33",): (6, 9, 18),
    ("K6",): (6, 15, 45),
    ("K7",): (7, 21, 105),
    ("Mobius", 5): (10, 15, 75),
    ("Heawood",): (14, 21, 168),
}


@pytest.mark.parametrize("key", list(SIZES))
def test_family_sizes(key):
    g = fam.build_family(*key)
    nv, ne, npairs = SIZES[key]
    assert (len(g.vertices), len(g.edges), len(g.pairs)) == (nv, ne, npairs)
    assert {frozenset(p) for p in disjoint_edge_pairs(g)} == set(disjoint_label_pairs(g))


def test_pairs_lexicographic():
    g = fam.build_family("K5")
    assert list(g.pairs) == sorted(g.pairs)
    assert all(i < j for i, j in g.pairs)


def test_k5_labels_and_orientation():
    g = fam.build_family("K5")
    assert [e.label for e in g.edges] == [f"e{i}" for i in range(1, 6)] + [f"d{i}" for i in range(1, 6)]
    e1, d1 = g.edge("e1"), g.edge("d1")
    assert e1.head == g.edge("e2").tail
    assert d1.tail == e1.tail


def test_family_lookup_errors():
    with pytest.raises(GraphError):
        fam.build_family("Petersen")
    with pytest.raises(GraphError):
        fam.build_family("Mobius")
    with pytest.raises(GraphError):
        fam.build_family("Mobius", 2)


def test_mobius_structure():
    for n in (3, 4, 5, 6, 7):
        g = fam.build_family("Mobius", n)
        cyc = fam.outer_vertices(g)
        assert len(cyc) == 2 * n
        rungs = [g.edges[k] for k in fam.rung_ids(g)]
        assert len(rungs) == n
        for r in rungs:
            i, j = cyc.index(r.tail), cyc.index(r.head)
            assert abs(i - j) == n
        assert all(g.degree(v) == 3 for v in g.vertices)


def test_heawood_is_bipartite_girth_six():
    g = fam.build_family("Heawood")
    assert all(g.degree(v) == 3 for v in g.vertices)
    colour = {g.vertices[0]: 0}
    stack = [g.vertices[0]]
    while stack:
        v = stack.pop()
        for w in g.neighbours(v):
            if w not in colour:
                colour[w] = 1 - colour[v]
                stack.append(w)
            assert colour[w] != colour[v]
    # no 4-cycles: two vertices share at most one neighbour
    for u, v in combinations(g.vertices, 2):
        assert len(set(g.neighbours(u)) & set(g.neighbours(v))) <= 1


def test_connectivity():
    for key in [("K5",), ("K33",), ("K6",), ("K7",), ("Mobius", 5), ("Heawood",)]:
        assert fam.build_family(*key).is_k_connected(3)
    assert not fam.build_family("2K3").is_k_connected(1)


def test_betti():
    assert fam.build_family("K7").betti == 15
    assert fam.build_family("2K3").betti == 2


def test_outer_edge_distance():
    g = fam.build_family("Mobius", 5)
    x = lambda i: g.index[f"x{i}"]
    assert fam.outer_edge_distance(g, x(1), x(2)) == 0
    assert fam.outer_edge_distance(g, x(1), x(3)) == 1
    assert fam.outer_edge_distance(g, x(1), x(6)) == 4


@pytest.mark.parametrize("key,count", [(("K5",), 120), (("K33",), 72), (("K7",), 5040),
                                       (("Mobius", 5), 20), (("Mobius", 7), 28), (("Heawood",), 336)])
def test_automorphism_counts(key, count):
    assert len(automorphisms(fam.build_family(*key))) == count


def _dihedral_oracle(g):
    """Count dihedral maps of the outer cycle that carry edges to edges."""
    cyc = fam.outer_vertices(g)
    n = len(cyc)
    edges = {frozenset(e.ends) for e in g.edges}
    count = 0
    for shift in range(n):
        for flip in (1, -1):
            m = {cyc[i]: cyc[(flip * i + shift) % n] for i in range(n)}
            if {frozenset((m[a], m[b])) for a, b in map(tuple, edges)} == edges:
                count += 1
    return count


@pytest.mark.parametrize("key", [("Heawood",), ("Mobius", 5), ("Mobius", 6)])
def test_outer_constrained_automorphisms_match_dihedral_oracle(key):
    g = fam.build_family(*key)
    autos = automorphisms(g, constraint=g.outer)
    assert len(autos) == _dihedral_oracle(g)


def test_heawood_outer_constrained_count():
    # D7 acting on the chord pattern: 336 automorphisms over 24 Hamiltonian cycles
    g = fam.build_family("Heawood")
    assert len(automorphisms(g, constraint=g.outer)) == 14


def test_automorphisms_form_a_group():
    g = fam.build_family("Mobius", 5)
    autos = automorphisms(g)
    keys = {a.vertex_map for a in autos}
    for a in autos[:8]:
        assert a.inverse().vertex_map in keys
        for b in autos[:8]:
            assert a.compose(b).vertex_map in keys
    ident = [a for a in autos if all(v == w for v, w in a.vertex_map)]
    assert len(ident) == 1


def test_mobius_orientation_character():
    # on odd ladders every outer-preserving automorphism preserves or reverses all edges
    for n in (5, 7):
        g = fam.build_family("Mobius", n)
        ids = [e.id for e in g.edges]
        chars = {orientation_character(a, ids) for a in automorphisms(g, constraint=g.outer)}
        assert chars == {"all-preserved", "all-reversed"}


def test_orientation_character_rejects_non_invariant_subset():
    g = fam.build_family("K5")
    autos = [a for a in automorphisms(g) if a.edge_map[0][0] != 0]
    with pytest.raises(GraphError):
        orientation_character(autos[0], [0])


def test_automorphism_limits():
    big = LabeledGraph.build("big", range(21), [(f"e{i}", i, i + 1) for i in range(20)])
    with pytest.raises(GraphError):
        automorphisms(big)


def test_graph_validation():
    with pytest.raises(GraphError):
        LabeledGraph.build("g", ["a", "b"], [("e", "a", "a")])
    with pytest.raises(GraphError):
        LabeledGraph.build("g", ["a", "b"], [("e", "a", "b"), ("e", "b", "a")])
    with pytest.raises(GraphError):
        LabeledGraph.build("g", ["a", "a"], [])


def test_format_parse_roundtrip():
    for key in SIZES:
        g = fam.build_family(*key)
        assert parse_graph(format_graph(g)) == g


def test_parse_errors_carry_line_numbers():
    text = "graph g\nvertex a\nvertex b\n\nedge e a c\n"
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.lineno == 5
    with pytest.raises(ParseError) as info:
        parse_graph("graph g\nnode a\n")
    assert info.value.lineno == 2
    with pytest.raises(ParseError):
        parse_graph("vertex a\nvertex a\n")


def test_comments_and_blank_lines():
    g = parse_graph("# a triangle\ngraph t\nvertex 1\nvertex 2\nvertex 3\n"
                    "edge a 1 2  # first\nedge b 2 3\nedge c 3 1\nouter a b c\n")
    assert g.name == "t" and len(g.edges) == 3 and g.outer == (0, 1, 2)


def test_delete_rung_and_smooth():
    g = fam.build_family("Mobius", 4)
    for r in fam.rung_ids(g):
        emb = fam.delete_rung_and_smooth(g, r)
        child = emb.pattern
        assert child.name == "Mobius3"
        assert len(child.edges) == 9
        used = [h for path in emb.paths for h, _ in path]
        assert sorted(used) == sorted(k for k in range(len(g.edges)) if k != r)
        # each path is a walk from the child edge's tail to its head
        for path in emb.paths:
            ends = []
            for h, dirn in path:
                he = g.edges[h]
                ends.append((he.tail, he.head) if dirn == 1 else (he.head, he.tail))
            for (_, b), (c, _) in zip(ends, ends[1:]):
                assert b == c
    with pytest.raises(GraphError):
        fam.delete_rung_and_smooth(fam.build_family("Mobius", 5), fam.rung_ids(fam.build_family("Mobius", 5))[0])


def test_spanned_subgraphs_counts():
    assert len(fam.spanned_subgraphs(fam.build_family("K6"), "K5")) == 6
    assert len(fam.spanned_subgraphs(fam.build_family("K7"), "K5")) == 21
    # 2K3 inside K6: split the six vertices into two triples
    assert len(fam.spanned_subgraphs(fam.build_family("K6"), "2K3")) == 10
