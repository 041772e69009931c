from collections import deque

import pytest

from oracles import delta_rows
from sgi import epsilon as ep
from sgi import families as fam
from sgi.graph import GraphError, ParseError

ALL_BUILTINS = [("2K3",), ("K5",), ("K33",), ("K6-ex27",), ("K6-sec5",), ("K7",), ("Heawood",),
                ("Mobius", 5), ("Mobius", 7), ("Mobius", 9), ("Mobius3-simon",)]


def _kills_deltas(t):
    g = t.graph
    val = {frozenset(k): v for k, v in t.items()}
    return all(sum(c * val[k] for k, c in row.items()) == 0 for row in delta_rows(g))


@pytest.mark.parametrize("key", ALL_BUILTINS)
def test_builtins_are_homomorphisms(key):
    t = ep.builtin_epsilon(*key)
    assert ep.verify_homomorphism(t)
    assert _kills_deltas(t)


@pytest.mark.parametrize("key,m", [(("K5",), 1), (("K7",), 1), (("K6-sec5",), 1), (("K6-ex27",), 3),
                                   (("Heawood",), 5), (("Mobius", 5), 5), (("Mobius", 7), 6)])
def test_m_eps(key, m):
    assert ep.builtin_epsilon(*key).m_eps == m


def test_k5_table():
    t = ep.builtin_epsilon("K5")
    for (a, b), v in t.items():
        kind = {a[0], b[0]}
        assert v == (1 if kind == {"e"} else -1)


def test_k33_table_follows_relations():
    t = ep.builtin_epsilon("K33")
    neg = {frozenset(p) for p in [("b1", "c5"), ("b3", "c1"), ("b2", "c3")]}
    for (a, b), v in t.items():
        assert v == (-1 if frozenset((a, b)) in neg else 1)


def test_k7_table():
    t = ep.builtin_epsilon("K7")
    for (a, b), v in t.items():
        assert v == (-1 if {a[0], b[0]} == {"x", "y"} else 1)


def test_k6_unit_table_classes():
    t = ep.builtin_epsilon("K6-sec5")
    want = {("x", "x"): {1}, ("z", "z"): {1}, ("y", "y"): {-1}, ("x", "y"): {0}, ("y", "z"): {0},
            ("x", "z"): {1, -1}}
    for (a, b), v in t.items():
        assert v in want[tuple(sorted((a[0], b[0])))]


def test_k6_weighted_table_classes():
    t = ep.builtin_epsilon("K6-ex27")
    want = {("x", "x"): {2, 3}, ("z", "z"): {1}, ("y", "y"): {0, -1}, ("x", "y"): {-1}, ("y", "z"): {0},
            ("x", "z"): {1, -1}}
    for (a, b), v in t.items():
        assert v in want[tuple(sorted((a[0], b[0])))]


# -- distance-rule oracles ------------------------------------------------------

def _outer_distance(g):
    """d(a, b) by BFS on the outer cycle: fewest outer edges strictly between."""
    outer_ids = set(g.outer)
    adj = {v: [] for v in g.vertices}
    for k in outer_ids:
        e = g.edges[k]
        adj[e.tail].append(e.head)
        adj[e.head].append(e.tail)

    def vdist(u):
        dist = {u: 0}
        q = deque([u])
        while q:
            v = q.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    q.append(w)
        return dist

    table = {v: vdist(v) for v in g.vertices}
    return lambda a, b: min(table[u][w] for u in a.ends for w in b.ends)


def _joined_by_edge(g, a, b):
    return any(g.edge_between(u, w) is not None and g.edge_between(u, w) not in (a.id, b.id)
               for u in a.ends for w in b.ends)


def _mobius_rule(g, n):
    big_n = (n - 1) // 2
    d = _outer_distance(g)

    def rule(a, b):
        kinds = "".join(sorted(a.label[0] + b.label[0]))
        dist = d(a, b)
        if kinds == "xx":
            if dist % 2 and dist != 2 * big_n - 1:
                return 2
            return -1 if dist == 2 * big_n else 1
        if kinds == "xy":
            return 2 if dist == 1 else 3
        return 2 if dist == 1 else (5 if dist == 2 else 6)
    return rule


def _heawood_rule(g):
    d = _outer_distance(g)

    def rule(a, b):
        kinds = "".join(sorted(a.label[0] + b.label[0]))
        dist = d(a, b)
        if kinds == "xx":
            if dist in (1, 4):
                return 2
            if dist == 3 and _joined_by_edge(g, a, b):
                return -2
            if dist == 5:
                return -2 if _joined_by_edge(g, a, b) else -3
            return 5 if dist == 6 else 1
        if kinds == "xy":
            return {1: 2, 2: 3, 4: 3, 3: -1}[dist]
        return {1: 2, 2: 5}[dist]
    return rule


@pytest.mark.parametrize("n", [5, 7, 9])
def test_mobius_table_matches_distance_rule(n):
    t = ep.builtin_epsilon("Mobius", n)
    g = t.graph
    rule = _mobius_rule(g, n)
    for (i, j), v in zip(g.pairs, t.values):
        assert v == rule(g.edges[i], g.edges[j]), (g.edges[i].label, g.edges[j].label)


def test_heawood_table_matches_distance_rule():
    t = ep.builtin_epsilon("Heawood")
    g = t.graph
    rule = _heawood_rule(g)
    for (i, j), v in zip(g.pairs, t.values):
        assert v == rule(g.edges[i], g.edges[j]), (g.edges[i].label, g.edges[j].label)


def test_mobius_bad_parameters():
    for n in (3, 4, 6):
        with pytest.raises(ep.EpsilonError):
            ep.builtin_epsilon("Mobius", n)
    with pytest.raises(ep.EpsilonError):
        ep.builtin_epsilon("nope")


def test_builtin_for_graph():
    g = fam.build_family("Mobius", 7)
    assert ep.builtin_for_graph("mobius", g).name == "Mobius7"
    with pytest.raises(ep.EpsilonError):
        ep.builtin_for_graph("K5", g)


# -- verification and solving ---------------------------------------------------

def test_verify_reports_witness():
    t = ep.builtin_epsilon("K5")
    broken = ep.EpsilonTable(t.graph, (t.values[0] + 1,) + t.values[1:], "broken")
    res = ep.verify_homomorphism(broken)
    assert not res
    edge, v = res.witness
    assert res.value != 0
    assert v not in t.graph.edge(edge).ends


def test_solve_k5_unique():
    g = fam.build_family("K5")
    sol = ep.solve_epsilon(g, [(("e1", "e3"), 1)])
    assert sol.unique
    assert sol.particular.values == ep.builtin_epsilon("K5").values


def test_solve_inconsistent_and_adjacent():
    g = fam.build_family("K5")
    assert not ep.solve_epsilon(g, [(("e1", "e3"), 1), (("e2", "e4"), 2)]).consistent
    with pytest.raises(ep.EpsilonError):
        ep.solve_epsilon(g, [(("e1", "e2"), 1)])


def test_solve_free_space_rank():
    g = fam.build_family("K7")
    assert ep.solve_epsilon(g, []).rank == 36


def recover_by_pins(t):
    """Pin the table's own values greedily until the solution is unique."""
    g = t.graph
    pins = []
    for (a, b), v in t.items():
        trial = pins + [((a, b), v)]
        sol = ep.solve_epsilon(g, trial)
        assert sol.consistent
        if sol.rank < ep.solve_epsilon(g, pins).rank:
            pins = trial
        if sol.unique:
            return sol.particular, pins
    return None, pins


@pytest.mark.parametrize("name", ["K7", "K6-ex27", "K6-sec5"])
def test_tables_arise_from_solver(name):
    t = ep.builtin_epsilon(name)
    got, pins = recover_by_pins(t)
    assert got is not None and got.values == t.values
    assert len(pins) == ep.solve_epsilon(t.graph, []).rank


def test_unit_table_requires_rank_one():
    with pytest.raises(ep.EpsilonError):
        ep.unit_table(fam.build_family("K6"), ("x1", "x4"))


# -- pullback, combination, decomposition --------------------------------------

def test_identity_pullback():
    t = ep.builtin_epsilon("K7")
    assert ep.pullback_epsilon(fam.identity_embedding(t.graph), t).values == t.values


def test_pullback_zero_on_pairs_adjacent_in_pattern():
    host = fam.build_family("Mobius", 5)
    for emb, tq in ep.mobius_combined_terms(5):
        pb = ep.pullback_epsilon(emb, tq)
        emap = emb.edge_map
        for (i, j), v in zip(host.pairs, pb.values):
            if i not in emap or j not in emap:
                assert v == 0
            elif emap[i][0] == emap[j][0] or not emb.pattern.disjoint(emap[i][0], emap[j][0]):
                assert v == 0


def test_pullbacks_are_homomorphisms():
    terms = ep.k6_k5_terms() + ep.k7_family_terms()[0] + ep.heawood_combined_terms()
    for emb, t in terms:
        assert ep.verify_homomorphism(t)
        assert ep.verify_homomorphism(ep.pullback_epsilon(emb, t)), emb.name


def test_combine():
    t = ep.builtin_epsilon("K5")
    s = ep.combine_epsilons([(2, t), (-1, t)])
    assert s.values == t.values
    assert (t + t).values == t.scaled(2).values


def test_k6_decomposition_grouped():
    terms = ep.k6_k5_terms()
    res = ep.decompose_epsilon(ep.builtin_epsilon("K6-sec5"), terms, ["K5"] * 6)
    assert res.m == 2 and dict(res.groups) == {"K5": 1}
    assert ep.verify_decomposition(res)


def test_k6_weighted_table_not_in_k5_span():
    res = ep.decompose_epsilon(ep.builtin_epsilon("K6-ex27"), ep.k6_k5_terms())
    assert not res.decomposable


def test_k7_decomposition():
    terms, names = ep.k7_family_terms()
    res = ep.decompose_epsilon(ep.builtin_epsilon("K7"), terms, names)
    assert res.m == 3
    assert dict(res.groups) == {"G": 1, "H": 1, "F": 1, "J": -5}


def test_decomposition_argument_checks():
    with pytest.raises(ep.EpsilonError):
        ep.decompose_epsilon(ep.builtin_epsilon("K7"), [])
    terms, names = ep.k7_family_terms()
    with pytest.raises(ep.EpsilonError):
        ep.decompose_epsilon(ep.builtin_epsilon("K7"), terms, names[:-1])


@pytest.mark.parametrize("n", [5, 7, 9])
def test_mobius_combined_is_homomorphism(n):
    assert ep.verify_homomorphism(ep.mobius_combined(n))


def test_heawood_combined_is_homomorphism():
    assert ep.verify_homomorphism(ep.heawood_combined())


# -- file format ------------------------------------------------------------------

@pytest.mark.parametrize("key", ALL_BUILTINS)
def test_format_roundtrip(key):
    t = ep.builtin_epsilon(*key)
    assert ep.parse_epsilon(ep.format_epsilon(t), t.graph).values == t.values
    assert ep.parse_epsilon(ep.format_epsilon(t, skip_zero=False), t.graph).values == t.values


@pytest.mark.parametrize("text,line", [
    ("epsilon K5\ne1 e2 1\n", 2),
    ("epsilon K5\ne1 e9 1\n", 2),
    ("epsilon K5\ne1 e3 x\n", 2),
    ("epsilon K5\ne1 e3 1\n\ne3 e1 2\n", 4),
    ("epsilon K6\n", 1),
    ("eps K5\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        ep.parse_epsilon(text, fam.build_family("K5"))
    assert info.value.lineno == line


def test_table_from_pairs_errors():
    g = fam.build_family("K5")
    with pytest.raises(ep.EpsilonError):
        ep.table_from_pairs(g, {("e1", "e2"): 1})
    with pytest.raises(ep.EpsilonError):
        ep.table_from_pairs(g, {("e1", "q"): 1})
    with pytest.raises(GraphError):
        ep.builtin_epsilon("K5")("e1", "e2")
