import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_crossings
from sgi import catalog as cat
from sgi import epsilon as ep
from sgi import families as fam
from sgi import moves as mv
from sgi.diagram import Crossing, Diagram, pairwise_linking
from sgi.graph import ParseError
from sgi.invariants import reduced_invariant, wu_invariant

GRAPH_TABLES = [("K5", ()), ("K33", ()), ("K7", ()), ("K6-sec5", ()), ("K6-ex27", ()), ("Heawood", ()),
                ("Mobius", (5,)), ("Mobius3-simon", ()), ("2K3", ())]


def canonical(d):
    """Crossings described by strand ranks instead of raw positions."""
    order = d.strand_order()
    rank = {(e, p): r for e, seq in order.items() for r, (p, _, _) in enumerate(seq)}
    return Counter((c.over, rank[(c.over, c.over_pos)], c.under, rank[(c.under, c.under_pos)], c.sign)
                   for c in d.crossings)


def pair_sign_multiset(d):
    return Counter((frozenset((c.over, c.under)), c.sign) for c in d.crossings)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GRAPH_TABLES), st.integers(0, 10 ** 6), st.integers(0, 30))
def test_every_isotopy_step_preserves_invariants(table, seed, n):
    t = ep.builtin_epsilon(table[0], *table[1])
    start = random_crossings(t.graph, n, random.Random(seed))
    v0, w0 = reduced_invariant(start, t), wu_invariant(start)
    d, log = mv.random_walk(start, 60, seed)
    cur = start
    for m in log:
        cur = mv.apply(cur, m)
        assert reduced_invariant(cur, t) == v0, str(m)
        assert wu_invariant(cur) == w0, str(m)
    assert cur == d


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_crossing_change_changes_one_entry_by_two(seed):
    t = ep.builtin_epsilon("K7")
    d = random_crossings(t.graph, 20, random.Random(seed), allow_self=False)
    rng = random.Random(seed)
    c = d.crossings[rng.randrange(len(d))]
    order = d.strand_order()[c.over]
    r = next(i for i, (p, _, _) in enumerate(order) if p == c.over_pos)
    d2 = mv.apply(d, mv.Move("CC", (t.graph.edges[c.over].label, r)))
    before, after = pairwise_linking(d).values, pairwise_linking(d2).values
    diff = [(k, b - a) for k, (a, b) in enumerate(zip(before, after)) if a != b]
    if t.graph.disjoint(c.over, c.under):
        assert len(diff) == 1 and diff[0][1] == -2 * c.sign
        assert reduced_invariant(d2, t) - reduced_invariant(d, t) == -2 * c.sign * t(c.over, c.under)
    else:
        assert diff == []
    assert (reduced_invariant(d2, t) - reduced_invariant(d, t)) % 2 == 0


def test_r2_roundtrip():
    d = cat.k7_standard()
    g = d.graph
    m = mv.Move("R2+", ("x3", 0, "z5", 1, 1))
    d2 = mv.apply(d, m)
    assert len(d2) == len(d) + 2
    back = mv.apply(d2, mv.Move("R2-", ("x3", 0)))
    assert canonical(back) == canonical(d)


def test_r1_roundtrip():
    d = cat.heawood_standard()
    for over_first in (0, 1):
        d2 = mv.apply(d, mv.Move("R1+", ("y3", 1, over_first, -1)))
        assert pairwise_linking(d2).values == pairwise_linking(d).values
        assert canonical(mv.apply(d2, mv.Move("R1-", ("y3", 1)))) == canonical(d)


def test_twist_never_touches_disjoint_pairs():
    d = cat.k7_standard()
    g = d.graph
    for v in g.vertices:
        inc = g.incident[v]
        d2 = mv.apply(d, mv.Move("T+", (v, g.edges[inc[0]].label, g.edges[inc[1]].label, 1)))
        assert pairwise_linking(d2).values == pairwise_linking(d).values
        sites = mv.deletion_sites(d2, "T-")
        assert sites
        assert any(canonical(mv.apply(d2, s)) == canonical(d) for s in sites)


def test_k7_vertex_slide():
    d = cat.k7_standard()
    g = d.graph
    t = ep.builtin_epsilon("K7")
    x4 = g.edge("x4")
    for v in g.vertices:
        if v in x4.ends:
            continue
        for over in (0, 1):
            for s in (1, -1):
                d2 = mv.apply(d, mv.Move("S+", ("x4", v, 0, over, s)))
                assert len(d2) - len(d) == 6
                assert reduced_invariant(d2, t) == reduced_invariant(d, t) == 35
                new = [c for c in d2.crossings if x4.id in (c.over, c.under)]
                assert len(new) == 6
                for c in new:
                    k = c.under if c.over == x4.id else c.over
                    away = 1 if g.edges[k].tail == v else -1
                    assert (c.sign == s * away) if c.over == x4.id else (c.sign == -s * away)
                back = [m for m in mv.deletion_sites(d2, "S-")]
                assert any(canonical(mv.apply(d2, m)) == canonical(d) for m in back)


def test_slide_signs_split_by_orientation():
    # in the slide the away-pointing edges get one sign and the inward ones the other
    g = fam.build_family("K7")
    d = mv.apply(Diagram(g), mv.Move("S+", ("x4", "v0", 0, 1, 1)))
    signs = {g.edges[c.under].label: c.sign for c in d.crossings}
    for lab, s in signs.items():
        assert s == (1 if g.edge(lab).tail == "v0" else -1)


def _r3_diagram():
    """Three edges of K7 crossing pairwise at consecutive ranks: a triangle."""
    g = fam.build_family("K7")
    a, b, c = g.index["z1"], g.index["y4"], g.index["x6"]
    cr = (Crossing(a, 0, b, 0, 1), Crossing(a, 1, c, 0, -1), Crossing(b, 1, c, 1, 1))
    return Diagram(g, cr)


def test_r3_permutes_positions_only():
    d = _r3_diagram()
    sites = mv.r3_sites(d)
    assert sites
    for m in sites:
        d2 = mv.apply(d, m)
        assert pair_sign_multiset(d2) == pair_sign_multiset(d)
        assert canonical(d2) != canonical(d)
        # doing it again restores the original order
        assert any(canonical(mv.apply(d2, m2)) == canonical(d) for m2 in mv.r3_sites(d2))


@pytest.mark.parametrize("move", [
    mv.Move("R1-", ("z1", 0)),
    mv.Move("R2-", ("z1", 0)),
    mv.Move("R3", ("z1", 0, "z1", 1, "z2", 0)),
    mv.Move("T-", ("z1", 0)),
    mv.Move("S-", ("z1", 0, "v3")),
    mv.Move("S+", ("x4", "v3", 0, 1, 1)),
    mv.Move("T+", ("v0", "x1", "x1", 1)),
    mv.Move("R2+", ("x1", 0, "x1", 0, 1)),
    mv.Move("R1+", ("x1", 99, 0, 1)),
    mv.Move("R1+", ("x1", 0, 0, 2)),
    mv.Move("R1+", ("nope", 0, 0, 1)),
    mv.Move("CC", ("x1", 0)),
    mv.Move("XX", ()),
])
def test_inapplicable_moves_raise(move):
    with pytest.raises(mv.MoveError):
        mv.apply(cat.k7_standard(), move)


def test_r2_delete_needs_opposite_signs():
    g = fam.build_family("K5")
    d = Diagram(g, (Crossing(0, 0, 2, 0, 1), Crossing(0, 1, 2, 1, 1)))
    with pytest.raises(mv.MoveError):
        mv.apply(d, mv.Move("R2-", ("e1", 0)))
    assert mv.deletion_sites(d, "R2-") == []


def test_walk_is_deterministic_and_replayable():
    d = cat.mobius_one_crossing(2)
    a, log_a = mv.random_walk(d, 300, 11)
    b, log_b = mv.random_walk(d, 300, 11)
    assert a == b and log_a == log_b
    assert mv.replay(d, mv.parse_log(mv.format_log(log_a))) == a
    c, _ = mv.random_walk(d, 300, 12)
    assert c != a


def test_walk_zero_steps_and_errors():
    d = cat.mobius_one_crossing(2)
    assert mv.random_walk(d, 0, 5) == (d, [])
    with pytest.raises(mv.MoveError):
        mv.random_walk(d, -1, 0)


def test_walk_uses_every_kind():
    _, log = mv.random_walk(cat.k7_standard(), 600, 1)
    assert set(m.kind for m in log) == set(mv.ISOTOPY_KINDS)


def test_walk_with_crossing_changes_keeps_parity():
    t = ep.builtin_epsilon("K7")
    _, log = mv.random_walk(cat.k7_standard(), 200, 2, kinds=mv.ALL_KINDS)
    assert any(m.kind == "CC" for m in log)
    cur = cat.k7_standard()
    for m in log:
        cur = mv.apply(cur, m)
        assert reduced_invariant(cur, t) % 2 == 1


def test_walk_survives_renumbering():
    # many insertions into one slot exhaust the position gaps
    d = cat.hopf_2k3(1)
    for _ in range(40):
        d = mv.apply(d, mv.Move("R1+", ("e1", 1, 1, 1)))
    assert len(d) == 42
    assert reduced_invariant(d, ep.builtin_epsilon("2K3")) == 2


@pytest.mark.parametrize("text,line", [
    ("R1+ e1 0 1\n", 1),
    ("R9 e1\n", 1),
    ("R1- e1 0\nR1+ e1 x 0 1\n", 2),
])
def test_parse_log_errors(text, line):
    with pytest.raises(ParseError) as info:
        mv.parse_log(text)
    assert info.value.lineno == line


def test_log_format():
    m = mv.Move("S+", ("x4", "v0", 0, 1, -1))
    assert str(m) == "S+ x4 v0 0 1 -1"
    assert mv.parse_log("# comment\n" + str(m) + "\n") == [m]
