"""Builders for the labelled oriented graph families, subgraph embeddings,
and rung deletion on Mobius ladders.

Orientation conventions are frozen here.  Each was checked against the
corresponding epsilon table (see ``epsilon.builtin_epsilon``); where the
obvious cyclic orientation does not make a table a homomorphism, the unique
orientation (up to reversing every edge) that does is used instead.

* ``2K3``: triangles ``e_i = a_i -> a_{i+1}`` and ``d_i = b_i -> b_{i+1}``.
* ``K5``: pentagon ``e_i = r_i -> r_{i+1}``, diagonals ``d_i = r_i -> r_{i+2}``.
* ``K33``: hexagon ``c_i = p_i -> p_{i+1}``; ``b1 = p1 -> p4``,
  ``b2 = p5 -> p2``, ``b3 = p3 -> p6``.
* ``K6``: hexagon ``x_i = w_i -> w_{i+1}``, short diagonals
  ``y_i = w_i -> w_{i+2}``, long diagonals ``z1 = w2 -> w5``,
  ``z2 = w6 -> w3``, ``z3 = w4 -> w1``.
* ``K7``: ``x_i = v_{i-1} -> v_i``, ``y_i = v_{i-1} -> v_{i+1}``,
  ``z_i = v_{i-1} -> v_{i+2}`` (indices mod 7).
* ``Mobius(n)`` and ``Heawood``: the outer cycle alternates,
  ``x_i = u_i -> u_{i+1}`` for odd ``i`` and ``u_{i+1} -> u_i`` for even ``i``,
  so every vertex is a source or a sink of the outer cycle.  Rungs
  ``y_i = {u_i, u_{i+n}}`` and Heawood chords ``y_j = {u_{2j-1}, u_{2j+4}}``
  run from their even-indexed end to their odd-indexed end (for even ``n``
  both ends share a parity and the rung runs ``u_i -> u_{i+n}``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graph import MAX_SEARCH_VERTICES, Edge, GraphError, LabeledGraph

FAMILIES = ("2K3", "K5", "K33", "K6", "K7", "Mobius", "Heawood")


def _cyc(prefix: str, n: int):
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return names, (lambda k: names[(k - 1) % n])


def two_k3() -> LabeledGraph:
    a = ["a1", "a2", "a3"]
    b = ["b1", "b2", "b3"]
    edges = [(f"e{i}", a[i - 1], a[i % 3]) for i in range(1, 4)]
    edges += [(f"d{i}", b[i - 1], b[i % 3]) for i in range(1, 4)]
    return LabeledGraph.build("2K3", a + b, edges)


def k5() -> LabeledGraph:
    vs, r = _cyc("r", 5)
    edges = [(f"e{i}", r(i), r(i + 1)) for i in range(1, 6)]
    edges += [(f"d{i}", r(i), r(i + 2)) for i in range(1, 6)]
    return LabeledGraph.build("K5", vs, edges, [f"e{i}" for i in range(1, 6)])


def k33() -> LabeledGraph:
    vs, p = _cyc("p", 6)
    edges = [(f"c{i}", p(i), p(i + 1)) for i in range(1, 7)]
    edges += [("b1", p(1), p(4)), ("b2", p(5), p(2)), ("b3", p(3), p(6))]
    return LabeledGraph.build("K33", vs, edges, [f"c{i}" for i in range(1, 7)])


def k6() -> LabeledGraph:
    vs, w = _cyc("w", 6)
    edges = [(f"x{i}", w(i), w(i + 1)) for i in range(1, 7)]
    edges += [(f"y{i}", w(i), w(i + 2)) for i in range(1, 7)]
    edges += [("z1", w(2), w(5)), ("z2", w(6), w(3)), ("z3", w(4), w(1))]
    return LabeledGraph.build("K6", vs, edges, [f"x{i}" for i in range(1, 7)])


def k7() -> LabeledGraph:
    vs = [f"v{i}" for i in range(7)]
    edges = []
    for step, star in ((1, "x"), (2, "y"), (3, "z")):
        edges += [(f"{star}{i}", vs[(i - 1) % 7], vs[(i - 1 + step) % 7]) for i in range(1, 8)]
    return LabeledGraph.build("K7", vs, edges, [f"x{i}" for i in range(1, 8)])


def _alternating_cycle(size: int):
    vs, u = _cyc("u", size)
    edges = []
    for i in range(1, size + 1):
        edges.append((f"x{i}", u(i), u(i + 1)) if i % 2 else (f"x{i}", u(i + 1), u(i)))
    return vs, u, edges


def _chord(label: str, u, size: int, i: int, j: int):
    # even-indexed end first
    i0, j0 = (i - 1) % size + 1, (j - 1) % size + 1
    if i0 % 2 == j0 % 2 or i0 % 2 == 0:
        return (label, u(i), u(j))
    return (label, u(j), u(i))


def mobius(n: int) -> LabeledGraph:
    if n < 3:
        raise GraphError("Mobius ladder needs at least 3 rungs")
    vs, u, edges = _alternating_cycle(2 * n)
    edges += [_chord(f"y{i}", u, 2 * n, i, i + n) for i in range(1, n + 1)]
    return LabeledGraph.build(f"Mobius{n}", vs, edges, [f"x{i}" for i in range(1, 2 * n + 1)])


def heawood() -> LabeledGraph:
    vs, u, edges = _alternating_cycle(14)
    edges += [_chord(f"y{j}", u, 14, 2 * j - 1, 2 * j + 4) for j in range(1, 8)]
    return LabeledGraph.build("Heawood", vs, edges, [f"x{i}" for i in range(1, 15)])


@lru_cache(maxsize=None)
def build_family(name: str, *params: int) -> LabeledGraph:
    key = name.lower()
    simple = {"2k3": two_k3, "k5": k5, "k33": k33, "k3,3": k33, "k6": k6,
              "k7": k7, "heawood": heawood}
    if key in simple:
        if params:
            raise GraphError(f"family {name} takes no parameters")
        return simple[key]()
    if key == "mobius":
        if len(params) != 1:
            raise GraphError("Mobius needs exactly one parameter (number of rungs)")
        return mobius(int(params[0]))
    raise GraphError(f"unknown family {name!r}")


def family_of(g: LabeledGraph) -> Tuple[str, Tuple[int, ...]]:
    """Recover ``(family, params)`` from a builder-produced graph's name."""
    if g.name.startswith("Mobius"):
        try:
            return "Mobius", (int(g.name[6:]),)
        except ValueError:
            pass
    for fam in ("2K3", "K5", "K33", "K6", "K7", "Heawood"):
        if g.name == fam:
            return fam, ()
    raise GraphError(f"graph {g.name!r} is not a known family")


# -- outer cycle geometry -----------------------------------------------------

def outer_vertices(g: LabeledGraph) -> List[str]:
    """Vertices of the designated outer cycle in traversal order."""
    if not g.outer:
        raise GraphError(f"{g.name} has no designated outer cycle")
    first, second = g.edges[g.outer[0]], g.edges[g.outer[1]]
    start = next(v for v in first.ends if v not in second.ends)
    order = [start]
    for k in g.outer:
        e = g.edges[k]
        cur = order[-1]
        if cur not in e.ends:
            raise GraphError("outer edges do not form a cycle in the given order")
        order.append(e.head if e.tail == cur else e.tail)
    if order[-1] != order[0]:
        raise GraphError("outer edges do not close up")
    return order[:-1]


def outer_edge_distance(g: LabeledGraph, a: int, b: int) -> int:
    """Fewest outer edges on a path between edges ``a`` and ``b``."""
    cyc = outer_vertices(g)
    pos = {v: i for i, v in enumerate(cyc)}
    n = len(cyc)
    best = None
    for p in g.edges[a].ends:
        for q in g.edges[b].ends:
            if p not in pos or q not in pos:
                raise GraphError("edge endpoint not on the outer cycle")
            d = abs(pos[p] - pos[q])
            d = min(d, n - d)
            best = d if best is None else min(best, d)
    return best


# -- subgraph embeddings ------------------------------------------------------

@dataclass(frozen=True)
class SubgraphEmbedding:
    """A pattern graph realised inside ``host``, possibly subdivided.

    ``paths[k]`` lists ``(host edge, direction)`` along pattern edge ``k`` from
    its tail to its head; ``direction`` is -1 if the host edge points against
    the pattern edge.
    """

    name: str
    host: LabeledGraph
    pattern: LabeledGraph
    paths: Tuple[Tuple[Tuple[int, int], ...], ...]
    kind: str = ""

    @property
    def edge_map(self) -> Dict[int, Tuple[int, int]]:
        return {h: (k, d) for k, path in enumerate(self.paths) for h, d in path}

    def image(self, host_edge: int) -> Optional[Tuple[int, int]]:
        return self.edge_map.get(host_edge)

    @property
    def host_edges(self) -> List[int]:
        return sorted(self.edge_map)


def embed_subgraph(host: LabeledGraph, edge_ids: Iterable[int], name: str = "",
                   kind: str = "", smooth: bool = True) -> SubgraphEmbedding:
    """Embedding of the subgraph spanned by ``edge_ids``.

    With ``smooth``, degree-2 vertices are suppressed (their two edges merge
    into one pattern edge) except on components that are plain cycles.  Each
    pattern edge is oriented like the lowest-id host edge on its path.
    """
    ids = sorted(set(edge_ids))
    if not ids:
        raise GraphError("empty subgraph")
    inc: Dict[str, List[int]] = {}
    for k in ids:
        for v in host.edges[k].ends:
            inc.setdefault(v, []).append(k)
    branch = {v for v, ks in inc.items() if len(ks) != 2} if smooth else set(inc)
    if smooth:
        # cycle components keep all their vertices
        seen = set()
        for v0 in inc:
            if v0 in seen:
                continue
            comp, stack = {v0}, [v0]
            while stack:
                v = stack.pop()
                for k in inc[v]:
                    e = host.edges[k]
                    w = e.head if e.tail == v else e.tail
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            if not comp & branch:
                branch |= comp
    used = set()
    raw_paths = []
    for k in ids:
        if k in used:
            continue
        # walk both directions from edge k to branch vertices
        e = host.edges[k]
        chain = [k]
        used.add(k)
        ends = []
        for start, side in ((e.head, 1), (e.tail, -1)):
            v, last = start, k
            seq = []
            while v not in branch:
                nxt = [j for j in inc[v] if j != last][0]
                if nxt in used:
                    break
                used.add(nxt)
                seq.append(nxt)
                f = host.edges[nxt]
                v = f.head if f.tail == v else f.tail
                last = nxt
            ends.append((v, seq))
        (head_end, fwd), (tail_end, back) = ends
        chain = list(reversed(back)) + [k] + fwd
        # orient the walk tail_end -> head_end, then along the lowest-id host edge
        walk = []
        cur = tail_end
        for j in chain:
            f = host.edges[j]
            if f.tail == cur:
                walk.append((j, 1))
                cur = f.head
            else:
                walk.append((j, -1))
                cur = f.tail
        low = min(walk)
        if low[1] == -1:
            walk = [(j, -d) for j, d in reversed(walk)]
            tail_end, head_end = head_end, tail_end
        raw_paths.append((tail_end, head_end, tuple(walk)))
    raw_paths.sort(key=lambda p: min(j for j, _ in p[2]))
    pverts = [v for v in host.vertices if v in branch]
    pedges = [("+".join(host.edges[j].label for j, _ in walk), t, h) for t, h, walk in raw_paths]
    pattern = LabeledGraph.build(name or "sub", pverts, pedges)
    return SubgraphEmbedding(name or "sub", host, pattern, tuple(p[2] for p in raw_paths), kind)


def identity_embedding(g: LabeledGraph) -> SubgraphEmbedding:
    return SubgraphEmbedding(g.name, g, g, tuple(((e.id, 1),) for e in g.edges), "identity")


def _by_labels(g: LabeledGraph, labels: Iterable[str]) -> List[int]:
    return [g.index[lab] for lab in labels]


def spanned_subgraphs(g: LabeledGraph, pattern: str) -> List[SubgraphEmbedding]:
    """All non-subdivided 2K3, K5 or K33 subgraphs of a simple graph."""
    if len(g.vertices) > MAX_SEARCH_VERTICES:
        raise GraphError(f"subgraph search limited to {MAX_SEARCH_VERTICES} vertices")
    vs = g.vertices
    out = []
    key = pattern.upper().replace(",", "")

    def eb(u, v):
        return g.edge_between(u, v)

    if key == "2K3":
        tris = [t for t in combinations(vs, 3)
                if all(eb(a, b) is not None for a, b in combinations(t, 2))]
        for s, t in combinations(tris, 2):
            if set(s) & set(t):
                continue
            ids = [eb(a, b) for a, b in combinations(s, 2)] + [eb(a, b) for a, b in combinations(t, 2)]
            out.append(embed_subgraph(g, ids, f"2K3[{''.join(s)}|{''.join(t)}]", "2K3", smooth=False))
    elif key == "K5":
        for five in combinations(vs, 5):
            ids = [eb(a, b) for a, b in combinations(five, 2)]
            if None not in ids:
                out.append(embed_subgraph(g, ids, f"K5[-{','.join(v for v in vs if v not in five)}]",
                                          "K5", smooth=False))
    elif key == "K33":
        for six in combinations(vs, 6):
            for side in combinations(six[1:], 2):
                left = (six[0],) + side
                right = tuple(v for v in six if v not in left)
                ids = [eb(a, b) for a in left for b in right]
                if None not in ids:
                    out.append(embed_subgraph(g, ids, f"K33[{','.join(left)}|{','.join(right)}]",
                                              "K33", smooth=False))
    else:
        raise GraphError(f"unknown pattern {pattern!r}")
    return out


def mobius_k33_family(n: int) -> List[SubgraphEmbedding]:
    """Outer cycle plus rungs ``y_{q+1}, y_{q+2}, y_{q+3}`` for q = 0..n-1."""
    g = build_family("Mobius", n)
    out = []
    for q in range(n):
        rungs = [f"y{(q + j - 1) % n + 1}" for j in (1, 2, 3)]
        ids = list(g.outer) + _by_labels(g, rungs)
        out.append(embed_subgraph(g, ids, f"G{q}", "K33"))
    return out


def heawood_k33_family() -> List[SubgraphEmbedding]:
    """Outer 14-cycle plus chords ``y_{q+1}, y_{q+2}, y_{q+3}`` for q = 0..6."""
    g = build_family("Heawood")
    out = []
    for q in range(7):
        chords = [f"y{(q + j - 1) % 7 + 1}" for j in (1, 2, 3)]
        ids = list(g.outer) + _by_labels(g, chords)
        out.append(embed_subgraph(g, ids, f"G{q}", "K33"))
    return out


def k6_k5_family() -> List[SubgraphEmbedding]:
    """The six K5 subgraphs of K6; ``G_q`` omits vertex ``w_{q+2}``."""
    g = build_family("K6")
    out = []
    for q in range(1, 7):
        gone = f"w{(q + 1) % 6 + 1}"
        ids = [e.id for e in g.edges if gone not in e.ends]
        out.append(embed_subgraph(g, ids, f"G{q}", "K5", smooth=False))
    return out


def _k7_shift(label: str, q: int) -> str:
    return f"{label[0]}{(int(label[1:]) - 1 + q) % 7 + 1}"


# Edge sets of the q = 0 members of the four K7 families; the others are
# rotations v_i -> v_{i+q}, which send x_i -> x_{i+q} (same for y, z).
K7_FAMILY_BASE: Dict[str, Tuple[str, ...]] = {
    # x-cycle plus three consecutive z chords
    "G": ("x1", "x2", "x3", "x4", "x5", "x6", "x7", "z1", "z2", "z3"),
    # y-cycle plus x1, x3, x5
    "H": ("y1", "y2", "y3", "y4", "y5", "y6", "y7", "x1", "x3", "x5"),
    # z-cycle plus y1, y2, y5
    "F": ("z1", "z2", "z3", "z4", "z5", "z6", "z7", "y1", "y2", "y5"),
    # triangles v0 v1 v5 and v3 v4 v6
    "J": ("x1", "x4", "y5", "y6", "z4", "z6"),
}
# host pair pinned to 1 on the q = 0 member, rotated with the family
K7_FAMILY_PIN: Dict[str, Tuple[str, str]] = {
    "G": ("x1", "x4"), "H": ("y1", "y7"), "F": ("z1", "z3"), "J": ("x1", "x4"),
}


def k7_families() -> Dict[str, List[SubgraphEmbedding]]:
    """The four rotation families G, H, F (K33 subdivisions) and J (2K3)."""
    g = build_family("K7")
    out: Dict[str, List[SubgraphEmbedding]] = {}
    for fam, base in K7_FAMILY_BASE.items():
        kind = "2K3" if fam == "J" else "K33"
        members = []
        for q in range(7):
            ids = _by_labels(g, [_k7_shift(lab, q) for lab in base])
            members.append(embed_subgraph(g, ids, f"{fam}{q + 1}", kind, smooth=(kind != "2K3")))
        out[fam] = members
    return out


def enumerate_pattern_subgraphs(g: LabeledGraph, pattern: str) -> List[SubgraphEmbedding]:
    """Spanned copies of ``pattern`` plus the hand-built subdivided families
    that exist for ``g``'s family."""
    if len(g.vertices) > MAX_SEARCH_VERTICES:
        raise GraphError(f"subgraph search limited to {MAX_SEARCH_VERTICES} vertices")
    key = pattern.upper().replace(",", "")
    out = spanned_subgraphs(g, key) if g.is_simple() else []
    seen = {tuple(e.host_edges) for e in out}
    extra: List[SubgraphEmbedding] = []
    try:
        fam, params = family_of(g)
    except GraphError:
        fam, params = None, ()
    if fam == "Mobius" and key == "K33" and params[0] % 2 == 1 and params[0] >= 5:
        extra = mobius_k33_family(params[0])
    elif fam == "Heawood" and key == "K33":
        extra = heawood_k33_family()
    elif fam == "K7":
        extra = [e for members in k7_families().values() for e in members if e.kind == key]
    for e in extra:
        if build_family(*((fam,) + params)) != g:
            break
        if tuple(e.host_edges) not in seen:
            out.append(e)
            seen.add(tuple(e.host_edges))
    return out


# -- rung deletion ------------------------------------------------------------

def rung_ids(g: LabeledGraph) -> List[int]:
    outer = set(g.outer)
    return [e.id for e in g.edges if e.id not in outer]


def delete_rung_and_smooth(g: LabeledGraph, rung: int) -> SubgraphEmbedding:
    """Remove a rung of ``M_{2N}`` and smooth its two ends.

    Returns an embedding of the canonical ``Mobius(2N-1)`` into ``g`` (the
    pattern is the builder's graph, with its own orientation); the paths
    record which old edges make up each new edge and with what direction.
    """
    fam, params = family_of(g)
    if fam != "Mobius" or params[0] % 2 or params[0] < 4:
        raise GraphError("rung deletion needs an even Mobius ladder M_{2N}, N >= 2")
    if g != build_family("Mobius", params[0]):
        raise GraphError("graph does not match the Mobius builder")
    if rung not in rung_ids(g):
        raise GraphError(f"edge {g.edges[rung].label} is not a rung")
    n = params[0]
    child = build_family("Mobius", n - 1)
    cyc = outer_vertices(g)
    gone = set(g.edges[rung].ends)
    # rotate so the child cycle starts at a surviving vertex
    start = next(i for i, v in enumerate(cyc) if v not in gone and cyc[i - 1] not in gone)
    cyc = cyc[start:] + cyc[:start]
    kept = [v for v in cyc if v not in gone]
    # old outer edges in traversal order
    L = len(cyc)
    walk = []
    for i in range(L):
        a, b = cyc[i], cyc[(i + 1) % L]
        walk.append((g.edge_between(a, b), a, b))
    child_cyc = outer_vertices(child)
    vmap = dict(zip(kept, child_cyc))
    paths: Dict[int, List[Tuple[int, int]]] = {}
    i = 0
    for ci in range(len(kept)):
        a = kept[ci]
        b = kept[(ci + 1) % len(kept)]
        segs = []
        while True:
            k, s, t = walk[i % L]
            i += 1
            segs.append((k, s, t))
            if t == b:
                break
        ce = child.edge_between(vmap[a], vmap[b])
        forward = child.edges[ce].tail == vmap[a]
        path = []
        for k, s, t in segs:
            along = g.edges[k].tail == s
            path.append((k, 1 if along == forward else -1))
        paths[ce] = path if forward else list(reversed(path))
    for k in rung_ids(g):
        if k == rung:
            continue
        e = g.edges[k]
        ce = child.edge_between(vmap[e.tail], vmap[e.head])
        paths[ce] = [(k, 1 if child.edges[ce].tail == vmap[e.tail] else -1)]
    ordered = tuple(tuple(paths[k]) for k in range(len(child.edges)))
    return SubgraphEmbedding(f"{g.name}-{g.edges[rung].label}", g, child, ordered, "smoothing")
