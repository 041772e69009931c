"""Labelled oriented graphs, disjoint edge pairs, automorphisms and the
``.sg`` text format."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

MAX_SEARCH_VERTICES = 20


class GraphError(ValueError):
    """Raised for malformed graphs or inapplicable graph operations."""


@dataclass(frozen=True)
class Edge:
    id: int
    label: str
    tail: str
    head: str

    @property
    def ends(self) -> Tuple[str, str]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class LabeledGraph:
    """A finite graph with oriented, labelled edges.

    Edge ids are the positions ``0..|E|-1`` in ``edges``; the edge order fixes
    the order of the disjoint-pair basis.  ``outer`` optionally names the edge
    ids of a designated outer cycle, in cyclic order.
    """

    name: str
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    outer: Tuple[int, ...] = ()

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        labels = set()
        for k, e in enumerate(self.edges):
            if e.id != k:
                raise GraphError(f"edge {e.label!r} has id {e.id}, expected {k}")
            if e.tail not in vs or e.head not in vs:
                raise GraphError(f"edge {e.label!r} has an undeclared endpoint")
            if e.tail == e.head:
                raise GraphError(f"edge {e.label!r} is a self-loop")
            if e.label in labels:
                raise GraphError(f"duplicate edge label {e.label!r}")
            labels.add(e.label)
        for k in self.outer:
            if not 0 <= k < len(self.edges):
                raise GraphError("outer cycle references an unknown edge")

    @classmethod
    def build(cls, name: str, vertices: Iterable, edges: Iterable[Tuple[str, object, object]],
              outer: Sequence[str] = ()) -> "LabeledGraph":
        """Build from ``(label, tail, head)`` triples; ``outer`` lists labels."""
        vertices = tuple(str(v) for v in vertices)
        es = tuple(Edge(k, lab, str(t), str(h)) for k, (lab, t, h) in enumerate(edges))
        by_label = {e.label: e.id for e in es}
        return cls(name, vertices, es, tuple(by_label[lab] for lab in outer))

    # -- lookups -------------------------------------------------------------

    @cached_property
    def index(self) -> Dict[str, int]:
        return {e.label: e.id for e in self.edges}

    def edge(self, label: str) -> Edge:
        try:
            return self.edges[self.index[label]]
        except KeyError:
            raise GraphError(f"unknown edge label {label!r}") from None

    def labels(self, ids: Iterable[int]) -> List[str]:
        return [self.edges[k].label for k in ids]

    @cached_property
    def incident(self) -> Dict[str, Tuple[int, ...]]:
        inc: Dict[str, List[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.tail].append(e.id)
            inc[e.head].append(e.id)
        return {v: tuple(ks) for v, ks in inc.items()}

    def degree(self, v: str) -> int:
        return len(self.incident[v])

    def disjoint(self, a: int, b: int) -> bool:
        ea, eb = self.edges[a], self.edges[b]
        return not (set(ea.ends) & set(eb.ends))

    @cached_property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        """Disjoint edge pairs ``(i, j)``, ``i < j``, in lexicographic order."""
        return tuple((i, j) for i, j in combinations(range(len(self.edges)), 2)
                     if self.disjoint(i, j))

    @cached_property
    def pair_index(self) -> Dict[Tuple[int, int], int]:
        return {p: k for k, p in enumerate(self.pairs)}

    def pair_key(self, a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        try:
            return self.pair_index[key]
        except KeyError:
            raise GraphError(f"edges {self.edges[a].label} and {self.edges[b].label} "
                             "are not disjoint") from None

    def components(self) -> int:
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in self.edges:
            parent[find(e.tail)] = find(e.head)
        return len({find(v) for v in self.vertices})

    @property
    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + self.components()

    def is_simple(self) -> bool:
        seen = set()
        for e in self.edges:
            key = frozenset(e.ends)
            if key in seen:
                return False
            seen.add(key)
        return True

    def neighbours(self, v: str) -> List[str]:
        out = []
        for k in self.incident[v]:
            e = self.edges[k]
            out.append(e.head if e.tail == v else e.tail)
        return out

    def edge_between(self, u: str, v: str) -> Optional[int]:
        for k in self.incident[u]:
            e = self.edges[k]
            if (e.tail == u and e.head == v) or (e.tail == v and e.head == u):
                return k
        return None

    def reoriented(self, flips: Iterable[int], name: Optional[str] = None) -> "LabeledGraph":
        """Copy with the edges in ``flips`` reversed."""
        flips = set(flips)
        es = tuple(Edge(e.id, e.label, e.head, e.tail) if e.id in flips else e for e in self.edges)
        return LabeledGraph(name or self.name, self.vertices, es, self.outer)

    def is_connected_after_removing(self, removed: Iterable[str]) -> bool:
        removed = set(removed)
        left = [v for v in self.vertices if v not in removed]
        if not left:
            return True
        seen = {left[0]}
        stack = [left[0]]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w not in removed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(left)

    def is_k_connected(self, k: int) -> bool:
        """Brute-force vertex-cut search."""
        if len(self.vertices) > MAX_SEARCH_VERTICES:
            raise GraphError(f"connectivity search limited to {MAX_SEARCH_VERTICES} vertices")
        if len(self.vertices) <= k:
            return False
        for r in range(k):
            for cut in combinations(self.vertices, r):
                if not self.is_connected_after_removing(cut):
                    return False
        return True


def disjoint_edge_pairs(g: LabeledGraph) -> List[Tuple[str, str]]:
    return [(g.edges[i].label, g.edges[j].label) for i, j in g.pairs]


# -- automorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """A vertex permutation with its induced edge map.

    ``edge_map[k] = (image edge id, +1 or -1)``; the sign is -1 when the image
    edge is traversed against its own orientation.
    """

    vertex_map: Tuple[Tuple[str, str], ...]
    edge_map: Tuple[Tuple[int, int], ...]

    def image(self, v: str) -> str:
        return dict(self.vertex_map)[v]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        mine, theirs = dict(self.vertex_map), dict(other.vertex_map)
        vmap = tuple((v, mine[theirs[v]]) for v, _ in other.vertex_map)
        emap = []
        for k, (j, s) in enumerate(other.edge_map):
            j2, s2 = self.edge_map[j]
            emap.append((j2, s * s2))
        return Automorphism(vmap, tuple(emap))

    def inverse(self) -> "Automorphism":
        vmap = tuple(sorted(((w, v) for v, w in self.vertex_map), key=lambda p: p[0]))
        emap = [None] * len(self.edge_map)
        for k, (j, s) in enumerate(self.edge_map):
            emap[j] = (k, s)
        order = [v for v, _ in self.vertex_map]
        vd = dict(vmap)
        return Automorphism(tuple((v, vd[v]) for v in order), tuple(emap))


def _induced(g: LabeledGraph, perm: Dict[str, str]) -> Automorphism:
    emap = []
    for e in g.edges:
        t, h = perm[e.tail], perm[e.head]
        k = g.edge_between(t, h)
        img = g.edges[k]
        emap.append((k, 1 if img.tail == t else -1))
    return Automorphism(tuple((v, perm[v]) for v in g.vertices), tuple(emap))


def automorphisms(g: LabeledGraph, constraint: Optional[Iterable[int]] = None) -> List[Automorphism]:
    """All automorphisms by backtracking; optionally only those mapping the
    edge-id set ``constraint`` onto itself."""
    if len(g.vertices) > MAX_SEARCH_VERTICES:
        raise GraphError(f"automorphism search limited to {MAX_SEARCH_VERTICES} vertices")
    if not g.is_simple():
        raise GraphError("automorphism search needs a simple graph")
    keep = None if constraint is None else {frozenset(g.edges[k].ends) for k in constraint}
    order: List[str] = []
    # BFS order keeps the partial map connected, which prunes early
    for root in g.vertices:
        if root in order:
            continue
        order.append(root)
        i = len(order) - 1
        while i < len(order):
            for w in sorted(g.neighbours(order[i]), key=g.vertices.index):
                if w not in order:
                    order.append(w)
            i += 1
    adj = {v: set(g.neighbours(v)) for v in g.vertices}
    deg = {v: len(adj[v]) for v in g.vertices}
    found: List[Automorphism] = []
    perm: Dict[str, str] = {}
    used = set()

    def ok(v, w):
        if deg[v] != deg[w]:
            return False
        for u, img in perm.items():
            if (u in adj[v]) != (img in adj[w]):
                return False
            if keep is not None and u in adj[v]:
                if (frozenset((u, v)) in keep) != (frozenset((img, w)) in keep):
                    return False
        return True

    def rec(i):
        if i == len(order):
            found.append(_induced(g, perm))
            return
        v = order[i]
        for w in g.vertices:
            if w not in used and ok(v, w):
                perm[v] = w
                used.add(w)
                rec(i + 1)
                del perm[v]
                used.discard(w)

    rec(0)
    return found


def orientation_character(a: Automorphism, edges: Iterable[int]) -> str:
    """``'all-preserved'``, ``'all-reversed'`` or ``'mixed'`` over ``edges``."""
    edges = list(edges)
    subset = set(edges)
    if {a.edge_map[k][0] for k in edges} != subset:
        raise GraphError("edge subset is not invariant under the automorphism")
    signs = {a.edge_map[k][1] for k in edges}
    if signs == {1} or not signs:
        return "all-preserved"
    if signs == {-1}:
        return "all-reversed"
    return "mixed"


# -- .sg text format ----------------------------------------------------------

def format_graph(g: LabeledGraph) -> str:
    lines = [f"graph {g.name}"]
    lines += [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.label} {e.tail} {e.head}" for e in g.edges]
    if g.outer:
        lines.append("outer " + " ".join(g.labels(g.outer)))
    return "\n".join(lines) + "\n"


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def parse_graph_lines(lines: Iterable[Tuple[int, List[str]]]) -> LabeledGraph:
    """Build a graph from tokenised ``(lineno, tokens)`` lines."""
    name = "graph"
    vertices: List[str] = []
    edges: List[Tuple[str, str, str]] = []
    edge_lines: List[int] = []
    outer: List[str] = []
    last = 0
    for lineno, tok in lines:
        last = lineno
        kw = tok[0]
        if kw == "graph":
            if len(tok) != 2:
                raise ParseError(lineno, "expected 'graph <name>'")
            name = tok[1]
        elif kw == "vertex":
            if len(tok) != 2:
                raise ParseError(lineno, "expected 'vertex <id>'")
            if tok[1] in vertices:
                raise ParseError(lineno, f"duplicate vertex {tok[1]!r}")
            vertices.append(tok[1])
        elif kw == "edge":
            if len(tok) != 4:
                raise ParseError(lineno, "expected 'edge <label> <tail> <head>'")
            edges.append((tok[1], tok[2], tok[3]))
            edge_lines.append(lineno)
        elif kw == "outer":
            outer = tok[1:]
        else:
            raise ParseError(lineno, f"unknown keyword {kw!r}")
    vs = set(vertices)
    for (lab, t, h), ln in zip(edges, edge_lines):
        # vertex lines are order-insensitive, so check endpoints at the end
        for v in (t, h):
            if v not in vs:
                raise ParseError(ln, f"edge {lab!r} uses undeclared vertex {v!r}")
    try:
        return LabeledGraph.build(name, vertices, edges, outer)
    except (GraphError, KeyError) as exc:
        raise ParseError(last, str(exc)) from None


def tokenize(text: str) -> List[Tuple[int, List[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def parse_graph(text: str) -> LabeledGraph:
    return parse_graph_lines(tokenize(text))
