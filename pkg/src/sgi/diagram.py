"""Spatial graph diagrams as signed crossing lists.

A crossing joins an over strand and an under strand; a strand is an
``(edge id, position)`` pair, positions giving the order of crossings along
the edge from its tail to its head.  Positions are sparse non-negative ints.
Nothing here checks planar realisability.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .families import SubgraphEmbedding
from .graph import GraphError, LabeledGraph, ParseError, format_graph, parse_graph, parse_graph_lines, tokenize


class DiagramError(GraphError):
    pass


@dataclass(frozen=True)
class Crossing:
    over: int
    over_pos: int
    under: int
    under_pos: int
    sign: int

    def strands(self):
        return ((self.over, self.over_pos), (self.under, self.under_pos))

    def edges(self) -> Tuple[int, int]:
        return (self.over, self.under)


@dataclass(frozen=True)
class Diagram:
    graph: LabeledGraph
    crossings: Tuple[Crossing, ...] = ()

    def __post_init__(self):
        seen = set()
        n = len(self.graph.edges)
        for c in self.crossings:
            if c.sign not in (1, -1):
                raise DiagramError(f"crossing sign {c.sign} is not +1 or -1")
            for e, p in c.strands():
                if not 0 <= e < n:
                    raise DiagramError(f"crossing references missing edge id {e}")
                if p < 0:
                    raise DiagramError("strand positions must be non-negative")
                if (e, p) in seen:
                    raise DiagramError(f"two strands at position {p} on edge {self.graph.edges[e].label}")
                seen.add((e, p))

    def __len__(self):
        return len(self.crossings)

    def strand_order(self) -> Dict[int, List[Tuple[int, int, int]]]:
        """Per edge, ``(position, crossing index, 0 over / 1 under)`` sorted by position."""
        out: Dict[int, List[Tuple[int, int, int]]] = {e.id: [] for e in self.graph.edges}
        for i, c in enumerate(self.crossings):
            out[c.over].append((c.over_pos, i, 0))
            out[c.under].append((c.under_pos, i, 1))
        for v in out.values():
            v.sort()
        return out

    def with_crossings(self, crossings: Iterable[Crossing]) -> "Diagram":
        return Diagram(self.graph, tuple(crossings))


@dataclass(frozen=True)
class CrossingTable:
    """Signed crossing counts over the disjoint pair basis."""

    graph: LabeledGraph
    values: Tuple[int, ...]

    def __call__(self, a, b) -> int:
        g = self.graph
        ia = g.index[a] if isinstance(a, str) else a
        ib = g.index[b] if isinstance(b, str) else b
        return self.values[g.pair_key(ia, ib)]

    def nonzero(self) -> Dict[Tuple[str, str], int]:
        g = self.graph
        return {(g.edges[i].label, g.edges[j].label): v for (i, j), v in zip(g.pairs, self.values) if v}


def pairwise_linking(d: Diagram) -> CrossingTable:
    g = d.graph
    vals = [0] * len(g.pairs)
    pidx = g.pair_index
    for c in d.crossings:
        a, b = (c.over, c.under) if c.over < c.under else (c.under, c.over)
        k = pidx.get((a, b))
        if k is not None:
            vals[k] += c.sign
    return CrossingTable(g, tuple(vals))


def mirror(d: Diagram) -> Diagram:
    return d.with_crossings(Crossing(c.under, c.under_pos, c.over, c.over_pos, -c.sign) for c in d.crossings)


def restrict(d: Diagram, emb: SubgraphEmbedding) -> Diagram:
    """The diagram of the pattern graph seen through ``emb``."""
    if emb.host != d.graph:
        raise DiagramError("embedding is not into this diagram's graph")
    order = d.strand_order()
    emap = emb.edge_map
    newpos: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for k, path in enumerate(emb.paths):
        p = 0
        for h, dirn in path:
            strands = order[h] if dirn == 1 else list(reversed(order[h]))
            for pos, _, _ in strands:
                newpos[(h, pos)] = (k, p)
                p += 1
    out = []
    for c in d.crossings:
        if c.over in emap and c.under in emap:
            (po, pp), (uo, up) = newpos[(c.over, c.over_pos)], newpos[(c.under, c.under_pos)]
            s = c.sign * emap[c.over][1] * emap[c.under][1]
            out.append(Crossing(po, pp, uo, up, s))
    return Diagram(emb.pattern, tuple(out))


def _cycle_directions(g: LabeledGraph, cycle: Sequence) -> Dict[int, int]:
    ids = [g.index[c] if isinstance(c, str) else c for c in cycle]
    if len(ids) < 2:
        raise DiagramError("a cycle needs at least two edges")
    first, second = g.edges[ids[0]], g.edges[ids[1]]
    shared = set(first.ends) & set(second.ends)
    if not shared:
        raise DiagramError("cycle edges are not consecutive")
    cur = first.tail if first.head in shared else first.head
    start = cur
    dirs = {}
    for k in ids:
        e = g.edges[k]
        if e.tail == cur:
            dirs[k] = 1
            cur = e.head
        elif e.head == cur:
            dirs[k] = -1
            cur = e.tail
        else:
            raise DiagramError(f"edge {e.label} does not continue the cycle")
    if cur != start:
        raise DiagramError("cycle does not close")
    return dirs


def linking_number(d: Diagram, cycle_a: Sequence, cycle_b: Sequence) -> int:
    """Linking number of two disjoint cycles, each traversed in the order given."""
    g = d.graph
    da, db = _cycle_directions(g, cycle_a), _cycle_directions(g, cycle_b)
    va = {v for k in da for v in g.edges[k].ends}
    vb = {v for k in db for v in g.edges[k].ends}
    if va & vb:
        raise DiagramError("cycles share a vertex")
    total = 0
    for c in d.crossings:
        for x, y in ((c.over, c.under), (c.under, c.over)):
            if x in da and y in db:
                total += c.sign * da[x] * db[y]
    if total % 2:
        raise DiagramError(f"odd crossing sum {total} between the cycles: crossing list is not realisable")
    return total // 2


# -- text format ---------------------------------------------------------------

def _fmt_sign(s: int) -> str:
    return "+1" if s > 0 else "-1"


def serialize_diagram(d: Diagram) -> str:
    g = d.graph
    lines = [format_graph(g).rstrip("\n")]
    for c in d.crossings:
        lines.append(f"crossing {g.edges[c.over].label} {c.over_pos} {g.edges[c.under].label} {c.under_pos} "
                     f"{_fmt_sign(c.sign)}")
    return "\n".join(lines) + "\n"


def parse_diagram(text: str, base_dir: Optional[str] = None) -> Diagram:
    graph_lines = []
    cross_lines = []
    used = None
    for lineno, toks in tokenize(text):
        if toks[0] == "crossing":
            cross_lines.append((lineno, toks))
        elif toks[0] == "use":
            if len(toks) != 2:
                raise ParseError(lineno, "expected 'use <graph-file>'")
            if used is not None or graph_lines:
                raise ParseError(lineno, "only one graph per diagram")
            used = (lineno, toks[1])
        else:
            if cross_lines:
                raise ParseError(lineno, "graph lines must come before crossings")
            if used is not None:
                raise ParseError(lineno, "inline graph lines after 'use'")
            graph_lines.append((lineno, toks))
    if used is not None:
        lineno, path = used
        full = path if os.path.isabs(path) or base_dir is None else os.path.join(base_dir, path)
        try:
            with open(full, encoding="utf-8") as fh:
                g = parse_graph(fh.read())
        except OSError as exc:
            raise ParseError(lineno, f"cannot read graph file {path}: {exc.strerror}") from None
    else:
        if not graph_lines:
            raise ParseError(0, "diagram has no graph")
        g = parse_graph_lines(graph_lines)
    crossings = []
    seen = {}
    for lineno, toks in cross_lines:
        if len(toks) != 6:
            raise ParseError(lineno, "expected 'crossing <over-edge> <over-pos> <under-edge> <under-pos> <+1|-1>'")
        _, oe, op, ue, up, s = toks
        ids = []
        for lab in (oe, ue):
            if lab not in g.index:
                raise ParseError(lineno, f"unknown edge {lab!r}")
            ids.append(g.index[lab])
        try:
            pos = [int(op), int(up)]
        except ValueError:
            raise ParseError(lineno, "positions must be integers") from None
        if min(pos) < 0:
            raise ParseError(lineno, "positions must be non-negative")
        if s not in ("+1", "-1", "1"):
            raise ParseError(lineno, f"sign must be +1 or -1, got {s!r}")
        for e, p, lab in ((ids[0], pos[0], oe), (ids[1], pos[1], ue)):
            if (e, p) in seen:
                raise ParseError(lineno, f"position {p} on edge {lab} already used on line {seen[(e, p)]}")
            seen[(e, p)] = lineno
        crossings.append(Crossing(ids[0], pos[0], ids[1], pos[1], -1 if s == "-1" else 1))
    return Diagram(g, tuple(crossings))


def load_diagram(path: str) -> Diagram:
    if path == "-":
        import sys
        return parse_diagram(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read(), os.path.dirname(os.path.abspath(path)))


def crossing_census(d: Diagram) -> Dict[Tuple[str, str], int]:
    """Crossing counts by (sorted) pair of edge-label prefixes, e.g. ``('y', 'z')``."""
    out: Dict[Tuple[str, str], int] = {}
    g = d.graph
    for c in d.crossings:
        key = tuple(sorted((g.edges[c.over].label[0], g.edges[c.under].label[0])))
        out[key] = out.get(key, 0) + 1
    return out


def twist_region(a: int, b: int, count: int, sign: int, start_a: int = 0, start_b: int = 0) -> List[Crossing]:
    """``count`` crossings of ``a`` over ``b`` at consecutive positions."""
    return [Crossing(a, start_a + i, b, start_b + i, sign) for i in range(count)]
