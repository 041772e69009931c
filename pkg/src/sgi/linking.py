"""The linking module L(G) = Z(G)/B(G) of a labelled oriented graph.

Z(G) is free on the disjoint edge pairs (basis order ``g.pairs``).  B(G) is
spanned by one delta vector per (edge, non-incident vertex).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .graph import GraphError, LabeledGraph
from .snf import smith_normal_form, vecmat

IntVector = Dict[int, int]


def delta(g: LabeledGraph, e: int, v: str) -> IntVector:
    """Delta vector of (edge ``e``, vertex ``v``) as ``{pair index: coeff}``."""
    edge = g.edges[e]
    if v in edge.ends:
        raise GraphError(f"vertex {v} lies on edge {edge.label}")
    out: IntVector = {}
    for k in g.incident[v]:
        if not g.disjoint(e, k):
            continue
        other = g.edges[k]
        c = (1 if other.tail == v else 0) - (1 if other.head == v else 0)
        if c:
            key = g.pair_key(e, k)
            out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


def delta_generators(g: LabeledGraph) -> List[Tuple[int, str, IntVector]]:
    """All ``(edge, vertex, delta)`` triples, edges in id order."""
    gens = []
    for e in g.edges:
        for v in g.vertices:
            if v not in e.ends:
                gens.append((e.id, v, delta(g, e.id, v)))
    return gens


def delta_matrix(g: LabeledGraph) -> List[List[int]]:
    width = len(g.pairs)
    rows = []
    for _, _, vec in delta_generators(g):
        row = [0] * width
        for k, c in vec.items():
            row[k] = c
        rows.append(row)
    return rows


@dataclass(frozen=True)
class LinkingModule:
    graph: LabeledGraph
    rank: int
    torsion: Tuple[int, ...]
    relation_rank: int
    # pair index -> quotient coordinates; also a Z-basis of Hom(L(G), Z)
    reduction: Tuple[Tuple[int, ...], ...]

    @property
    def pairs(self):
        return self.graph.pairs

    @property
    def generators(self):
        return delta_generators(self.graph)

    def reduce(self, v) -> Tuple[int, ...]:
        """Quotient coordinates of a vector over the pair basis.

        ``v`` is a dense sequence of length ``len(pairs)`` or a sparse dict.
        """
        if isinstance(v, dict):
            if any(not 0 <= k < len(self.reduction) for k in v):
                raise GraphError("vector index outside the pair basis")
            items = v.items()
        else:
            if len(v) != len(self.reduction):
                raise GraphError(f"vector has length {len(v)}, pair basis has {len(self.reduction)}")
            items = enumerate(v)
        acc = [0] * self.rank
        for k, c in items:
            if c:
                row = self.reduction[k]
                for j in range(self.rank):
                    if row[j]:
                        acc[j] += c * row[j]
        return tuple(acc)

    def hom_basis(self) -> List[List[int]]:
        """Integer tables (over the pair basis) forming a basis of Hom(L(G), Z)."""
        return [[self.reduction[k][j] for k in range(len(self.reduction))] for j in range(self.rank)]


@lru_cache(maxsize=64)
def linking_module(g: LabeledGraph) -> LinkingModule:
    width = len(g.pairs)
    if width == 0:
        return LinkingModule(g, 0, (), 0, ())
    sf = smith_normal_form(delta_matrix(g), ncols=width)
    r = sf.rank
    reduction = tuple(tuple(sf.right[k][r:]) for k in range(width))
    return LinkingModule(g, width - r, sf.torsion, r, reduction)


def rank_formula(g: LabeledGraph, check: bool = True) -> int:
    """Closed-form rank of L(G) valid for 3-connected graphs."""
    if check and not g.is_k_connected(3):
        raise GraphError(f"{g.name} is not 3-connected; the rank formula does not apply")
    b = g.betti
    total = b * b + b + 4 * len(g.edges) - sum(g.degree(v) ** 2 for v in g.vertices)
    if total % 2:
        raise GraphError("rank formula produced a non-integer")
    return total // 2


def pair_vector(g: LabeledGraph, values: Dict[Tuple[str, str], int]) -> List[int]:
    """Dense vector from ``{(label, label): coeff}``."""
    out = [0] * len(g.pairs)
    for (a, b), c in values.items():
        out[g.pair_key(g.index[a], g.index[b])] += c
    return out


def dump_matrix(g: LabeledGraph) -> str:
    """Delta matrix as text: one row per generator, headers as comments."""
    lines = [f"# delta matrix of {g.name}: {len(g.pairs)} pairs"]
    lines.append("# columns: " + " ".join(f"{a}|{b}" for a, b in
                                          ((g.edges[i].label, g.edges[j].label) for i, j in g.pairs)))
    for e, v, vec in delta_generators(g):
        row = [0] * len(g.pairs)
        for k, c in vec.items():
            row[k] = c
        lines.append(f"# V[{g.edges[e].label},{v}]")
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"
