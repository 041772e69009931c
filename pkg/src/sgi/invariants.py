"""Invariants of diagrams: Wu vector, reduced Wu (generalised Simon) values,
the rung-deletion invariant T of even Mobius ladders, parity and
crossing-number certificates, and chirality certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Tuple

from . import epsilon as ep
from . import families as fam
from .diagram import Diagram, DiagramError, mirror, pairwise_linking, restrict
from .graph import GraphError, automorphisms, orientation_character
from .linking import LinkingModule, linking_module


class InvariantError(GraphError):
    pass


@dataclass(frozen=True)
class WuVector:
    graph_name: str
    coordinates: Tuple[int, ...]


def wu_invariant(d: Diagram, m: Optional[LinkingModule] = None) -> WuVector:
    m = m or linking_module(d.graph)
    if m.graph != d.graph:
        raise InvariantError("linking module is for a different graph")
    return WuVector(d.graph.name, m.reduce(list(pairwise_linking(d).values)))


def reduced_invariant(d: Diagram, t: ep.EpsilonTable) -> int:
    if t.graph != d.graph:
        raise InvariantError(f"table {t.name or '?'} is for {t.graph.name}, diagram is on {d.graph.name}")
    lv = pairwise_linking(d).values
    return sum(a * b for a, b in zip(t.values, lv) if b)


def child_table(n_child: int) -> ep.EpsilonTable:
    """Table used on the rung-deleted child ``Mobius(n_child)``."""
    if n_child == 3:
        return ep.mobius3_simon()
    return ep.builtin_epsilon("Mobius", n_child)


def t_terms(d: Diagram) -> List[Tuple[str, int]]:
    """``(child name, child invariant)`` for every rung deletion."""
    family, params = fam.family_of(d.graph)
    if family != "Mobius" or params[0] % 2 or params[0] < 4:
        raise InvariantError("T is defined on Mobius ladders with an even number (>= 4) of rungs")
    table = child_table(params[0] - 1)
    out = []
    for r in fam.rung_ids(d.graph):
        emb = fam.delete_rung_and_smooth(d.graph, r)
        out.append((emb.name, reduced_invariant(restrict(d, emb), table)))
    return out


def t_invariant(d: Diagram) -> int:
    return sum(v for _, v in t_terms(d))


def crossing_lower_bound(d: Diagram, t: ep.EpsilonTable) -> int:
    """``ceil(|value| / m_eps)``, a lower bound for the crossing number."""
    m = t.m_eps
    if m == 0:
        raise InvariantError("m_eps is 0: the bound is vacuous")
    v = abs(reduced_invariant(d, t))
    return -(-v // m)


def k7_count_parity(n: int) -> str:
    """Parity of the number of K7 subgraphs of K_{4n+3}."""
    if n < 1:
        raise InvariantError("n must be positive")
    return "odd" if comb(4 * n + 3, 7) % 2 else "even"


# -- certificates --------------------------------------------------------------

@dataclass(frozen=True)
class ParityCertificate:
    family: str
    parity: str
    base_diagram: str
    base_value: int
    evidence: Tuple[str, ...]


def _family_key(family: str) -> str:
    k = family.lower()
    if k.startswith("mobius"):
        return "mobius"
    if k in ("k7", "heawood"):
        return k
    raise InvariantError(f"no parity certificate for family {family!r}")


def base_setup(family: str, *params: int):
    """``(table, base diagram name, base diagram)`` for the oddness lemmas."""
    from . import catalog
    key = _family_key(family)
    if key == "k7":
        return ep.builtin_epsilon("K7"), "k7_standard", catalog.k7_standard()
    if key == "heawood":
        return ep.builtin_epsilon("Heawood"), "heawood_standard", catalog.heawood_standard()
    if len(params) != 1:
        raise InvariantError("Mobius parity needs the rung count 2N+1")
    n = int(params[0])
    if n % 2 == 0 or n < 5:
        raise InvariantError("parity certificate needs an odd ladder with at least five rungs")
    big_n = (n - 1) // 2
    return ep.builtin_epsilon("Mobius", n), f"mobius_one_crossing({big_n})", catalog.mobius_one_crossing(big_n)


def parity_certificate(family: str, *params: int) -> ParityCertificate:
    t, name, base = base_setup(family, *params)
    value = reduced_invariant(base, t)
    hom = ep.verify_homomorphism(t)
    lines = [
        f"table {t.name} kills all delta generators: {bool(hom)}",
        f"base diagram {name} has {len(base)} crossings and value {value}",
        "isotopy moves leave the value fixed (homomorphism)",
        "a crossing change alters one crossing count by 2, hence the value by an even amount",
        "every embedding is reached from the base by isotopy and crossing changes",
    ]
    odd_coeff = sum(1 for c in base.crossings
                    if c.over != c.under and base.graph.disjoint(c.over, c.under) and t(c.over, c.under) % 2)
    lines.append(f"crossings with odd coefficient in the base: {odd_coeff}")
    parity = "odd" if value % 2 else "even"
    if not hom:
        parity = "undetermined"
    return ParityCertificate(t.graph.name, parity, name, value, tuple(lines))


@dataclass(frozen=True)
class ChiralityCertificate:
    verdict: str
    evidence: Tuple[str, ...]
    limitation: str = ""


LIMITATION = ("computational hypotheses only: the intrinsic chirality conclusion also relies on "
              "results not computed here (uniqueness of the preserved cycle under automorphisms "
              "and, for K7, Arf-invariant and Conway-Gordon type arguments)")


def _automorphism_check(t: ep.EpsilonTable, autos, check_edges) -> Tuple[bool, str]:
    g = t.graph
    for a in autos:
        if orientation_character(a, check_edges) == "mixed":
            return False, "an automorphism mixes preserved and reversed edges"
        emap = dict(enumerate(a.edge_map))
        for (i, j), v in zip(g.pairs, t.values):
            (ki, si), (kj, sj) = emap[i], emap[j]
            if t.values[g.pair_key(ki, kj)] != v:
                return False, f"an automorphism moves coefficient on ({g.edges[i].label}, {g.edges[j].label})"
    return True, f"{len(autos)} automorphisms preserve every coefficient and are all-preserved or all-reversed"


def star_preserving_automorphisms(g):
    autos = automorphisms(g, constraint=[e.id for e in g.edges if e.label[0] == "x"])
    stars = {s: {e.id for e in g.edges if e.label[0] == s} for s in "xyz"}
    return [a for a in autos if all({a.edge_map[k][0] for k in ids} == ids for ids in stars.values())]


def chirality_certificate(d: Diagram, context: Optional[str] = None) -> ChiralityCertificate:
    g = d.graph
    try:
        family, params = fam.family_of(g)
    except GraphError:
        family, params = None, ()
    ctx = (context or family or "").lower()
    if ctx.startswith("mobius") and family == "Mobius" and params[0] % 2 == 0:
        ctx = "mobius-even"
    evidence: List[str] = []
    if ctx == "mobius-even":
        if family != "Mobius" or params[0] % 2:
            raise InvariantError("mobius-even context needs an even Mobius ladder")
        terms = t_terms(d)
        tv = sum(v for _, v in terms)
        evidence.append("child values: " + ", ".join(f"{n}={v}" for n, v in terms))
        evidence.append(f"T = {tv}")
        if tv:
            evidence.append("T changes sign under mirroring, so a nonzero T rules out achirality")
            return ChiralityCertificate("chiral-embedding", tuple(evidence))
        return ChiralityCertificate("inconclusive", tuple(evidence))
    if ctx in ("k7", "heawood") or ctx.startswith("mobius"):
        want = {"k7": "K7", "heawood": "Heawood"}.get(ctx, "Mobius")
        if family != want:
            raise InvariantError(f"context {context!r} does not match graph {g.name}")
        t = ep.builtin_epsilon("Mobius", *params) if want == "Mobius" else ep.builtin_epsilon(want)
        hom = ep.verify_homomorphism(t)
        evidence.append(f"homomorphism: {bool(hom)}")
        pc = parity_certificate(want, *params)
        evidence.append(f"parity: {pc.parity} (base {pc.base_diagram} value {pc.base_value})")
        value = reduced_invariant(d, t)
        evidence.append(f"this diagram: value {value}")
        if want == "K7":
            autos = star_preserving_automorphisms(g)
            scope = "star-preserving automorphisms"
        else:
            autos = automorphisms(g, constraint=g.outer)
            scope = "automorphisms preserving the outer cycle"
        ok, msg = _automorphism_check(t, autos, [e.id for e in g.edges])
        evidence.append(f"{scope}: {msg}")
        if hom and pc.parity == "odd" and ok:
            return ChiralityCertificate("intrinsically-chiral-hypotheses-verified", tuple(evidence), LIMITATION)
        return ChiralityCertificate("inconclusive", tuple(evidence), LIMITATION)
    evidence.append(f"no chirality criterion for {g.name}")
    return ChiralityCertificate("inconclusive", tuple(evidence))


# -- report --------------------------------------------------------------------

def report(d: Diagram, t: ep.EpsilonTable, with_certificate: bool = True) -> dict:
    """The JSON report: graph, epsilon, wu_coordinates, reduced_value,
    m_epsilon, crossing_bound, parity, certificate."""
    value = reduced_invariant(d, t)
    cert = None
    if with_certificate:
        try:
            fam.family_of(d.graph)
            c = chirality_certificate(d)
            cert = {"verdict": c.verdict, "evidence": list(c.evidence)}
            if c.limitation:
                cert["limitation"] = c.limitation
        except GraphError:
            cert = None
    return {
        "graph": d.graph.name,
        "epsilon": t.name,
        "wu_coordinates": list(wu_invariant(d).coordinates),
        "reduced_value": value,
        "m_epsilon": t.m_eps,
        "crossing_bound": crossing_lower_bound(d, t) if t.m_eps else None,
        "parity": "odd" if value % 2 else "even",
        "certificate": cert,
    }
