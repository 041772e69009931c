"""Crossing-list versions of the worked example embeddings.

Twist regions put all their crossings at consecutive positions on both
strands with one common sign.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import families as fam
from .diagram import Crossing, Diagram, DiagramError, twist_region


class CatalogError(DiagramError):
    pass


def _need(cond: bool, msg: str):
    if not cond:
        raise CatalogError(msg)


class _Builder:
    """Collects crossings, handing out the next free position on each edge."""

    def __init__(self, g):
        self.g = g
        self.next = {e.id: 0 for e in g.edges}
        self.cross: List[Crossing] = []

    def add(self, over: str, under: str, sign: int, count: int = 1):
        a, b = self.g.index[over], self.g.index[under]
        for _ in range(count):
            self.cross.append(Crossing(a, self.next[a], b, self.next[b], sign))
            self.next[a] += 1
            self.next[b] += 1

    def diagram(self) -> Diagram:
        return Diagram(self.g, tuple(self.cross))


def k7_standard(signs: Optional[Sequence[int]] = None) -> Diagram:
    """35 crossings: one for each disjoint z-z pair (14) and each disjoint
    y-z pair (21); z strands pass over y strands, and of two z strands the
    lower-indexed one is over.  Default signs are all +1."""
    g = fam.build_family("K7")
    pairs = []
    for i, j in g.pairs:
        a, b = g.edges[i], g.edges[j]
        kinds = {a.label[0], b.label[0]}
        if kinds == {"z"}:
            pairs.append((a.label, b.label))
        elif kinds == {"y", "z"}:
            pairs.append((a.label, b.label) if a.label[0] == "z" else (b.label, a.label))
    if signs is None:
        signs = [1] * len(pairs)
    _need(len(signs) == len(pairs), f"expected {len(pairs)} signs, got {len(signs)}")
    bld = _Builder(g)
    for (over, under), s in zip(pairs, signs):
        _need(s in (1, -1), "signs must be +1 or -1")
        bld.add(over, under, s)
    return bld.diagram()


def _max_distance_pair(n_rungs: int) -> Tuple[str, str]:
    # x1 and the outer edge opposite it
    return "x1", f"x{n_rungs + 1}"


def mobius_odd(big_n: int, k: int = 0, positive: bool = True) -> Diagram:
    """``2k+1`` crossings between two outer edges of ``M_{2N+1}`` at outer
    distance ``2N``; value ``2k+1`` when ``positive`` else ``-(2k+1)``."""
    _need(big_n >= 2, "N must be at least 2")
    _need(k >= 0, "k must be non-negative")
    n = 2 * big_n + 1
    g = fam.build_family("Mobius", n)
    a, b = _max_distance_pair(n)
    bld = _Builder(g)
    # coefficient is -1, so negative crossings give a positive value
    bld.add(a, b, -1 if positive else 1, 2 * k + 1)
    return bld.diagram()


def mobius_one_crossing(big_n: int) -> Diagram:
    return mobius_odd(big_n, 0, True)


def mobius_even(big_n: int, m: int = 0, sign: int = 1) -> Diagram:
    """``2m+1`` equal-sign crossings between opposite outer edges of ``M_{2N}``."""
    _need(big_n >= 2, "N must be at least 2")
    _need(m >= 0, "m must be non-negative")
    _need(sign in (1, -1), "sign must be +1 or -1")
    n = 2 * big_n
    g = fam.build_family("Mobius", n)
    bld = _Builder(g)
    bld.add("x1", f"x{n + 1}", sign, 2 * m + 1)
    return bld.diagram()


def k6_twisted(n: int = 0) -> Diagram:
    """Positive crossings: ``2n+1`` on (y1, y4), one on (x4, z2), one on (y6, y3)."""
    _need(n >= 0, "n must be non-negative")
    g = fam.build_family("K6")
    bld = _Builder(g)
    bld.add("y1", "y4", 1, 2 * n + 1)
    bld.add("x4", "z2", 1)
    bld.add("y6", "y3", 1)
    return bld.diagram()


HEAWOOD_TWIST_PAIRS = (("x1", "x8"), ("x3", "x10"), ("x5", "x12"))


def heawood_twisted(k: int = 0, m: int = 0, n: int = 0) -> Diagram:
    """Three positive twist regions of ``2k+1``, ``2m+1``, ``2n+1`` crossings on
    outer pairs at distance 6."""
    _need(min(k, m, n) >= 0, "parameters must be non-negative")
    g = fam.build_family("Heawood")
    bld = _Builder(g)
    for (a, b), c in zip(HEAWOOD_TWIST_PAIRS, (k, m, n)):
        bld.add(a, b, 1, 2 * c + 1)
    return bld.diagram()


def heawood_standard(signs: Optional[Sequence[int]] = None) -> Diagram:
    """The 14-gon with straight chords: one crossing per interleaving chord
    pair, lower-indexed chord over, default signs +1."""
    g = fam.build_family("Heawood")
    cyc = fam.outer_vertices(g)
    pos = {v: i for i, v in enumerate(cyc)}
    chords = [e for e in g.edges if e.label[0] == "y"]
    pairs = []
    for a, b in combinations(chords, 2):
        p = sorted((pos[a.tail], pos[a.head]))
        q = [pos[b.tail], pos[b.head]]
        inside = sum(1 for x in q if p[0] < x < p[1])
        if inside == 1 and not set(q) & set(p):
            pairs.append((a.label, b.label))
    if signs is None:
        signs = [1] * len(pairs)
    _need(len(signs) == len(pairs), f"expected {len(pairs)} signs, got {len(signs)}")
    bld = _Builder(g)
    for (a, b), s in zip(pairs, signs):
        bld.add(a, b, s)
    return bld.diagram()


def hopf_2k3(c: int = 1) -> Diagram:
    """``2|c|`` crossings between e1 and d1, all of sign ``sign(c)``."""
    g = fam.build_family("2K3")
    bld = _Builder(g)
    if c:
        bld.add("e1", "d1", 1 if c > 0 else -1, 2 * abs(c))
    return bld.diagram()


# -- registry ------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: Tuple[str, ...]
    build: Callable[..., Diagram]
    invariant: str           # "reduced", "T" or "wu"
    table: Optional[str]     # builtin table for "reduced"
    expected: Callable[..., int]
    crossings: Callable[..., int]


CATALOG: Dict[str, CatalogEntry] = {e.name: e for e in (
    CatalogEntry("k7_standard", (), k7_standard, "reduced", "K7", lambda: 35, lambda: 35),
    CatalogEntry("mobius_one_crossing", ("N",), mobius_one_crossing, "reduced", "mobius",
                 lambda N: 1, lambda N: 1),
    CatalogEntry("mobius_odd", ("N", "k"), mobius_odd, "reduced", "mobius",
                 lambda N, k: 2 * k + 1, lambda N, k: 2 * k + 1),
    CatalogEntry("mobius_even", ("N", "m"), mobius_even, "T", None,
                 lambda N, m: 2 * N * (2 * m + 1), lambda N, m: 2 * m + 1),
    CatalogEntry("k6_twisted", ("n",), k6_twisted, "reduced", "K6-sec5",
                 lambda n: -2 * n - 3, lambda n: 2 * n + 3),
    CatalogEntry("heawood_twisted", ("k", "m", "n"), heawood_twisted, "reduced", "Heawood",
                 lambda k, m, n: 10 * (k + m + n) + 15, lambda k, m, n: 2 * (k + m + n) + 3),
    CatalogEntry("heawood_standard", (), heawood_standard, "reduced", "Heawood", lambda: 49, lambda: 14),
    CatalogEntry("hopf_2k3", ("c",), hopf_2k3, "reduced", "2K3", lambda c: 2 * c, lambda c: 2 * abs(c)),
)}


def build(name: str, *params: int) -> Diagram:
    entry = CATALOG.get(name)
    if entry is None:
        raise CatalogError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}")
    if len(params) > len(entry.params):
        raise CatalogError(f"{name} takes parameters ({', '.join(entry.params)})")
    return entry.build(*params)
