"""Epsilon-coefficient tables: homomorphisms L(G) -> Z given by their values
on disjoint edge pairs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import families as fam
from .graph import GraphError, LabeledGraph, ParseError, tokenize
from .linking import delta_generators, linking_module
from .snf import solve_integer


class EpsilonError(GraphError):
    pass


@dataclass(frozen=True)
class EpsilonTable:
    """Integer values over ``graph.pairs`` (dense, in pair-basis order)."""

    graph: LabeledGraph
    values: Tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.values) != len(self.graph.pairs):
            raise EpsilonError(f"table has {len(self.values)} values, graph has {len(self.graph.pairs)} pairs")

    @property
    def m_eps(self) -> int:
        return max((abs(v) for v in self.values), default=0)

    def __call__(self, a, b) -> int:
        g = self.graph
        ia = g.index[a] if isinstance(a, str) else a
        ib = g.index[b] if isinstance(b, str) else b
        return self.values[g.pair_key(ia, ib)]

    def items(self):
        """``((label, label), value)`` for every disjoint pair."""
        g = self.graph
        for (i, j), v in zip(g.pairs, self.values):
            yield (g.edges[i].label, g.edges[j].label), v

    def renamed(self, name: str) -> "EpsilonTable":
        return EpsilonTable(self.graph, self.values, name)

    def __add__(self, other: "EpsilonTable") -> "EpsilonTable":
        return combine_epsilons([(1, self), (1, other)])

    def scaled(self, c: int) -> "EpsilonTable":
        return EpsilonTable(self.graph, tuple(c * v for v in self.values), self.name)


def table_from_function(g: LabeledGraph, fn, name: str = "") -> EpsilonTable:
    """Build a table by evaluating ``fn(edge_a, edge_b)`` on every disjoint pair."""
    return EpsilonTable(g, tuple(int(fn(g.edges[i], g.edges[j])) for i, j in g.pairs), name)


def table_from_pairs(g: LabeledGraph, values: Dict[Tuple[str, str], int], name: str = "") -> EpsilonTable:
    out = [0] * len(g.pairs)
    for (a, b), v in values.items():
        if a not in g.index or b not in g.index:
            raise EpsilonError(f"unknown edge in pair ({a}, {b})")
        ia, ib = g.index[a], g.index[b]
        if not g.disjoint(ia, ib):
            raise EpsilonError(f"edges {a} and {b} are not disjoint")
        out[g.pair_key(ia, ib)] = int(v)
    return EpsilonTable(g, tuple(out), name)


# -- homomorphism check --------------------------------------------------------

@dataclass(frozen=True)
class HomomorphismCheck:
    ok: bool
    witness: Optional[Tuple[str, str]] = None  # (edge label, vertex)
    value: int = 0

    def __bool__(self):
        return self.ok


def verify_homomorphism(t: EpsilonTable) -> HomomorphismCheck:
    """True iff the table kills every delta generator."""
    g = t.graph
    for e, v, vec in delta_generators(g):
        s = sum(c * t.values[k] for k, c in vec.items())
        if s:
            return HomomorphismCheck(False, (g.edges[e].label, v), s)
    return HomomorphismCheck(True)


# -- solving -------------------------------------------------------------------

@dataclass(frozen=True)
class EpsilonSolution:
    """All homomorphisms matching the pins: ``particular + span(basis)``."""

    graph: LabeledGraph
    particular: Optional[EpsilonTable]
    basis: Tuple[EpsilonTable, ...] = ()

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def unique(self) -> bool:
        return self.consistent and not self.basis


def _pin_index(g: LabeledGraph, pair) -> int:
    a, b = pair
    ia = g.index[a] if isinstance(a, str) else a
    ib = g.index[b] if isinstance(b, str) else b
    if not g.disjoint(ia, ib):
        raise EpsilonError(f"pin on adjacent pair ({g.edges[ia].label}, {g.edges[ib].label})")
    return g.pair_key(ia, ib)


def solve_epsilon(g: LabeledGraph, pins: Iterable[Tuple[Tuple, int]], name: str = "") -> EpsilonSolution:
    """Every integer table vanishing on B(G) with the given pinned values."""
    mod = linking_module(g)
    hom = mod.hom_basis()
    r = mod.rank
    pins = [(_pin_index(g, pair), int(v)) for pair, v in pins]
    if r == 0:
        ok = all(v == 0 for _, v in pins)
        zero = EpsilonTable(g, (0,) * len(g.pairs), name)
        return EpsilonSolution(g, zero if ok else None)
    rows = [[hom[j][k] for j in range(r)] for k, _ in pins]
    rhs = [v for _, v in pins]

    def combo(coeffs):
        vals = [0] * len(g.pairs)
        for j, c in enumerate(coeffs):
            if c:
                for k, h in enumerate(hom[j]):
                    if h:
                        vals[k] += c * h
        return tuple(vals)

    if not rows:
        return EpsilonSolution(g, EpsilonTable(g, (0,) * len(g.pairs), name),
                               tuple(EpsilonTable(g, tuple(h)) for h in hom))
    sol = solve_integer(rows, rhs, r)
    if sol is None:
        return EpsilonSolution(g, None)
    return EpsilonSolution(g, EpsilonTable(g, combo(sol.particular), name),
                           tuple(EpsilonTable(g, combo(k)) for k in sol.kernel))


def unit_table(g: LabeledGraph, pair, name: str = "") -> EpsilonTable:
    """The unique homomorphism of a rank-1 graph taking ``pair`` to 1."""
    sol = solve_epsilon(g, [(pair, 1)], name)
    if not sol.unique:
        raise EpsilonError(f"pin {pair} does not determine a unique table on {g.name}")
    return sol.particular


# -- builtin tables ------------------------------------------------------------

def _hex_point(v: str) -> Tuple[int, int]:
    # affine image of a regular hexagon, w_k at angle 60k degrees
    pts = {1: (1, 1), 2: (-1, 1), 3: (-2, 0), 4: (-1, -1), 5: (1, -1), 6: (2, 0)}
    return pts[int(v[1:])]


def _hex_relation(a, b) -> int:
    """+1 parallel, -1 anti-parallel, 0 neither, for edges drawn on the hexagon."""
    (p0, p1), (q0, q1) = (_hex_point(a.tail), _hex_point(a.head)), (_hex_point(b.tail), _hex_point(b.head))
    u = (p1[0] - p0[0], p1[1] - p0[1])
    w = (q1[0] - q0[0], q1[1] - q0[1])
    if u[0] * w[1] - u[1] * w[0]:
        return 0
    return 1 if u[0] * w[0] + u[1] * w[1] > 0 else -1


def _k6_weighted(a, b) -> int:
    s = "".join(sorted(a.label[0] + b.label[0]))
    rel = _hex_relation(a, b)
    if s == "xx":
        return 3 if rel == -1 else 2
    if s == "yy":
        return 0 if rel == -1 else -1
    if s == "xz":
        if rel == 0:
            raise EpsilonError("x-z pair neither parallel nor anti-parallel")
        return rel
    return {"zz": 1, "xy": -1, "yz": 0}[s]


def _k6_unit(a, b) -> int:
    s = "".join(sorted(a.label[0] + b.label[0]))
    if s == "xz":
        # sign of the x-z coefficient follows orientation: the unique
        # homomorphism with the other values as listed
        return _hex_relation(a, b)
    return {"xx": 1, "zz": 1, "yy": -1, "xy": 0, "yz": 0}[s]


def _k7(a, b) -> int:
    return -1 if {a.label[0], b.label[0]} == {"x", "y"} else 1


def mobius_coefficient(g: LabeledGraph, a, b) -> int:
    n = len(g.vertices) // 2
    big_n = (n - 1) // 2
    d = fam.outer_edge_distance(g, a.id, b.id)
    s = a.label[0] + b.label[0]
    if s == "xx":
        if d == 2 * big_n:
            return -1
        if d % 2 == 1 and d != 2 * big_n - 1:
            return 2
        return 1
    if s in ("xy", "yx"):
        return 2 if d == 1 else 3
    return 2 if d == 1 else 5 if d == 2 else 6


def _chord_joins(g: LabeledGraph, a, b) -> bool:
    for e in g.edges:
        if e.label[0] != "y":
            continue
        ends = set(e.ends)
        if ends & set(a.ends) and ends & set(b.ends):
            return True
    return False


def heawood_coefficient(g: LabeledGraph, a, b) -> int:
    d = fam.outer_edge_distance(g, a.id, b.id)
    s = a.label[0] + b.label[0]
    if s == "xx":
        if d in (1, 4):
            return 2
        if d in (3, 5) and _chord_joins(g, a, b):
            return -2
        if d == 5:
            return -3
        if d == 6:
            return 5
        return 1
    if s in ("xy", "yx"):
        return {1: 2, 2: 3, 4: 3, 3: -1}[d]
    return {1: 2, 2: 5}[d]


def mobius3_simon() -> EpsilonTable:
    """The K33 Simon table carried to ``Mobius(3)`` by ``p_i -> u_i`` (hexagon
    to outer cycle, ``b_i`` to the rung at the same vertices)."""
    src = fam.build_family("K33")
    dst = fam.build_family("Mobius", 3)
    base = builtin_epsilon("K33")
    mapping = {}
    for e in src.edges:
        t = "u" + e.tail[1:]
        h = "u" + e.head[1:]
        k = dst.edge_between(t, h)
        mapping[e.id] = (k, 1 if dst.edges[k].tail == t else -1)
    out = [0] * len(dst.pairs)
    for (i, j), v in zip(src.pairs, base.values):
        (ki, di), (kj, dj) = mapping[i], mapping[j]
        out[dst.pair_key(ki, kj)] = di * dj * v
    return EpsilonTable(dst, tuple(out), "Mobius3-simon")


BUILTIN_NAMES = ("2K3", "K5", "K33", "K6-ex27", "K6-sec5", "K7", "Mobius", "Heawood", "Mobius3-simon")


@lru_cache(maxsize=None)
def builtin_epsilon(name: str, *params: int) -> EpsilonTable:
    """Named tables under the conventions frozen in :mod:`sgi.families`.

    ``Mobius`` takes the rung count ``2N+1`` (odd, at least 5).
    """
    key = name.lower()
    if key == "2k3":
        return unit_table(fam.build_family("2K3"), ("e1", "d1"), "2K3")
    if key in ("k5",):
        return unit_table(fam.build_family("K5"), ("e1", "e3"), "K5")
    if key in ("k33", "k3,3"):
        return unit_table(fam.build_family("K33"), ("c1", "c3"), "K33")
    if key == "k7":
        return table_from_function(fam.build_family("K7"), _k7, "K7")
    if key in ("k6-ex27", "k6"):
        return table_from_function(fam.build_family("K6"), _k6_weighted, "K6-ex27")
    if key == "k6-sec5":
        return table_from_function(fam.build_family("K6"), _k6_unit, "K6-sec5")
    if key == "heawood":
        g = fam.build_family("Heawood")
        return table_from_function(g, lambda a, b: heawood_coefficient(g, a, b), "Heawood")
    if key == "mobius":
        if len(params) != 1:
            raise EpsilonError("Mobius table needs the rung count")
        n = int(params[0])
        if n % 2 == 0:
            raise EpsilonError("the Mobius table is defined for an odd number of rungs")
        if n < 5:
            raise EpsilonError("the Mobius table needs N >= 2 (five or more rungs); use K33 for M3")
        g = fam.build_family("Mobius", n)
        return table_from_function(g, lambda a, b: mobius_coefficient(g, a, b), f"Mobius{n}")
    if key == "mobius3-simon":
        return mobius3_simon()
    raise EpsilonError(f"unknown builtin epsilon table {name!r}")


def builtin_for_graph(name: str, g: LabeledGraph) -> EpsilonTable:
    """Resolve a builtin name against a graph (``mobius`` picks the rung count)."""
    key = name.lower()
    if key == "mobius":
        family, params = fam.family_of(g)
        if family != "Mobius":
            raise EpsilonError(f"graph {g.name} is not a Mobius ladder")
        t = builtin_epsilon("Mobius", *params)
    else:
        t = builtin_epsilon(name)
    if t.graph != g:
        raise EpsilonError(f"table {t.name} is for {t.graph.name}, not {g.name}")
    return t


# -- pullback and combination --------------------------------------------------

def pullback_epsilon(emb: fam.SubgraphEmbedding, tq: EpsilonTable) -> EpsilonTable:
    if tq.graph != emb.pattern:
        raise EpsilonError("pattern table is not on the embedding's pattern graph")
    host = emb.host
    emap = emb.edge_map
    out = [0] * len(host.pairs)
    pat = emb.pattern
    for k, (i, j) in enumerate(host.pairs):
        if i in emap and j in emap:
            (pi, di), (pj, dj) = emap[i], emap[j]
            if pi != pj and pat.disjoint(pi, pj):
                out[k] = di * dj * tq.values[pat.pair_key(pi, pj)]
    return EpsilonTable(host, tuple(out), f"{tq.name}@{emb.name}")


def combine_epsilons(terms: Sequence[Tuple[int, EpsilonTable]], name: str = "") -> EpsilonTable:
    if not terms:
        raise EpsilonError("nothing to combine")
    g = terms[0][1].graph
    out = [0] * len(g.pairs)
    for c, t in terms:
        if t.graph != g:
            raise EpsilonError("tables live on different graphs")
        for k, v in enumerate(t.values):
            out[k] += c * v
    return EpsilonTable(g, tuple(out), name)


# -- decomposition -------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionTerm:
    embedding: fam.SubgraphEmbedding
    coefficient: int
    table: EpsilonTable


@dataclass(frozen=True)
class DecompositionResult:
    """``m * target == sum(coefficient * pullback(table))``; ``m == 0`` means
    the target is not in the span of the given subgraph tables."""

    target: EpsilonTable
    m: int
    terms: Tuple[DecompositionTerm, ...] = ()
    groups: Tuple[Tuple[str, int], ...] = ()

    @property
    def decomposable(self) -> bool:
        return self.m != 0


def _rational_solve(cols: List[List[int]], rhs: Sequence[int]) -> Optional[List[Fraction]]:
    """One solution of ``sum_k x_k cols[k] == rhs`` (free variables zero)."""
    nv = len(cols)
    rows = [[Fraction(cols[k][i]) for k in range(nv)] + [Fraction(rhs[i])] for i in range(len(rhs))]
    piv_cols = []
    r = 0
    for c in range(nv):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    x = [Fraction(0)] * nv
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][-1]
    return x


def decompose_epsilon(target: EpsilonTable,
                      terms: Sequence[Tuple[fam.SubgraphEmbedding, EpsilonTable]],
                      groups: Optional[Sequence[str]] = None) -> DecompositionResult:
    """Find the least ``m > 0`` and integers ``m_q`` with
    ``m * target == sum m_q * pullback(eps_q)``.

    ``groups`` (one name per term) ties terms sharing a name to one common
    coefficient, e.g. a rotation family.
    """
    if not terms:
        raise EpsilonError("empty subgraph list")
    pulls = [pullback_epsilon(e, t) for e, t in terms]
    names = list(groups) if groups is not None else [str(k) for k in range(len(terms))]
    if len(names) != len(terms):
        raise EpsilonError("one group name per term is required")
    order = list(dict.fromkeys(names))
    cols = []
    for gname in order:
        acc = [0] * len(target.values)
        for p, nm in zip(pulls, names):
            if nm == gname:
                acc = [a + b for a, b in zip(acc, p.values)]
        cols.append(acc)
    x = _rational_solve(cols, target.values)
    if x is None:
        return DecompositionResult(target, 0)
    m = 1
    for q in x:
        m = lcm(m, q.denominator)
    coeff = {gname: int(q * m) for gname, q in zip(order, x)}
    out = tuple(DecompositionTerm(e, coeff[nm], t) for (e, t), nm in zip(terms, names))
    res = DecompositionResult(target, m, out, tuple((g, coeff[g]) for g in order) if groups is not None else ())
    if not verify_decomposition(res):
        raise AssertionError("decomposition failed its own check")
    return res


def verify_decomposition(res: DecompositionResult) -> bool:
    if not res.m:
        return False
    combo = combine_epsilons([(t.coefficient, pullback_epsilon(t.embedding, t.table)) for t in res.terms])
    return combo.values == tuple(res.m * v for v in res.target.values)


# -- subgraph tables used by the worked decompositions -------------------------

def _pattern_pin(emb: fam.SubgraphEmbedding, a: str, b: str) -> Tuple[int, int]:
    """Pattern pair carrying host edges ``a`` and ``b``, with the sign relating
    the pattern orientation to the host one."""
    ia, ib = emb.host.index[a], emb.host.index[b]
    emap = emb.edge_map
    if ia not in emap or ib not in emap:
        raise EpsilonError(f"pin edges {a}, {b} not both in {emb.name}")
    (pa, da), (pb, db) = emap[ia], emap[ib]
    return (pa, pb), da * db


def host_pinned_table(emb: fam.SubgraphEmbedding, a: str, b: str) -> EpsilonTable:
    """Rank-1 pattern table whose pullback takes the host pair ``(a, b)`` to 1."""
    pair, sign = _pattern_pin(emb, a, b)
    return unit_table(emb.pattern, pair, f"unit({a},{b})").scaled(sign)


def mobius_combined_terms(n: int):
    """Subgraph terms of the outer-cycle-plus-three-rungs combination."""
    big_n = (n - 1) // 2
    out = []
    for q, emb in enumerate(fam.mobius_k33_family(n)):
        a = f"x{q % (2 * n) + 1}"
        b = f"x{(q + 2 * big_n + 1) % (2 * n) + 1}"
        out.append((emb, host_pinned_table(emb, a, b)))
    return out


def heawood_combined_terms():
    out = []
    for q, emb in enumerate(fam.heawood_k33_family()):
        a = f"x{(2 * q) % 14 + 1}"
        b = f"x{(7 + 2 * q) % 14 + 1}"
        out.append((emb, host_pinned_table(emb, a, b)))
    return out


def combined_table(terms, name: str) -> EpsilonTable:
    return combine_epsilons([(1, pullback_epsilon(e, t)) for e, t in terms], name)


def mobius_combined(n: int) -> EpsilonTable:
    return combined_table(mobius_combined_terms(n), f"Mobius{n}-combined")


def heawood_combined() -> EpsilonTable:
    return combined_table(heawood_combined_terms(), "Heawood-combined")


def k6_k5_terms():
    out = []
    for q, emb in enumerate(fam.k6_k5_family(), start=1):
        a = f"x{q}"
        b = f"x{(q + 2) % 6 + 1}"
        out.append((emb, host_pinned_table(emb, a, b)))
    return out


# -- file format ---------------------------------------------------------------

def format_epsilon(t: EpsilonTable, skip_zero: bool = True) -> str:
    lines = [f"epsilon {t.graph.name}"]
    for (a, b), v in t.items():
        if v or not skip_zero:
            lines.append(f"{a} {b} {v}")
    return "\n".join(lines) + "\n"


def parse_epsilon(text: str, g: LabeledGraph, name: str = "") -> EpsilonTable:
    """Read a ``.eps.txt`` table for graph ``g``; omitted pairs are 0."""
    header = None
    vals = [0] * len(g.pairs)
    seen = set()
    for lineno, toks in tokenize(text):
        if header is None:
            if toks[0] != "epsilon" or len(toks) != 2:
                raise ParseError(lineno, "expected 'epsilon <graph-name>'")
            header = toks[1]
            if header != g.name:
                raise ParseError(lineno, f"table is for {header}, graph is {g.name}")
            continue
        if len(toks) != 3:
            raise ParseError(lineno, "expected '<edge> <edge> <integer>'")
        a, b, v = toks
        for lab in (a, b):
            if lab not in g.index:
                raise ParseError(lineno, f"unknown edge {lab!r}")
        ia, ib = g.index[a], g.index[b]
        if ia == ib or not g.disjoint(ia, ib):
            raise ParseError(lineno, f"edges {a} and {b} are not disjoint")
        try:
            val = int(v)
        except ValueError:
            raise ParseError(lineno, f"bad integer {v!r}") from None
        k = g.pair_key(ia, ib)
        if k in seen:
            raise ParseError(lineno, f"pair ({a}, {b}) given twice")
        seen.add(k)
        vals[k] = val
    if header is None:
        raise ParseError(0, "empty epsilon file")
    return EpsilonTable(g, tuple(vals), name or header)


def k7_family_terms():
    """``(embedding, table)`` for G, H, F, J members, with the family names."""
    out, names = [], []
    for name, members in fam.k7_families().items():
        a0, b0 = fam.K7_FAMILY_PIN[name]
        for q, emb in enumerate(members):
            a, b = fam._k7_shift(a0, q), fam._k7_shift(b0, q)
            out.append((emb, host_pinned_table(emb, a, b)))
            names.append(name)
    return out, names
