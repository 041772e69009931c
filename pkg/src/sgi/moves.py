"""Reidemeister moves for graph diagrams as crossing-list edits.

Move parameters never mention raw positions.  A strand is named by its
*rank* along its edge (0 = nearest the tail) and an insertion point by a
*slot* (0 = before every strand, k = after the k-th).  This keeps move logs
valid across serialisation and renumbering.

Kinds and parameters (the log format is ``<kind> <params...>``):

``R1+ e slot over_first sign``
    self-crossing of ``e`` at two new consecutive strands.
``R1- e rank``
    delete the self-crossing whose strands sit at ranks ``rank, rank+1``.
``R2+ a slot_a b slot_b sign``
    ``a`` passes over ``b`` twice (signs ``sign``, ``-sign``), ``a != b``.
``R2- a rank``
    delete the pair of crossings at ranks ``rank, rank+1`` on ``a``.
``R3 e1 r1 e2 r2 e3 r3``
    slide a strand past a crossing; the three crossings are named by one
    strand each and their positions swap pairwise along all three strands.
``T+ v a b sign``
    twist at vertex ``v``: ``a`` over ``b`` at their ``v`` ends.
``T- e rank``
    delete a twist crossing.
``S+ e v slot over sign``
    slide edge ``e`` over (``over=1``) or under vertex ``v``: one crossing
    with each edge at ``v``, sign ``sign * (+1 if the edge starts at v else -1)``.
``S- e rank v``
    delete a slide block starting at ``rank`` on ``e``.
``CC e rank``
    crossing change (not an isotopy).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import Crossing, Diagram, DiagramError

GAP = 1024

INSERT_KINDS = ("R1+", "R2+", "T+", "S+")
DELETE_KINDS = ("R1-", "R2-", "T-", "S-")
ISOTOPY_KINDS = ("R1+", "R1-", "R2+", "R2-", "R3", "T+", "T-", "S+", "S-")
ALL_KINDS = ISOTOPY_KINDS + ("CC",)


class MoveError(DiagramError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str
    params: Tuple

    def __str__(self):
        return " ".join([self.kind] + [str(p) for p in self.params])


# -- helpers -----------------------------------------------------------------

class _Work:
    """Mutable scratch copy of a diagram used while applying one move."""

    def __init__(self, d: Diagram):
        self.g = d.graph
        self.cross: List[Optional[Crossing]] = list(d.crossings)
        self.order = d.strand_order()

    def label(self, e: int) -> str:
        return self.g.edges[e].label

    def strand(self, e: int, rank: int):
        seq = self.order[e]
        if not 0 <= rank < len(seq):
            raise MoveError(f"edge {self.label(e)} has no strand of rank {rank}")
        return seq[rank]

    def rank_of(self, e: int, pos: int) -> int:
        for r, (p, _, _) in enumerate(self.order[e]):
            if p == pos:
                return r
        raise MoveError("strand not found")

    def free_positions(self, e: int, slot: int, k: int) -> List[int]:
        """``k`` increasing positions strictly inside gap ``slot`` of edge ``e``."""
        seq = self.order[e]
        if not 0 <= slot <= len(seq):
            raise MoveError(f"edge {self.label(e)} has no slot {slot}")
        lo = seq[slot - 1][0] if slot > 0 else -1
        hi = seq[slot][0] if slot < len(seq) else lo + GAP * (k + 1)
        if hi - lo - 1 < k:
            self.renumber(e)
            return self.free_positions(e, slot, k)
        step = (hi - lo) // (k + 1)
        return [lo + step * (i + 1) for i in range(k)]

    def renumber(self, e: int):
        mapping = {p: GAP * (i + 1) for i, (p, _, _) in enumerate(self.order[e])}
        for _, ci, role in self.order[e]:
            c = self.cross[ci]
            if role == 0:
                c = Crossing(c.over, mapping[c.over_pos], c.under, c.under_pos, c.sign)
            else:
                c = Crossing(c.over, c.over_pos, c.under, mapping[c.under_pos], c.sign)
            self.cross[ci] = c
        self.order = Diagram(self.g, tuple(self.cross)).strand_order()

    def end_slot(self, e: int, v: str) -> int:
        """Slot at the ``v`` end of edge ``e``."""
        edge = self.g.edges[e]
        if edge.head == v:
            return len(self.order[e])
        if edge.tail == v:
            return 0
        raise MoveError(f"vertex {v} is not on edge {edge.label}")

    def at_end(self, e: int, pos: int, v: str) -> bool:
        seq = self.order[e]
        edge = self.g.edges[e]
        if not seq:
            return False
        if edge.head == v and seq[-1][0] == pos:
            return True
        if edge.tail == v and seq[0][0] == pos:
            return True
        return False

    def result(self) -> Diagram:
        return Diagram(self.g, tuple(c for c in self.cross if c is not None))


def _edge(g, name) -> int:
    if isinstance(name, int):
        return name
    if name not in g.index:
        raise MoveError(f"unknown edge {name!r}")
    return g.index[name]


def _sign(s) -> int:
    s = int(s)
    if s not in (1, -1):
        raise MoveError("sign must be +1 or -1")
    return s


def _other(c: Crossing, role: int) -> Tuple[int, int]:
    return (c.under, c.under_pos) if role == 0 else (c.over, c.over_pos)


# -- apply -------------------------------------------------------------------

def apply(d: Diagram, m: Move) -> Diagram:
    """Apply a move; raises :class:`MoveError` when its pattern is absent."""
    fn = _APPLY.get(m.kind)
    if fn is None:
        raise MoveError(f"unknown move kind {m.kind!r}")
    return fn(_Work(d), *m.params)


def _r1_insert(w: _Work, e, slot, over_first, sign):
    e = _edge(w.g, e)
    p, q = w.free_positions(e, int(slot), 2)
    if int(over_first):
        w.cross.append(Crossing(e, p, e, q, _sign(sign)))
    else:
        w.cross.append(Crossing(e, q, e, p, _sign(sign)))
    return w.result()


def _r1_delete(w: _Work, e, rank):
    e = _edge(w.g, e)
    rank = int(rank)
    _, c1, _ = w.strand(e, rank)
    _, c2, _ = w.strand(e, rank + 1)
    if c1 != c2:
        raise MoveError("strands are not the two ends of one self-crossing")
    w.cross[c1] = None
    return w.result()


def _r2_insert(w: _Work, a, slot_a, b, slot_b, sign):
    a, b = _edge(w.g, a), _edge(w.g, b)
    if a == b:
        raise MoveError("R2 insertion needs two different edges")
    s = _sign(sign)
    pa = w.free_positions(a, int(slot_a), 2)
    pb = w.free_positions(b, int(slot_b), 2)
    w.cross.append(Crossing(a, pa[0], b, pb[0], s))
    w.cross.append(Crossing(a, pa[1], b, pb[1], -s))
    return w.result()


def _r2_delete(w: _Work, a, rank):
    a = _edge(w.g, a)
    rank = int(rank)
    _, c1, r1 = w.strand(a, rank)
    _, c2, r2 = w.strand(a, rank + 1)
    x, y = w.cross[c1], w.cross[c2]
    if c1 == c2 or r1 != r2:
        raise MoveError("strands do not form an R2 pair")
    (b1, q1), (b2, q2) = _other(x, r1), _other(y, r2)
    if b1 != b2 or b1 == a:
        raise MoveError("R2 pair must join the same two different edges")
    if abs(w.rank_of(b1, q1) - w.rank_of(b2, q2)) != 1:
        raise MoveError("R2 strands are not adjacent on the second edge")
    if x.sign == y.sign:
        raise MoveError("R2 pair must have opposite signs")
    w.cross[c1] = w.cross[c2] = None
    return w.result()


def _r3(w: _Work, e1, r1, e2, r2, e3, r3):
    cs = []
    for e, r in ((e1, r1), (e2, r2), (e3, r3)):
        _, ci, _ = w.strand(_edge(w.g, e), int(r))
        cs.append(ci)
    if len(set(cs)) != 3:
        raise MoveError("R3 needs three different crossings")

    def adjacent(s, t):
        return s[0] == t[0] and abs(w.rank_of(s[0], s[1]) - w.rank_of(t[0], t[1])) == 1

    from itertools import permutations
    for tm, tb, mb in permutations(cs):
        x, y, z = w.cross[tm], w.cross[tb], w.cross[mb]
        top = ((x.over, x.over_pos), (y.over, y.over_pos))
        mid = ((x.under, x.under_pos), (z.over, z.over_pos))
        bot = ((y.under, y.under_pos), (z.under, z.under_pos))
        if all(adjacent(s, t) for s, t in (top, mid, bot)):
            w.cross[tm] = Crossing(x.over, y.over_pos, x.under, z.over_pos, x.sign)
            w.cross[tb] = Crossing(y.over, x.over_pos, y.under, z.under_pos, y.sign)
            w.cross[mb] = Crossing(z.over, x.under_pos, z.under, y.under_pos, z.sign)
            return w.result()
    raise MoveError("crossings do not form an R3 triangle")


def _twist_insert(w: _Work, v, a, b, sign):
    a, b = _edge(w.g, a), _edge(w.g, b)
    if a == b:
        raise MoveError("twist needs two different edges")
    pa = w.free_positions(a, w.end_slot(a, v), 1)[0]
    pb = w.free_positions(b, w.end_slot(b, v), 1)[0]
    w.cross.append(Crossing(a, pa, b, pb, _sign(sign)))
    return w.result()


def _twist_delete(w: _Work, e, rank):
    e = _edge(w.g, e)
    pos, ci, role = w.strand(e, int(rank))
    c = w.cross[ci]
    f, fpos = _other(c, role)
    if f == e:
        raise MoveError("twist crossing must join two different edges")
    for v in set(w.g.edges[e].ends) & set(w.g.edges[f].ends):
        if w.at_end(e, pos, v) and w.at_end(f, fpos, v):
            w.cross[ci] = None
            return w.result()
    raise MoveError("crossing is not a twist at a shared vertex")


def _slide_insert(w: _Work, e, v, slot, over, sign):
    e = _edge(w.g, e)
    if v not in w.g.incident:
        raise MoveError(f"unknown vertex {v!r}")
    if v in w.g.edges[e].ends:
        raise MoveError("edge cannot slide over its own endpoint")
    s = _sign(sign)
    inc = w.g.incident[v]
    pe = w.free_positions(e, int(slot), len(inc))
    for k, p in zip(inc, pe):
        pk = w.free_positions(k, w.end_slot(k, v), 1)[0]
        sk = s * (1 if w.g.edges[k].tail == v else -1)
        if int(over):
            w.cross.append(Crossing(e, p, k, pk, sk))
        else:
            w.cross.append(Crossing(k, pk, e, p, -sk))
    return w.result()


def _slide_delete(w: _Work, e, rank, v):
    e = _edge(w.g, e)
    rank = int(rank)
    inc = w.g.incident.get(v)
    if inc is None:
        raise MoveError(f"unknown vertex {v!r}")
    deg = len(inc)
    block = [w.strand(e, rank + i) for i in range(deg)]
    roles = {r for _, _, r in block}
    if len(roles) != 1:
        raise MoveError("slide block mixes over and under strands")
    role = roles.pop()
    hit = {}
    for pos, ci, _ in block:
        c = w.cross[ci]
        k, kp = _other(c, role)
        if k not in inc or k in hit or not w.at_end(k, kp, v):
            raise MoveError("block does not cross each edge at the vertex once, at its end")
        sk = c.sign * (1 if w.g.edges[k].tail == v else -1)
        hit[k] = (ci, sk if role == 0 else -sk)
    if len({s for _, s in hit.values()}) != 1 or set(hit) != set(inc):
        raise MoveError("block signs do not match a single slide")
    for ci, _ in hit.values():
        w.cross[ci] = None
    return w.result()


def _crossing_change(w: _Work, e, rank):
    _, ci, _ = w.strand(_edge(w.g, e), int(rank))
    c = w.cross[ci]
    w.cross[ci] = Crossing(c.under, c.under_pos, c.over, c.over_pos, -c.sign)
    return w.result()


_APPLY = {
    "R1+": _r1_insert, "R1-": _r1_delete,
    "R2+": _r2_insert, "R2-": _r2_delete,
    "R3": _r3,
    "T+": _twist_insert, "T-": _twist_delete,
    "S+": _slide_insert, "S-": _slide_delete,
    "CC": _crossing_change,
}


# -- enumeration of applicable moves -------------------------------------------

def deletion_sites(d: Diagram, kind: str) -> List[Move]:
    """Every applicable deletion (or R3) move of one kind, in a fixed order."""
    if kind == "R3":
        return r3_sites(d)
    g = d.graph
    order = d.strand_order()
    cross = d.crossings
    rank = {(e, p): r for e, seq in order.items() for r, (p, _, _) in enumerate(seq)}

    def extremal(e, pos, v):
        seq = order[e]
        edge = g.edges[e]
        return bool(seq) and ((edge.head == v and seq[-1][0] == pos) or (edge.tail == v and seq[0][0] == pos))

    out = []
    seen = set()
    for e in g.edges:
        seq = order[e.id]
        for r, (pos, ci, role) in enumerate(seq):
            if kind == "R1-":
                if r + 1 < len(seq) and seq[r + 1][1] == ci:
                    out.append(Move(kind, (e.label, r)))
            elif kind == "R2-":
                if r + 1 >= len(seq):
                    continue
                _, cj, rolej = seq[r + 1]
                if cj == ci or rolej != role or frozenset((ci, cj)) in seen:
                    continue
                (b1, q1), (b2, q2) = _other(cross[ci], role), _other(cross[cj], rolej)
                if b1 == b2 and b1 != e.id and abs(rank[(b1, q1)] - rank[(b2, q2)]) == 1 \
                        and cross[ci].sign != cross[cj].sign:
                    seen.add(frozenset((ci, cj)))
                    out.append(Move(kind, (e.label, r)))
            elif kind == "T-":
                if role != 0:
                    continue
                f, fpos = _other(cross[ci], 0)
                if f == e.id:
                    continue
                if any(extremal(e.id, pos, v) and extremal(f, fpos, v)
                       for v in set(e.ends) & set(g.edges[f].ends)):
                    out.append(Move(kind, (e.label, r)))
            elif kind == "S-":
                k, kp = _other(cross[ci], role)
                for v in g.edges[k].ends:
                    if v in e.ends or not extremal(k, kp, v):
                        continue
                    deg = len(g.incident[v])
                    if r + deg > len(seq):
                        continue
                    m = Move(kind, (e.label, r, v))
                    try:
                        apply(d, m)
                    except MoveError:
                        continue
                    out.append(m)
            else:
                raise MoveError(f"not a deletion kind: {kind}")
    return out


def r3_sites(d: Diagram) -> List[Move]:
    """R3 triangles: two crossings adjacent along a top strand whose under
    strands meet at a third crossing adjacent to both."""
    g = d.graph
    order = d.strand_order()
    rank = {(e, p): r for e, seq in order.items() for r, (p, _, _) in enumerate(seq)}
    cross = d.crossings
    out = []
    seen = set()
    for e, seq in order.items():
        for r in range(len(seq) - 1):
            _, c1, role1 = seq[r]
            _, c2, role2 = seq[r + 1]
            if c1 == c2 or role1 or role2:
                continue
            for tm, tb in ((c1, c2), (c2, c1)):
                me, mp = _other(cross[tm], 0)
                be, bp = _other(cross[tb], 0)
                for dr in (-1, 1):
                    r2 = rank[(me, mp)] + dr
                    if not 0 <= r2 < len(order[me]):
                        continue
                    _, c3, role3 = order[me][r2]
                    if role3 or c3 in (c1, c2):
                        continue
                    z = cross[c3]
                    if z.under == be and abs(rank[(be, z.under_pos)] - rank[(be, bp)]) == 1:
                        key = frozenset((c1, c2, c3))
                        if key not in seen:
                            seen.add(key)
                            out.append(Move("R3", (g.edges[e].label, r, g.edges[e].label, r + 1,
                                                   g.edges[me].label, r2)))
    return out


def _sample_insert(d: Diagram, kind: str, rng: random.Random) -> Move:
    g = d.graph
    order = d.strand_order()
    slots = [len(order[e.id]) + 1 for e in g.edges]
    sign = rng.choice((1, -1))

    def weighted_edge(exclude=None):
        ids = [e.id for e in g.edges if e.id != exclude]
        return rng.choices(ids, weights=[slots[i] for i in ids])[0]

    if kind == "R1+":
        e = weighted_edge()
        return Move(kind, (g.edges[e].label, rng.randrange(slots[e]), rng.randrange(2), sign))
    if kind == "R2+":
        a = weighted_edge()
        b = weighted_edge(exclude=a)
        return Move(kind, (g.edges[a].label, rng.randrange(slots[a]), g.edges[b].label,
                           rng.randrange(slots[b]), sign))
    if kind == "T+":
        pairs = [(v, a, b) for v in g.vertices for a in g.incident[v] for b in g.incident[v] if a != b]
        v, a, b = rng.choice(pairs)
        return Move(kind, (v, g.edges[a].label, g.edges[b].label, sign))
    if kind == "S+":
        cand = [(e.id, v) for e in g.edges for v in g.vertices if v not in e.ends and g.incident[v]]
        e, v = rng.choices(cand, weights=[slots[e] for e, _ in cand])[0]
        return Move(kind, (g.edges[e].label, v, rng.randrange(slots[e]), rng.randrange(2), sign))
    raise MoveError(f"not an insertion kind: {kind}")


def random_walk(d: Diagram, steps: int, seed: int,
                kinds: Sequence[str] = ISOTOPY_KINDS) -> Tuple[Diagram, List[Move]]:
    """Seeded walk: each step picks a kind uniformly, then a uniformly random
    applicable instance of it (insertions are uniform over edge, slot, sign
    and flags).  A step with no applicable instance is skipped."""
    if steps < 0:
        raise MoveError("steps must be non-negative")
    rng = random.Random(seed)
    log: List[Move] = []
    cur = d
    for _ in range(steps):
        kind = rng.choice(list(kinds))
        if kind in INSERT_KINDS:
            m = _sample_insert(cur, kind, rng)
        elif kind == "CC":
            if not cur.crossings:
                continue
            c = cur.crossings[rng.randrange(len(cur.crossings))]
            order = cur.strand_order()[c.over]
            r = next(i for i, (p, _, _) in enumerate(order) if p == c.over_pos)
            m = Move("CC", (cur.graph.edges[c.over].label, r))
        else:
            sites = deletion_sites(cur, kind)
            if not sites:
                continue
            m = sites[rng.randrange(len(sites))]
        cur = apply(cur, m)
        log.append(m)
    return cur, log


# -- logs ----------------------------------------------------------------------

_ARITY = {"R1+": 4, "R1-": 2, "R2+": 5, "R2-": 2, "R3": 6, "T+": 4, "T-": 2, "S+": 5, "S-": 3, "CC": 2}
# parameters that are integers (others are edge labels or vertex names)
_INTS = {"R1+": (1, 2, 3), "R1-": (1,), "R2+": (1, 3, 4), "R2-": (1,), "R3": (1, 3, 5),
         "T+": (3,), "T-": (1,), "S+": (2, 3, 4), "S-": (1,), "CC": (1,)}


def format_log(moves: Sequence[Move]) -> str:
    return "".join(f"{m}\n" for m in moves)


def parse_log(text: str) -> List[Move]:
    from .graph import ParseError, tokenize
    out = []
    for lineno, toks in tokenize(text):
        kind, params = toks[0], toks[1:]
        if kind not in _ARITY:
            raise ParseError(lineno, f"unknown move kind {kind!r}")
        if len(params) != _ARITY[kind]:
            raise ParseError(lineno, f"{kind} takes {_ARITY[kind]} parameters")
        vals = []
        for i, p in enumerate(params):
            if i in _INTS[kind]:
                try:
                    vals.append(int(p))
                except ValueError:
                    raise ParseError(lineno, f"parameter {i + 1} of {kind} must be an integer") from None
            else:
                vals.append(p)
        out.append(Move(kind, tuple(vals)))
    return out


def replay(d: Diagram, moves: Sequence[Move]) -> Diagram:
    for m in moves:
        d = apply(d, m)
    return d
