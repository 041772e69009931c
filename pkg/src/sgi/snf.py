"""Smith normal form and integer linear solving over Python ints.

Matrices are plain lists of lists of ``int``; all arithmetic is exact and
unbounded.  The routines here are sized for the matrices this package meets
(a few hundred rows and columns), not for asymptotic speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[int]:
    """Row vector times matrix."""
    if cols is None:
        cols = len(m[0]) if m else 0
    acc = [0] * cols
    for k, x in enumerate(v):
        if x:
            mk = m[k]
            for j in range(cols):
                if mk[j]:
                    acc[j] += x * mk[j]
    return acc


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_normal_form`.

    ``left @ A @ right == diag`` where ``diag`` has the invariant factors
    ``d_1 | d_2 | ... | d_r`` (all positive) on its leading diagonal.
    ``left`` is ``None`` unless it was requested.
    """

    shape: tuple
    invariants: tuple
    right: tuple
    left: Optional[tuple] = None

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.invariants if d > 1)


def smith_normal_form(a: Sequence[Sequence[int]], ncols: Optional[int] = None,
                      track_left: bool = False) -> SmithForm:
    """Diagonalise an integer matrix by unimodular row and column operations.

    Pivots are chosen by minimal absolute value.  ``ncols`` must be given when
    ``a`` has no rows.
    """
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    A = [list(map(int, row)) for row in a]
    V = identity(n)
    U = identity(m) if track_left else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = A[src], A[dst]
        for j in range(t, n):
            if rs[j]:
                rd[j] += q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]

    invariants = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = A[i][t]
                if x:
                    add_row(i, t, -(x // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                x = A[t][j]
                if x:
                    add_col(j, t, -(x // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remaining entry of row/col t onto the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            for j in range(t, n):
                A[t][j] = -A[t][j]
            if U is not None:
                U[t] = [-x for x in U[t]]
        invariants.append(A[t][t])
        t += 1

    return SmithForm(
        shape=(m, n),
        invariants=tuple(invariants),
        right=tuple(tuple(r) for r in V),
        left=tuple(tuple(r) for r in U) if U is not None else None,
    )


@dataclass(frozen=True)
class IntegerSolution:
    """All integer solutions ``x = particular + sum(c_k * kernel[k])``."""

    particular: tuple
    kernel: tuple


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> Optional[IntegerSolution]:
    """Solve ``a @ x == b`` over the integers; ``None`` when no solution exists."""
    if len(a) != len(b):
        raise ValueError("row count of a and length of b differ")
    sf = smith_normal_form(a, ncols=ncols, track_left=True)
    m = len(a)
    r = sf.rank
    ub = [sum(sf.left[i][k] * b[k] for k in range(m) if b[k]) for i in range(m)]
    if any(ub[i] for i in range(r, m)):
        return None
    z = [0] * ncols
    for i in range(r):
        q, rem = divmod(ub[i], sf.invariants[i])
        if rem:
            return None
        z[i] = q
    V = sf.right
    particular = tuple(sum(V[i][k] * z[k] for k in range(r) if z[k]) for i in range(ncols))
    kernel = tuple(tuple(V[i][k] for i in range(ncols)) for k in range(r, ncols))
    return IntegerSolution(particular, kernel)
