"""Pure-Python diagonalization kernel (exact, arbitrary precision).

Rows are kept as sparse dicts.  The pivot rule is shared with the compiled
kernel so both produce identical transforms: the nonzero entry of least
absolute value in the active block, first in row-major order; during a
clearing round the replacement pivot is the smallest remainder, column
entries before row entries.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

SparseRow = Dict[int, int]


def _axpy(target: SparseRow, src: SparseRow, q: int) -> None:
    """``target -= q * src`` in place."""
    for k, v in src.items():
        nv = target.get(k, 0) - q * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def _swap_keys(row: SparseRow, a: int, b: int) -> None:
    va = row.pop(a, 0)
    vb = row.pop(b, 0)
    if va:
        row[b] = va
    if vb:
        row[a] = vb


def diagonalize(
    data: Sequence[Sequence[int]],
    nrows: int,
    ncols: int,
    track_u: bool = True,
    track_v: bool = True,
) -> Tuple[List[int], Optional[List[List[int]]], Optional[List[List[int]]]]:
    """Return ``(diag, U, V)`` with ``U A V`` diagonal, ``diag`` its nonzero part.

    The diagonal is not yet normalized (signs, divisibility).
    """
    rows: List[SparseRow] = [{j: v for j, v in enumerate(r) if v} for r in data]
    U: Optional[List[SparseRow]] = [{i: 1} for i in range(nrows)] if track_u else None
    # V is stored by columns.
    V: Optional[List[SparseRow]] = [{j: 1} for j in range(ncols)] if track_v else None
    diag: List[int] = []

    def swap_rows(a: int, b: int) -> None:
        if a != b:
            rows[a], rows[b] = rows[b], rows[a]
            if U is not None:
                U[a], U[b] = U[b], U[a]

    def swap_cols(a: int, b: int, start: int) -> None:
        if a != b:
            for i in range(start, nrows):
                _swap_keys(rows[i], a, b)
            if V is not None:
                V[a], V[b] = V[b], V[a]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        best = 0
        bi = bj = -1
        for i in range(t, nrows):
            row = rows[i]
            for j, v in row.items():
                a = v if v > 0 else -v
                if best == 0 or a < best or (a == best and i == bi and j < bj):
                    best, bi, bj = a, i, j
            if best == 1:
                break
        if best == 0:
            break
        swap_rows(t, bi)
        swap_cols(t, bj, t)

        while True:
            prow = rows[t]
            p = prow[t]
            # clear column t below the pivot
            for i in range(t + 1, nrows):
                a = rows[i].get(t)
                if a:
                    q = a // p
                    if q:
                        _axpy(rows[i], prow, q)
                        if U is not None:
                            _axpy(U[i], U[t], q)
            col_rows = [i for i in range(t + 1, nrows) if rows[i].get(t)]
            # clear row t right of the pivot
            for j in sorted(k for k in prow if k != t):
                a = prow.get(j)
                if not a:
                    continue
                q = a // p
                if q:
                    for i in [t] + col_rows:
                        r = rows[i]
                        nv = r.get(j, 0) - q * r[t]
                        if nv:
                            r[j] = nv
                        else:
                            r.pop(j, None)
                    if V is not None:
                        _axpy(V[j], V[t], q)
            row_rest = sorted(k for k in prow if k != t)
            if not col_rows and not row_rest:
                break
            best = 0
            which = None
            for i in col_rows:
                a = abs(rows[i][t])
                if best == 0 or a < best:
                    best, which = a, ("r", i)
            for j in row_rest:
                a = abs(prow[j])
                if best == 0 or a < best:
                    best, which = a, ("c", j)
            if which[0] == "r":
                swap_rows(t, which[1])
            else:
                swap_cols(t, which[1], t)
        diag.append(rows[t][t])
        t += 1

    U_dense = None
    if U is not None:
        U_dense = [[0] * nrows for _ in range(nrows)]
        for i, r in enumerate(U):
            for k, v in r.items():
                U_dense[i][k] = v
    V_dense = None
    if V is not None:
        V_dense = [[0] * ncols for _ in range(ncols)]
        for j, col in enumerate(V):
            for k, v in col.items():
                V_dense[k][j] = v
    return diag, U_dense, V_dense
