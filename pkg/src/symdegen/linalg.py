"""Exact linear algebra over Q: fraction-free rank/determinant and nullspaces."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polyring import lcm_denominator


def _integer_rows(rows: Sequence[Sequence]) -> tuple:
    """Scale each row to integers; returns (int rows, product of scale factors)."""
    out = []
    scale = 1
    for row in rows:
        den = lcm_denominator(row)
        scale *= den
        out.append([int(x * den) for x in row])
    return out, scale


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination; entries may be int or Fraction."""
    a, _ = _integer_rows(rows)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            arc = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - arc * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(rows: Sequence[Sequence]):
    """Exact determinant of a square matrix with int or Fraction entries."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a, scale = _integer_rows(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * p - a[i][k] * a[k][j]) // prev
        prev = p
    det = sign * a[n - 1][n - 1]
    if scale == 1:
        return det
    out = Fraction(det, scale)
    return out.numerator if out.denominator == 1 else out


def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form over Q.  Returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {v : A v = 0} as lists of Fractions."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def sparse_nullspace(rows: Sequence[dict], ncols: int) -> list:
    """Nullspace for sparse rows given as {column: value} dicts."""
    pivots: dict = {}  # pivot column -> reduced row (normalized, pivot entry 1)
    for row in rows:
        v = {c: Fraction(x) for c, x in row.items() if x}
        # pivot rows are kept fully reduced, so one pass clears every pivot column
        for c in [c for c in v if c in pivots]:
            prow = pivots[c]
            f = v[c]
            for cc, x in prow.items():
                nv = v.get(cc, 0) - f * x
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        if not v:
            continue
        c = min(v)
        inv = 1 / v[c]
        v = {cc: x * inv for cc, x in v.items()}
        for pc, prow in pivots.items():
            if c in prow:
                f = prow[c]
                for cc, x in v.items():
                    nv = prow.get(cc, 0) - f * x
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[c] = v
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for pc, prow in pivots.items():
            x = prow.get(fc)
            if x:
                vec[pc] = -x
        basis.append(vec)
    return basis
