"""Degenerations of the generic symmetric matrix and their exact minors."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Sequence

from .polyring import Poly, Ring, VarId, hat, substitute, symmetric_ring


class Kind(str, Enum):
    GENERIC = "generic"
    CLONE = "clone"
    SPARSE = "sparse"
    GENERAL = "general"


@dataclass(frozen=True)
class Degeneration:
    kind: Kind
    m: int
    r: int = 0
    mapping: Mapping = field(default_factory=dict, compare=False)

    def image(self, v: VarId) -> Optional[VarId]:
        """Where the endomorphism sends the variable ``v`` (None means zero)."""
        v = hat(*v)
        if self.kind is Kind.CLONE:
            return hat(self.m - 1, self.m - 1) if v == (self.m, self.m) else v
        if self.kind is Kind.SPARSE:
            return None if v.i + v.j > 2 * self.m - self.r else v
        if self.kind is Kind.GENERAL:
            return self.mapping.get(v, v)
        return v

    def endomorphism(self) -> dict:
        ring = symmetric_ring(self.m)
        return {v: self.image(v) for v in ring.variables}

    def label(self) -> str:
        if self.kind is Kind.SPARSE:
            return f"sparse(m={self.m}, r={self.r})"
        return f"{self.kind.value}(m={self.m})"


def generic(m: int) -> Degeneration:
    return Degeneration(Kind.GENERIC, m)


def md_clone(m: int) -> Degeneration:
    """x_{m,m} -> x_{m-1,m-1}, all other variables fixed."""
    return Degeneration(Kind.CLONE, m)


def sparse(m: int, r: int) -> Degeneration:
    """Zero every slot with i + j > 2m - r."""
    return Degeneration(Kind.SPARSE, m, r)


def general(m: int, mapping: Mapping) -> Degeneration:
    clean = {}
    for v, w in mapping.items():
        clean[hat(*v)] = None if w is None else hat(*w)
    return Degeneration(Kind.GENERAL, m, mapping=clean)


@dataclass
class DegenMatrix:
    m: int
    entries: list  # m x m grid of VarId or None
    degeneration: Degeneration
    ring: Ring
    variables: list  # surviving variables in ring order

    def entry(self, i: int, j: int) -> Optional[VarId]:
        """Entry in 1-based slot (i, j)."""
        return self.entries[i - 1][j - 1]

    def poly_entries(self) -> list:
        ring = self.ring
        return [[ring.zero() if e is None else ring.gen(*e) for e in row] for row in self.entries]

    def slots(self, v: VarId) -> list:
        """All 1-based slots occupied by the variable ``v``."""
        return [
            (i + 1, j + 1)
            for i, row in enumerate(self.entries)
            for j, e in enumerate(row)
            if e == v
        ]

    def __str__(self) -> str:
        cells = [[("0" if e is None else f"x{e}") for e in row] for row in self.entries]
        w = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


def build(deg: Degeneration) -> DegenMatrix:
    m = deg.m
    if m < 2:
        raise ValueError("matrix size must be at least 2")
    if deg.kind is Kind.SPARSE and not 1 <= deg.r <= m - 2:
        raise ValueError(f"sparsing needs 1 <= r <= m-2, got r={deg.r}, m={m}")
    ring = symmetric_ring(m)
    if deg.kind is Kind.GENERAL:
        for v, w in deg.mapping.items():
            for u in (v, w):
                if u is not None and u not in ring.index:
                    raise ValueError(f"x{u} is not an entry of a {m}x{m} symmetric matrix")
    entries = [[deg.image(hat(i, j)) for j in range(1, m + 1)] for i in range(1, m + 1)]
    used = {e for row in entries for e in row if e is not None}
    variables = [v for v in ring.variables if v in used]
    return DegenMatrix(m, entries, deg, ring, variables)


def zero_count(r: int) -> int:
    """Number of distinct variables killed by sparsing with parameter r."""
    if r < 1:
        raise ValueError("r must be positive")
    return (r + 1) ** 2 // 4 if r % 2 else r * (r + 2) // 4


def brute_zero_count(m: int, r: int) -> int:
    return sum(
        1
        for i in range(1, m + 1)
        for j in range(i, m + 1)
        if i + j > 2 * m - r
    )


class MinorCache:
    """Memoized Laplace expansion of minors of a fixed square matrix of Polys.

    Minors are keyed by (row bitmask, column bitmask); for a symmetric matrix
    a minor and its transpose share one entry.
    """

    def __init__(self, rows: Sequence[Sequence[Poly]], ring: Ring, symmetric: bool = False):
        self.a = [list(r) for r in rows]
        self.n = len(self.a)
        self.ring = ring
        self.symmetric = symmetric
        self.memo: dict = {}

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Poly:
        """Determinant of the submatrix on 0-based ``rows`` x ``cols``."""
        rmask = sum(1 << r for r in rows)
        cmask = sum(1 << c for c in cols)
        return self._minor(rmask, cmask)

    def _minor(self, rmask: int, cmask: int) -> Poly:
        if rmask == 0:
            return self.ring.one()
        key = (rmask, cmask)
        if self.symmetric and cmask < rmask:
            key = (cmask, rmask)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        rmask, cmask = key
        r0 = (rmask & -rmask).bit_length() - 1
        rest = rmask & ~(1 << r0)
        row = self.a[r0]
        acc: dict = {}
        sign = 1
        c = cmask
        while c:
            low = c & -c
            col = low.bit_length() - 1
            c ^= low
            entry = row[col]
            if entry.terms:
                sub = self._minor(rest, cmask & ~low)
                if sub.terms:
                    prod = entry * sub
                    for k, v in prod.terms.items():
                        acc[k] = acc.get(k, 0) + (v if sign > 0 else -v)
            sign = -sign
        out = Poly(self.ring, acc)
        self.memo[key] = out
        return out

    def determinant(self) -> Poly:
        full = (1 << self.n) - 1
        return self._minor(full, full)

    def cofactor(self, i: int, j: int) -> Poly:
        """Signed cofactor of the 0-based entry (i, j)."""
        full = (1 << self.n) - 1
        p = self._minor(full & ~(1 << i), full & ~(1 << j))
        return p if (i + j) % 2 == 0 else -p


def determinant(M) -> Poly:
    """Exact determinant of a DegenMatrix or of a square list of Polys."""
    if isinstance(M, DegenMatrix):
        return MinorCache(M.poly_entries(), M.ring, symmetric=True).determinant()
    ring = M[0][0].ring
    return MinorCache(M, ring).determinant()


@dataclass
class CofactorTable:
    m: int
    delta: dict  # 1-based (i, j) -> signed cofactor of the entry in slot (i, j)
    adjugate: list  # adjugate[i][j] = delta[(j+1, i+1)]
    det: Poly
    cache: MinorCache = field(repr=False)

    def __call__(self, i: int, j: int) -> Poly:
        return self.delta[(i, j)]


def cofactors(M, symmetric: Optional[bool] = None) -> CofactorTable:
    if isinstance(M, DegenMatrix):
        rows, ring = M.poly_entries(), M.ring
        symmetric = True if symmetric is None else symmetric
    else:
        rows, ring = M, M[0][0].ring
        symmetric = bool(symmetric)
    cache = MinorCache(rows, ring, symmetric=symmetric)
    n = len(rows)
    delta = {(i + 1, j + 1): cache.cofactor(i, j) for i in range(n) for j in range(n)}
    adj = [[delta[(j + 1, i + 1)] for j in range(n)] for i in range(n)]
    return CofactorTable(n, delta, adj, cache.determinant(), cache)


def matmul(a: Sequence[Sequence[Poly]], b: Sequence[Sequence[Poly]]) -> list:
    n, k, p = len(a), len(b), len(b[0])
    ring = a[0][0].ring
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = ring.zero()
            for t in range(k):
                if a[i][t].terms and b[t][j].terms:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


@dataclass
class CauchyReport:
    ok: bool
    checked: int
    first_failure: Optional[tuple] = None  # (product, i, j) with 1-based slot


def verify_cauchy(M: DegenMatrix, table: Optional[CofactorTable] = None) -> CauchyReport:
    """Check M*adj(M) = adj(M)*M = det(M)*I term by term."""
    table = table or cofactors(M)
    a = M.poly_entries()
    n = M.m
    checked = 0
    for name, prod in (("M*adj", matmul(a, table.adjugate)), ("adj*M", matmul(table.adjugate, a))):
        for i in range(n):
            for j in range(n):
                want = table.det if i == j else M.ring.zero()
                checked += 1
                if prod[i][j] != want:
                    return CauchyReport(False, checked, (name, i + 1, j + 1))
    return CauchyReport(True, checked)


def adj_adj_identity(M: DegenMatrix, table: Optional[CofactorTable] = None) -> bool:
    """adj(adj(M)) == det(M)^(m-2) * M, entry by entry."""
    if M.m < 2:
        raise ValueError("need m >= 2")
    table = table or cofactors(M)
    outer = cofactors(table.adjugate)
    scale = table.det ** (M.m - 2)
    a = M.poly_entries()
    return all(
        outer.adjugate[i][j] == scale * a[i][j] for i in range(M.m) for j in range(M.m)
    )


def degenerate_generic_determinant(deg: Degeneration) -> Poly:
    """det of the generic matrix pushed through the degeneration map."""
    return substitute(determinant(build(generic(deg.m))), deg.endomorphism())


def antidiagonal_product(M: DegenMatrix, rows: Sequence[int], cols: Sequence[int]) -> Optional[Poly]:
    """Product of the anti-diagonal entries of the 1-based submatrix rows x cols."""
    k = len(rows)
    out = M.ring.one()
    for t in range(k):
        e = M.entry(rows[t], cols[k - 1 - t])
        if e is None:
            return None
        out = out * M.ring.gen(*e)
    return out
