"""Linear syzygies from the Cauchy cofactor identity, and an exact solver.

Cloning generators are the partials f_{i,j} listed row by row
(x_{1,1} .. x_{1,m}, x_{2,2} .. x_{2,m}, ..., x_{m-1,m-1}, x_{m-1,m});
sparse generators are all cofactors Delta_{i,j}, i <= j, in the same order.
The block shape of the syzygy matrix depends on these orders.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Optional, Sequence

from .calculus import gradient, matrix_generic_rank
from .linalg import bareiss_rank, rref, sparse_nullspace
from .polyring import Poly, VarId, hat
from .sampling import DEFAULT_SEED, DEFAULT_TRIALS, make_rng, random_point
from .symmatrix import CofactorTable, DegenMatrix, build, cofactors, determinant, md_clone, sparse


@dataclass
class LinearSyzygySet:
    generators: list
    syzygies: list  # each a list of Polys, one per generator
    tags: list
    labels: list = field(default_factory=list)  # generator names
    blocks: list = field(default_factory=list)  # column block index per syzygy

    def __len__(self) -> int:
        return len(self.syzygies)

    def residual(self, k: int) -> Poly:
        gens = self.generators
        acc = gens[0].ring.zero()
        for c, g in zip(self.syzygies[k], gens):
            if c.terms:
                acc = acc + c * g
        return acc

    def annihilates(self) -> bool:
        return all(self.residual(k).is_zero() for k in range(len(self)))

    def is_linear(self) -> bool:
        return all(c.is_zero() or (c.degree() == 1 and c.is_homogeneous())
                   for s in self.syzygies for c in s)

    def matrix(self) -> list:
        """Generators x syzygies matrix of linear forms."""
        return [[s[k] for s in self.syzygies] for k in range(len(self.generators))]

    def family_counts(self) -> dict:
        out: dict = {}
        for t in self.tags:
            out[t] = out.get(t, 0) + 1
        return out


def cofactor_relation(M: DegenMatrix, row: int, col: int) -> dict:
    """sum_j M[row][j] * Delta_{j,col} as {(a, b) with a <= b: coefficient}.

    Vanishes when row != col (Cauchy identity); equals det(M) on the diagonal.
    """
    out: dict = {}
    for j in range(1, M.m + 1):
        e = M.entry(row, j)
        if e is None:
            continue
        key = tuple(hat(j, col))
        out[key] = out.get(key, M.ring.zero()) + M.ring.gen(*e)
    return out


def combine(*parts) -> dict:
    """Integer combination of relations given as (scalar, relation) pairs."""
    out: dict = {}
    for a, rel in parts:
        for k, c in rel.items():
            out[k] = out.get(k, c.ring.zero()) + c * a
    return {k: c for k, c in out.items() if c.terms}


def relation_value(rel: dict, table: CofactorTable) -> Poly:
    acc = None
    for (a, b), c in rel.items():
        t = c * table.delta[(a, b)]
        acc = t if acc is None else acc + t
    return acc


def _clone_relations(m: int) -> list:
    """(tag, block, relation) triples for the main-diagonal clone."""
    M = build(md_clone(m))
    rel = lambda i, k: cofactor_relation(M, i, k)  # noqa: E731
    out = []
    for i in range(2, m):
        out.append(("col1", 1, rel(i, 1)))
    out.append(("last-row", 1, rel(m, 1)))
    for k in range(2, m - 1):
        for i in range(k - 1, m):
            if i != k:
                out.append(("col", k, rel(i, k)))
        out.append(("last-row", k, rel(m, k)))
    out.append(("corner-mixed", m - 1, combine((1, rel(m - 1, m)), (1, rel(m, m - 1)))))
    out.append(("corner-diag", m - 1, combine((1, rel(m - 1, m - 1)), (1, rel(m, m)), (-2, rel(1, 1)))))
    return out


def _clone_to_gradient(rel: dict, m: int, order: list) -> list:
    """Rewrite a cofactor relation on the partials f_{i,j}.

    Off-diagonal Delta_{i,j} = f_{i,j}/2; Delta_{i,i} = f_{i,i} for i <= m-2;
    Delta_{m-1,m-1} and Delta_{m,m} must carry equal coefficients and merge
    into f_{m-1,m-1}.
    """
    ring = next(iter(rel.values())).ring
    coeffs = {v: ring.zero() for v in order}
    top, bottom = (m - 1, m - 1), (m, m)
    ct, cb = rel.get(top, ring.zero()), rel.get(bottom, ring.zero())
    if ct != cb:
        raise ValueError("relation does not pair Delta_{m-1,m-1} with Delta_{m,m}")
    for (a, b), c in rel.items():
        if (a, b) == bottom:
            continue
        v = VarId(a, b)
        coeffs[v] = coeffs[v] + (c * Fraction(1, 2) if a != b else c)
    den = 1
    for c in coeffs.values():
        for x in c.terms.values():
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
    return [coeffs[v] * den for v in order]


def cloning_syzygies(m: int) -> LinearSyzygySet:
    """The C(m+1,2) - 2 linear syzygies of the gradient of det(SC)."""
    if m < 3:
        raise ValueError("cloning syzygies need m >= 3")
    M = build(md_clone(m))
    f = determinant(M)
    grad = gradient(f, M.variables)
    syz, tags, blocks = [], [], []
    for tag, block, rel in _clone_relations(m):
        syz.append(_clone_to_gradient(rel, m, M.variables))
        tags.append(tag)
        blocks.append(block)
    labels = [f"f{v}" for v in M.variables]
    return LinearSyzygySet(grad.generators, syz, tags, labels, blocks)


def sparse_relations(m: int, r: int) -> list:
    M = build(sparse(m, r))
    rel = lambda i, k: cofactor_relation(M, i, k)  # noqa: E731
    out = []
    for i in range(2, m + 1):
        out.append(("first-col", 1, rel(i, 1)))
    for k in range(2, m - r + 1):
        for i in range(k - 1, m - r + 1):
            if i != k:
                out.append(("inner", k, rel(i, k)))
        for l in range(1, r + 1):
            out.append(("inner", k, rel(m - r + l, k)))
    for l in range(1, r + 1):
        for k in range(0, r - l + 1):
            if k != l:
                out.append(("tail", m - r + l, rel(m - r + k, m - r + l)))
        if l <= r // 2:
            out.append(("tail", m - r + l,
                        combine((1, rel(m - r + l, m - r + l)), (-1, rel(1, 1)))))
    return out


def sparse_syzygies(m: int, r: int) -> LinearSyzygySet:
    """C(m+1,2) - 1 linear syzygies on the cofactors of S(r)."""
    if not 1 <= r <= m - 2:
        raise ValueError("need 1 <= r <= m-2")
    M = build(sparse(m, r))
    table = cofactors(M)
    order = [(i, j) for i in range(1, m + 1) for j in range(i, m + 1)]
    gens = [table.delta[p] for p in order]
    syz, tags, blocks = [], [], []
    zero = M.ring.zero()
    for tag, block, rel in sparse_relations(m, r):
        syz.append([rel.get(p, zero) for p in order])
        tags.append(tag)
        blocks.append(block)
    labels = [f"D{i}{j}" for i, j in order]
    return LinearSyzygySet(gens, syz, tags, labels, blocks)


def syzygy_rank(S: LinearSyzygySet, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> int:
    if not S.syzygies:
        return 0
    ring = S.generators[0].ring
    return matrix_generic_rank(S.matrix(), ring.variables, trials, seed, stream="syzygy").value


def linear_syzygy_space(gens: Sequence[Poly], variables: Optional[Sequence[VarId]] = None) -> LinearSyzygySet:
    """A basis of all linear syzygies of ``gens`` by exact nullspace computation.

    Unknowns are the coefficients c[k][t] of L_k = sum_t c[k][t] x_t; the
    equations say every monomial coefficient of sum_k L_k * gens[k] vanishes.
    """
    gens = list(gens)
    if not gens:
        return LinearSyzygySet([], [], [])
    ring = gens[0].ring
    if variables is None:
        seen = set()
        for g in gens:
            seen.update(g.variables())
        variables = [v for v in ring.variables if v in seen]
    nv = len(variables)
    vidx = [ring.var_index(v) for v in variables]
    rows: dict = {}
    for k, g in enumerate(gens):
        for mono, c in g.terms.items():
            for t, vi in enumerate(vidx):
                key = mono[:vi] + (mono[vi] + 1,) + mono[vi + 1:]
                row = rows.setdefault(key, {})
                col = k * nv + t
                row[col] = row.get(col, 0) + c
    basis = sparse_nullspace(list(rows.values()), len(gens) * nv)
    syz = [_vector_to_forms(vec, gens, variables) for vec in basis]
    return LinearSyzygySet(gens, syz, ["solved"] * len(syz))


def _vector_to_forms(vec, gens, variables) -> list:
    ring = gens[0].ring
    nv = len(variables)
    den = 1
    for x in vec:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    out = []
    for k in range(len(gens)):
        acc = ring.zero()
        for t in range(nv):
            x = vec[k * nv + t]
            if x:
                acc = acc + ring.gen(*variables[t]) * (x * den)
        out.append(acc)
    return out


def _forms_to_vector(forms, variables) -> list:
    ring = forms[0].ring
    vec = []
    for L in forms:
        for v in variables:
            e = ring.monomial({v: 1})
            vec.append(Fraction(L.terms.get(e, 0)))
    return vec


def contained_in(sub: LinearSyzygySet, sup: LinearSyzygySet, variables: Sequence[VarId]) -> bool:
    """True iff every syzygy of ``sub`` lies in the Q-span of those of ``sup``."""
    base = [_forms_to_vector(s, variables) for s in sup.syzygies]
    r0 = len(rref(base)[1]) if base else 0
    for s in sub.syzygies:
        v = _forms_to_vector(s, variables)
        if len(rref(base + [v])[1]) != r0:
            return False
    return True


def block_check(S: LinearSyzygySet, row_blocks: list, seed: int = DEFAULT_SEED) -> bool:
    """Delete the first generator; the rest must be block upper triangular with
    nonsingular diagonal blocks at a random integer point.

    ``row_blocks`` gives the block index of every generator after the first.
    """
    mat = S.matrix()[1:]
    if len(mat) != len(S.syzygies) or len(row_blocks) != len(mat):
        return False
    ring = S.generators[0].ring
    pt = random_point(make_rng(seed, "block"), ring.variables)
    vals = [pt[v] for v in ring.variables]
    from .polyring import evaluate_vector

    num = [[evaluate_vector(e, vals) for e in row] for row in mat]
    for a, rb in enumerate(row_blocks):
        for b, cb in enumerate(S.blocks):
            if rb > cb and mat[a][b].terms:
                return False
    for blk in sorted(set(S.blocks)):
        rows = [a for a, rb in enumerate(row_blocks) if rb == blk]
        cols = [b for b, cb in enumerate(S.blocks) if cb == blk]
        if len(rows) != len(cols):
            return False
        sub = [[num[a][b] for b in cols] for a in rows]
        if bareiss_rank(sub) != len(rows):
            return False
    return True


def clone_row_blocks(m: int) -> list:
    M = build(md_clone(m))
    return [v.i for v in M.variables][1:]


def sparse_row_blocks(m: int) -> list:
    return [i for i in range(1, m + 1) for _ in range(i, m + 1)][1:]


def expected_clone_count(m: int) -> int:
    return comb(m + 1, 2) - 2


def expected_sparse_family_sizes(m: int, r: int) -> tuple:
    return (m - 1, (m - r - 1) * (m + r) // 2, comb(r + 1, 2))
