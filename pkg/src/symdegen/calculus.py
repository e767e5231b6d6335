"""Gradient ideals, Hessians, sampled ranks and the homaloidal certificate."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .linalg import bareiss_rank
from .polyring import Poly, VarId, derivative, evaluate_vector, hat, substitute
from .sampling import DEFAULT_SEED, DEFAULT_TRIALS, make_rng, random_point
from .symmatrix import CofactorTable, DegenMatrix, Kind, MinorCache, build, cofactors, determinant, md_clone


@dataclass
class GradientSet:
    variables: list
    generators: list

    def __iter__(self):
        return iter(zip(self.variables, self.generators))

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, v) -> Poly:
        return self.generators[self.variables.index(hat(*v))]


@dataclass
class HessianData:
    variables: list
    entries: list  # n x n, entries[a][b] = d^2 f / dx_a dx_b

    @property
    def size(self) -> int:
        return len(self.variables)

    def at(self, pt) -> list:
        ring = self.entries[0][0].ring if self.entries else None
        if ring is None:
            return []
        vals = [None] * ring.nvars
        for v, x in pt.items():
            vals[ring.var_index(v)] = x
        return [[evaluate_vector(e, vals) for e in row] for row in self.entries]


@dataclass
class RankEstimate:
    value: int
    witnesses: list
    trials: int
    seed: int
    ranks: list = field(default_factory=list)


def gradient(f: Poly, variables: Optional[Sequence[VarId]] = None) -> GradientSet:
    """All partial derivatives of ``f``, in ring order by default."""
    if f.is_zero():
        raise ValueError("gradient of the zero polynomial")
    variables = list(f.variables() if variables is None else variables)
    return GradientSet(variables, [derivative(f, v) for v in variables])


def gradient_from_cofactors(M: DegenMatrix, table: Optional[CofactorTable] = None) -> GradientSet:
    """For each surviving variable, the sum of the signed cofactors over its slots."""
    table = table or cofactors(M)
    gens = []
    for v in M.variables:
        acc = M.ring.zero()
        for slot in M.slots(v):
            acc = acc + table.delta[slot]
        gens.append(acc)
    return GradientSet(list(M.variables), gens)


def hessian(f: Poly, variables: Optional[Sequence[VarId]] = None) -> HessianData:
    grad = gradient(f, variables)
    vs = grad.variables
    n = len(vs)
    entries = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            entries[a][b] = entries[b][a] = derivative(grad.generators[a], vs[b])
    return HessianData(vs, entries)


def hessian_determinant(H: HessianData) -> Poly:
    if H.size > 6:
        raise ValueError("symbolic Hessian determinant is limited to 6x6 matrices")
    ring = H.entries[0][0].ring
    return MinorCache(H.entries, ring, symmetric=True).determinant()


def matrix_generic_rank(entries, variables, trials: int = DEFAULT_TRIALS,
                        seed: int = DEFAULT_SEED, stream: str = "rank") -> RankEstimate:
    """Max exact rank of a polynomial matrix at random integer points."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if not entries or not entries[0]:
        return RankEstimate(0, [], trials, seed, [0] * trials)
    ring = entries[0][0].ring
    rng = make_rng(seed, stream)
    ranks, points = [], []
    for _ in range(trials):
        pt = random_point(rng, variables)
        vals = [None] * ring.nvars
        for v, x in pt.items():
            vals[ring.var_index(v)] = x
        mat = [[evaluate_vector(e, vals) for e in row] for row in entries]
        ranks.append(bareiss_rank(mat))
        points.append(pt)
    best = max(ranks)
    return RankEstimate(best, [points[ranks.index(best)]], trials, seed, ranks)


def hessian_generic_rank(H: HessianData, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> RankEstimate:
    return matrix_generic_rank(H.entries, H.variables, trials, seed, stream="hessian")


def _monomial_matrix_det(rows: list, ring) -> Poly:
    """Determinant of a matrix whose entries are zero or single terms."""
    n = len(rows)
    if n == 0:
        return ring.one()
    nz = [[j for j, e in enumerate(row) if e.terms] for row in rows]
    if all(len(js) == 1 for js in nz) and len({js[0] for js in nz}) == n:
        perm = [js[0] for js in nz]
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        out = ring.one() if inversions % 2 == 0 else -ring.one()
        for i, j in enumerate(perm):
            out = out * rows[i][j]
        return out
    return MinorCache(rows, ring).determinant()


@dataclass
class DiagonalSpecialization:
    ok: bool
    blocks_vanish: bool
    det_diagonal_block: Poly
    det_off_block: Poly
    det: Poly


def diagonal_specialization(M: DegenMatrix, H: Optional[HessianData] = None) -> DiagonalSpecialization:
    """Kill every variable off the main diagonal in the Hessian of det(M).

    The specialized Hessian must split into a diagonal-variable block and an
    off-diagonal block with vanishing cross blocks; its determinant is then a
    product of two determinants and should be a nonzero monomial.
    """
    if M.degeneration.kind is not Kind.CLONE:
        raise ValueError("diagonal specialization applies to the main-diagonal clone")
    m = M.m
    H = H or hessian(determinant(M), M.variables)
    diag = [hat(i, i) for i in range(1, m)]
    kill = {v: (v if v in diag else None) for v in M.ring.variables}
    special = [[substitute(e, kill) for e in row] for row in H.entries]
    idx_d = [H.variables.index(v) for v in diag]
    idx_o = [k for k in range(H.size) if k not in idx_d]
    blocks_vanish = all(special[a][b].is_zero() for a in idx_d for b in idx_o)
    m0 = [[special[a][b] for b in idx_d] for a in idx_d]
    m1 = [[special[a][b] for b in idx_o] for a in idx_o]
    d0 = _monomial_matrix_det(m0, M.ring)
    d1 = _monomial_matrix_det(m1, M.ring)
    det = d0 * d1
    ok = blocks_vanish and len(det.terms) == 1
    return DiagonalSpecialization(ok, blocks_vanish, d0, d1, det)


def diagonal_specialization_check(M: DegenMatrix) -> bool:
    return diagonal_specialization(M).ok


@dataclass
class HomaloidalReport:
    hessian_nonvanishing: bool
    hessian_method: str
    linear_rank: int
    linear_rank_expected: int
    linear_rank_ok: bool
    homaloidal: bool


def homaloidal_certificate(M, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> HomaloidalReport:
    """Hessian non-vanishing plus maximal linear rank of the gradient ideal.

    ``M`` is a DegenMatrix or an integer m (meaning the main-diagonal clone).
    """
    from .syzygy import cloning_syzygies, linear_syzygy_space, syzygy_rank

    if isinstance(M, int):
        M = build(md_clone(M))
    f = determinant(M)
    n = len(M.variables)
    if M.degeneration.kind is Kind.CLONE:
        hess_ok = diagonal_specialization(M).ok
        method = "diagonal_specialization"
        syz = cloning_syzygies(M.m)
    else:
        H = hessian(f, M.variables)
        if H.size <= 6:
            hess_ok = not hessian_determinant(H).is_zero()
            method = "exact_determinant"
        else:
            hess_ok = hessian_generic_rank(H, trials, seed).value == H.size
            method = "sampled_rank"
        syz = linear_syzygy_space(gradient(f, M.variables).generators, M.variables)
    rank = syzygy_rank(syz, trials, seed)
    expected = n - 1
    return HomaloidalReport(hess_ok, method, rank, expected, rank == expected,
                            hess_ok and rank == expected)


def euler_defect(f: Poly, grad: GradientSet) -> Poly:
    """sum_v x_v * df/dx_v - deg(f) * f; zero for homogeneous f."""
    acc = f.ring.zero()
    for v, g in grad:
        acc = acc + f.ring.gen(*v) * g
    return acc - f * f.degree()


def expected_polar_rank(m: int, r: int) -> int:
    from .symmatrix import zero_count

    return comb(m + 1, 2) - 2 * zero_count(r)
