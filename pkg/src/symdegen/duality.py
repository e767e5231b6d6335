"""Dual varieties, ladder minor systems, the cofactor hypersurface, Hessian multiplicity.

Dual dimensions use Segre's formula: dim V(f)* = rank H(f) mod f - 2, where
the rank mod f is read off at exact rational points of V(f).  Those points
come from solving f = x11 * f1 + g for x11, which works whenever x11 sits in
a single slot of the matrix.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .calculus import RankEstimate, hessian, hessian_determinant
from .linalg import bareiss_det, bareiss_rank, rref
from .polyring import (
    Poly, Ring, VarId, compose, derivative, divide_exact, evaluate, evaluate_vector, hat,
    multiplicity, substitute, symmetric_ring,
)
from .sampling import BOUND, DEFAULT_SEED, DEFAULT_TRIALS, MAX_RESAMPLES, make_rng, random_ints
from .symmatrix import (
    CofactorTable, DegenMatrix, MinorCache, build, cofactors, determinant, general, md_clone,
    sparse, zero_count,
)

X11 = VarId(1, 1)


class SamplingError(RuntimeError):
    pass


@dataclass
class HypersurfacePoint:
    point: dict  # VarId -> int or Fraction
    solved: VarId
    denominator: Fraction  # f1 = df/dx11 at the point, never zero

    def vector(self, ring: Ring) -> list:
        vals = [0] * ring.nvars
        for v, x in self.point.items():
            vals[ring.var_index(v)] = x
        return vals


def _split_x11(f: Poly) -> tuple:
    if f.degree_in(X11) != 1:
        raise ValueError("f must be linear in x11")
    return derivative(f, X11), substitute(f, {X11: None})


def solve_on_hypersurface(f: Poly, values: dict) -> Optional[HypersurfacePoint]:
    """Complete ``values`` (all variables of f but x11) to a point of V(f)."""
    f1, g = _split_x11(f)
    den = evaluate(f1, values)
    if den == 0:
        return None
    x11 = Fraction(-evaluate(g, values)) / den
    pt = dict(values)
    pt[X11] = x11.numerator if x11.denominator == 1 else x11
    return HypersurfacePoint(pt, X11, Fraction(den))


def sample_on_hypersurface(f: Poly, seed: int = DEFAULT_SEED, stream: str = "hypersurface",
                           rng=None) -> HypersurfacePoint:
    f1, g = _split_x11(f)
    free = [v for v in f.variables() if v != X11]
    rng = rng or make_rng(seed, stream)
    for _ in range(MAX_RESAMPLES):
        values = dict(zip(free, random_ints(rng, len(free), BOUND)))
        den = evaluate(f1, values)
        if den == 0:
            continue
        x11 = Fraction(-evaluate(g, values)) / den
        values[X11] = x11.numerator if x11.denominator == 1 else x11
        return HypersurfacePoint(values, X11, Fraction(den))
    raise SamplingError("df/dx11 vanished at every draw")


def hessian_rank_on_hypersurface(f: Poly, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> RankEstimate:
    H = hessian(f, [v for v in f.ring.variables if v in set(f.variables())])
    rng = make_rng(seed, "dual")
    ranks, points = [], []
    for _ in range(trials):
        hp = sample_on_hypersurface(f, rng=rng)
        assert evaluate(f, hp.point) == 0
        vals = hp.vector(f.ring)
        ranks.append(bareiss_rank([[evaluate_vector(e, vals) for e in row] for row in H.entries]))
        points.append(hp.point)
    best = max(ranks)
    return RankEstimate(best, [points[ranks.index(best)]], trials, seed, ranks)


def dual_dimension(f: Poly, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> int:
    return hessian_rank_on_hypersurface(f, trials, seed).value - 2


@dataclass
class MinorSystem:
    mask: frozenset  # masked-in (i, j), i <= j
    minor_size: int
    generators: list  # Polys in the y ring
    ring: Ring

    def __len__(self) -> int:
        return len(self.generators)

    def supported(self) -> bool:
        return all(v in self.mask for g in self.generators for v in g.variables())


def _normalize_sign(p: Poly) -> Poly:
    return -p if p.leading_term()[0] < 0 else p


def two_by_two_ladder(m: int, mask) -> MinorSystem:
    """All 2x2 minors of the symmetric y-array whose four corners are masked in."""
    ring = symmetric_ring(m, "y")
    mask = frozenset(hat(*p) for p in mask)
    y = lambda i, j: ring.gen(*hat(i, j))  # noqa: E731
    seen, gens = set(), []
    for i, k in itertools.combinations(range(1, m + 1), 2):
        for j, l in itertools.combinations(range(1, m + 1), 2):
            if not all(hat(a, b) in mask for a, b in ((i, j), (i, l), (k, j), (k, l))):
                continue
            g = y(i, j) * y(k, l) - y(i, l) * y(k, j)
            if g.is_zero():
                continue
            g = _normalize_sign(g)
            if g not in seen:
                seen.add(g)
                gens.append(g)
    return MinorSystem(mask, 2, gens, ring)


def clone_mask(m: int) -> set:
    return {hat(i, j) for i in range(1, m + 1) for j in range(i, m + 1)} - {hat(m, m), hat(m - 1, m - 1)}


def sparse_mask(m: int, r: int) -> set:
    return {hat(i, j) for i in range(1, m + 1) for j in range(i, m + 1) if i + j <= 2 * m - r}


def dual_ladder_clone(m: int) -> MinorSystem:
    if m < 3:
        raise ValueError("need m >= 3")
    return two_by_two_ladder(m, clone_mask(m))


def dual_ladder_sparse(m: int, r: int) -> MinorSystem:
    if not 0 <= r <= m - 2:
        raise ValueError("need 0 <= r <= m-2")
    return two_by_two_ladder(m, sparse_mask(m, r))


def cofactor_images(table: CofactorTable, merge_clone: bool = False) -> dict:
    """y_{i,j} -> Delta_{i,j}; with ``merge_clone`` y_{m-1,m-1} -> Delta_{m-1,m-1} + Delta_{m,m}."""
    m = table.m
    images = {hat(i, j): table.delta[(i, j)] for i in range(1, m + 1) for j in range(i, m + 1)}
    if merge_clone:
        images[hat(m - 1, m - 1)] = table.delta[(m - 1, m - 1)] + table.delta[(m, m)]
    return images


def substitute_cofactors(system: MinorSystem, M: DegenMatrix, table: Optional[CofactorTable] = None,
                         merge_clone: bool = False) -> list:
    table = table or cofactors(M)
    images = cofactor_images(table, merge_clone)
    return [compose(g, images, M.ring) for g in system.generators]


def ladder_divisibility(system: MinorSystem, M: DegenMatrix, table: Optional[CofactorTable] = None) -> list:
    """For each generator: is its image under y -> Delta exactly divisible by f?"""
    table = table or cofactors(M)
    return [divide_exact(p, table.det) is not None for p in substitute_cofactors(system, M, table)]


def clone_quadric(m: int) -> Poly:
    ring = symmetric_ring(m, "y")
    y = lambda i, j: ring.gen(*hat(i, j))  # noqa: E731
    return y(1, 1) * y(m - 1, m - 1) - y(1, m - 1) ** 2 - y(1, m) ** 2


def _in_span(h: Poly, gens: Sequence[Poly]) -> bool:
    monos = sorted({mono for g in list(gens) + [h] for mono in g.terms})
    vec = lambda p: [p.terms.get(mono, 0) for mono in monos]  # noqa: E731
    base = [vec(g) for g in gens]
    r0 = len(rref(base)[1]) if base else 0
    return len(rref(base + [vec(h)])[1]) == r0


@dataclass
class QuadricReport:
    divisible: bool
    outside_span: bool

    @property
    def ok(self) -> bool:
        return self.divisible and self.outside_span


def quadric_report(m: int) -> QuadricReport:
    M = build(md_clone(m))
    table = cofactors(M)
    h = clone_quadric(m)
    image = compose(h, cofactor_images(table, merge_clone=True), M.ring)
    divisible = divide_exact(image, table.det) is not None
    return QuadricReport(divisible, not _in_span(h, dual_ladder_clone(m).generators))


def quadric_check_clone(m: int) -> bool:
    return quadric_report(m).ok


def polar_ladder_sparse(m: int, r: int) -> MinorSystem:
    """Maximal minors of the arrays (y_{i_k, j}) over row subsets of 1..m-1."""
    if not 1 <= r <= m - 2:
        raise ValueError("need 1 <= r <= m-2")
    ring = symmetric_ring(m, "y")
    k = m - r
    seen, gens, mask = set(), [], set()
    for rows in itertools.combinations(range(1, m), k):
        ncols = m - rows[-1] + (k - 1)
        if ncols < k:
            continue
        arr = [[ring.gen(*hat(i, j)) for j in range(1, ncols + 1)] for i in rows]
        mask.update(hat(i, j) for i in rows for j in range(1, ncols + 1))
        cache = MinorCache(arr, ring)
        for cols in itertools.combinations(range(ncols), k):
            g = cache.minor(range(k), cols)
            if g.is_zero():
                continue
            g = _normalize_sign(g)
            if g not in seen:
                seen.add(g)
                gens.append(g)
    return MinorSystem(frozenset(mask), k, gens, ring)


def polar_ladder_vanishing(m: int, r: int) -> list:
    """Per generator: does it become the zero polynomial under y -> Delta?"""
    M = build(sparse(m, r))
    system = polar_ladder_sparse(m, r)
    return [p.is_zero() for p in substitute_cofactors(system, M)]


@dataclass
class HypersurfaceEquationReport:
    vanishes: bool
    degree: int
    adj_adj_equal: bool

    @property
    def ok(self) -> bool:
        return self.vanishes and self.adj_adj_equal


def hypersurface_equation_report(m: int) -> HypersurfaceEquationReport:
    """D_{m,m} - D_{m-1,m-1} of the generic y-matrix, evaluated on the clone's cofactors."""
    if m < 3:
        raise ValueError("need m >= 3")
    ring = symmetric_ring(m, "y")
    Y = [[ring.gen(*hat(i, j)) for j in range(1, m + 1)] for i in range(1, m + 1)]
    ycache = MinorCache(Y, ring, symmetric=True)
    eq = ycache.cofactor(m - 1, m - 1) - ycache.cofactor(m - 2, m - 2)
    M = build(md_clone(m))
    table = cofactors(M)
    image = compose(eq, cofactor_images(table), M.ring)
    outer = cofactors(table.adjugate)
    want = table.det ** (m - 2) * M.ring.gen(m - 1, m - 1)
    same = outer.adjugate[m - 2][m - 2] == want and outer.adjugate[m - 1][m - 1] == want
    return HypersurfaceEquationReport(image.is_zero(), eq.degree(), same)


def hypersurface_equation_clone(m: int) -> bool:
    return hypersurface_equation_report(m).ok


@dataclass
class MultiplicityReport:
    k: Optional[int]
    residual_degree: Optional[int]
    method: str
    vanishing_hessian: bool = False
    probabilistic: bool = False
    witness: dict = field(default_factory=dict)


def _order_at_zero(values: list) -> Optional[int]:
    """Order of vanishing at t = 0 of the polynomial with values p(0), p(1), ...

    The degree is below len(values); Newton interpolation recovers it exactly.
    """
    n = len(values)
    coef = [Fraction(v) for v in values]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / j
    # Newton form in the nodes 0..n-1 -> monomial coefficients
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (t - i) + coef[i]
        nxt = [Fraction(0)] * n
        for d in range(n - 1):
            nxt[d + 1] += poly[d]
            nxt[d] -= i * poly[d]
        nxt[0] += coef[i]
        poly = nxt
    for d, c in enumerate(poly):
        if c:
            return d
    return None


def hessian_multiplicity(f: Poly, method: str = "exact_division", seed: int = DEFAULT_SEED,
                         degree_bound: Optional[int] = None) -> MultiplicityReport:
    """The exponent k with h(f) = f^k * q and f not dividing q."""
    variables = [v for v in f.ring.variables if v in set(f.variables())]
    H = hessian(f, variables)
    n = H.size
    if method == "exact_division":
        h = hessian_determinant(H)
        if h.is_zero():
            return MultiplicityReport(None, None, method, vanishing_hessian=True)
        k, q = multiplicity(h, f)
        return MultiplicityReport(k, q.degree(), method)
    if method != "line_restriction":
        raise ValueError(f"unknown method {method!r}")
    d = f.degree()
    bound = degree_bound if degree_bound is not None else n * (d - 2)
    rng = make_rng(seed, "line")
    hp = sample_on_hypersurface(f, rng=rng)
    base = hp.vector(f.ring)
    direction = [0] * f.ring.nvars
    for v, x in zip(variables, random_ints(rng, n)):
        direction[f.ring.var_index(v)] = x

    def at(t: int) -> list:
        return [b + t * e for b, e in zip(base, direction)]

    fvals = [evaluate_vector(f, at(t)) for t in range(d + 1)]
    ford = _order_at_zero(fvals)
    hvals = [bareiss_det([[evaluate_vector(e, at(t)) for e in row] for row in H.entries])
             for t in range(bound + 1)]
    hord = _order_at_zero(hvals)
    witness = {"point": {str(v): str(x) for v, x in hp.point.items()},
               "direction": [x for x in direction], "order_f": ford, "order_h": hord}
    if hord is None:
        return MultiplicityReport(None, None, method, vanishing_hessian=True, probabilistic=True,
                                  witness=witness)
    if ford != 1:
        raise SamplingError("line is tangent to V(f); try another seed")
    return MultiplicityReport(hord, bound - hord * d, method, probabilistic=True, witness=witness)


def expected_multiplicity(m: int) -> int:
    return comb(m, 2) - 2


def gorenstein_check(m: int, r: int) -> bool:
    """The sparse dual ladder's inner corner has index sum 2m-r-1; Gorenstein iff it is m+1."""
    if not 0 <= r <= m - 2:
        raise ValueError("need 0 <= r <= m-2")
    return 2 * m - r - 1 == m + 1


def random_ladderlike(m: int, seed: int = DEFAULT_SEED, stream: str = "ladderlike", p_zero: float = 0.3):
    """A random coordinate-like degeneration fixing every x_{i,j} with i + j <= m + 2.

    Variables past that are sent to zero or to some other variable (never x11,
    so f stays linear in x11).  Resamples until det is nonzero.
    """
    rng = make_rng(seed, stream)
    ring = symmetric_ring(m)
    movable = [v for v in ring.variables if v.i + v.j > m + 2]
    targets = [v for v in ring.variables if v != X11]
    for _ in range(MAX_RESAMPLES):
        mapping = {}
        for v in movable:
            u = float(rng.random())
            if u < p_zero:
                mapping[v] = None
            elif u < 0.6:
                mapping[v] = v
            else:
                mapping[v] = targets[int(rng.integers(len(targets)))]
        deg = general(m, mapping)
        M = build(deg)
        if not determinant(M).is_zero():
            return deg
    raise SamplingError("could not find a degeneration with nonzero determinant")


def expected_dual_rank(m: int) -> int:
    return m + 1


def sparse_position_count(m: int, r: int) -> int:
    return comb(m + 1, 2) - zero_count(r)
