"""Initial-term certificates for the codimension of the gradient ideal.

Every certified monomial comes with an explicit combination of generators
whose expansion has that monomial as revlex leading term, so each claim can
be re-checked without any Groebner machinery.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .calculus import gradient
from .polyring import Poly, hat, monomials_of_degree, revlex_key
from .symmatrix import (
    DegenMatrix, Kind, MinorCache, antidiagonal_product, build, cofactors, determinant,
    md_clone, sparse,
)


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured size cap."""


@dataclass
class GradedPiece:
    degree: int
    initials: dict  # leading monomial -> combination {(generator index, multiplier monomial): coeff}
    rows: int
    columns: int

    def monomials(self) -> set:
        return set(self.initials)


def _lead(row: dict):
    return max(row, key=revlex_key)


def graded_piece(gens: Sequence[Poly], d: int, max_rows: int = 50000) -> GradedPiece:
    """Leading monomials of the degree-d piece of the ideal generated by ``gens``.

    Rows are the products u*g for monomials u of the right degree in the
    variables the generators use; incremental reduction on leading terms
    yields an echelon basis, whose leading monomials are exactly in(J)_d.
    """
    gens = list(gens)
    if not gens:
        return GradedPiece(d, {}, 0, 0)
    ring = gens[0].ring
    if any(not g.is_homogeneous() for g in gens):
        raise ValueError("generators must be homogeneous")
    support = sorted({ring.var_index(v) for g in gens for v in g.variables()})
    plan = []
    for k, g in enumerate(gens):
        e = d - g.degree()
        if e < 0:
            continue
        for u in monomials_of_degree(ring, e, support):
            plan.append((k, u))
    if len(plan) > max_rows:
        raise BudgetExceeded(f"degree {d} piece needs {len(plan)} rows (cap {max_rows})")
    pivots: dict = {}  # lead monomial -> (row, combination)
    columns = set()
    for k, u in plan:
        row = {tuple(a + b for a, b in zip(mono, u)): Fraction(c) for mono, c in gens[k].terms.items()}
        columns.update(row)
        combo = {(k, u): Fraction(1)}
        while row:
            lm = _lead(row)
            hit = pivots.get(lm)
            if hit is None:
                break
            prow, pcombo = hit
            f = row[lm] / prow[lm]
            for mono, c in prow.items():
                v = row.get(mono, 0) - f * c
                if v:
                    row[mono] = v
                else:
                    row.pop(mono, None)
            for key, c in pcombo.items():
                v = combo.get(key, 0) - f * c
                if v:
                    combo[key] = v
                else:
                    combo.pop(key, None)
        if row:
            pivots[_lead(row)] = (row, combo)
    initials = {lm: combo for lm, (_, combo) in pivots.items()}
    return GradedPiece(d, initials, len(plan), len(columns))


def graded_piece_initials(gens: Sequence[Poly], d: int, max_rows: int = 50000) -> set:
    return graded_piece(gens, d, max_rows).monomials()


def expand_combination(gens: Sequence[Poly], combo: dict) -> Poly:
    """sum coeff * u * gens[k] over a {(k, u): coeff} combination."""
    ring = gens[0].ring
    acc: dict = {}
    for (k, u), c in combo.items():
        for mono, a in gens[k].terms.items():
            key = tuple(x + y for x, y in zip(mono, u))
            acc[key] = acc.get(key, 0) + c * a
    return Poly(ring, acc)


def antidiagonal_initial_report(M: DegenMatrix, minor_size: int, allow_small: bool = False) -> dict:
    """Compare every minor's leading term against its anti-diagonal product.

    For the clone the claim needs m >= 6 (pass ``allow_small`` to run it
    anyway and see it fail).  Minors whose anti-diagonal meets a zero slot
    are skipped for sparse matrices.
    """
    m = M.m
    if minor_size not in (m - 2, m - 1, m) or minor_size < 1:
        raise ValueError("minor size must be m-2, m-1 or m")
    if M.degeneration.kind is Kind.CLONE and m < 6 and not allow_small:
        raise ValueError("anti-diagonal initial terms of clone minors need m >= 6")
    cache = MinorCache(M.poly_entries(), M.ring, symmetric=True)
    checked = skipped = 0
    failures = []
    for rows in itertools.combinations(range(1, m + 1), minor_size):
        for cols in itertools.combinations(range(1, m + 1), minor_size):
            D = antidiagonal_product(M, rows, cols)
            if D is None:
                skipped += 1
                continue
            minor = cache.minor([i - 1 for i in rows], [j - 1 for j in cols])
            checked += 1
            dmono = next(iter(D.terms))
            if minor.is_zero() or minor.leading_monomial() != dmono or abs(minor.leading_term()[0]) != 1:
                failures.append((rows, cols))
    return {"ok": not failures, "checked": checked, "skipped": skipped, "failures": failures}


def antidiagonal_initial_check(M: DegenMatrix, minor_size: int, allow_small: bool = False) -> bool:
    return antidiagonal_initial_report(M, minor_size, allow_small)["ok"]


@dataclass
class CodimCertificate:
    monomials: list
    witnesses: list  # one Poly of J per monomial, with that leading monomial
    bound: int = 0
    method: str = "disjoint"  # or "transversal"
    labels: list = field(default_factory=list)

    def witnesses_ok(self) -> bool:
        return len(self.witnesses) == len(self.monomials) and all(
            not w.is_zero() and w.leading_monomial() == mono
            for w, mono in zip(self.witnesses, self.monomials)
        )


def _support(mono) -> set:
    return {k for k, e in enumerate(mono) if e}


def disjoint_support_codim(c: CodimCertificate) -> int:
    """Pairwise variable-disjoint monomials form a regular sequence: codim >= count."""
    seen: set = set()
    for mono in c.monomials:
        s = _support(mono)
        if s & seen:
            raise ValueError("certificate monomials share a variable")
        seen |= s
    return len(c.monomials)


def monomial_ideal_codim(monomials: Sequence) -> int:
    """Height of a monomial ideal = smallest set of variables meeting every support."""
    supports = [_support(m) for m in monomials]
    if not supports:
        return 0
    if any(not s for s in supports):
        raise ValueError("the unit monomial generates the whole ring")
    universe = sorted(set().union(*supports))
    for k in range(1, len(universe) + 1):
        for cover in itertools.combinations(universe, k):
            cs = set(cover)
            if all(s & cs for s in supports):
                return k
    return len(universe)


def _witness_for(gens, piece: GradedPiece, mono) -> Optional[Poly]:
    combo = piece.initials.get(mono)
    return None if combo is None else expand_combination(gens, combo)


def _mono(ring, *factors) -> tuple:
    """Monomial from (i, j, exponent) triples."""
    powers: dict = {}
    for i, j, e in factors:
        v = hat(i, j)
        powers[v] = powers.get(v, 0) + e
    return ring.monomial(powers)


def clone_m3_monomials(ring) -> list:
    return [_mono(ring, (1, 2, 2)), _mono(ring, (2, 2, 2)), _mono(ring, (1, 3, 3))]


def clone_m4_monomials(ring) -> list:
    """The 13 generators of in(J) for the 4x4 clone (9 cubics, 4 quartics)."""
    factor_lists = [
        [(2, 3, 2), (3, 3, 1)],
        [(1, 4, 1), (2, 3, 1), (2, 4, 1)],
        [(1, 4, 1), (2, 3, 2)],
        [(1, 4, 2), (2, 3, 1)],
        [(1, 4, 2), (2, 2, 1), (3, 4, 1)],
        [(1, 4, 2), (2, 2, 1), (3, 3, 1)],
        [(1, 4, 2), (2, 2, 1), (2, 4, 1)],
        [(1, 4, 3), (2, 2, 1)],
        [(1, 3, 1), (2, 3, 1), (3, 3, 1)],
        [(1, 3, 1), (1, 4, 1), (2, 3, 1)],
        [(1, 3, 1), (1, 4, 1), (2, 2, 1)],
        [(1, 3, 2), (3, 3, 1)],
        [(1, 3, 2), (2, 2, 1)],
    ]
    return [_mono(ring, *s) for s in factor_lists]


def displayed_clone_initials(m: int, ring) -> dict:
    """Hard-coded in(f_{1,1}), in(f_{1,m}), in(f_{m-1,m-1}) for m >= 5 as (|coeff|, monomial)."""
    if m < 5:
        raise ValueError("displayed initial terms are stated for m >= 5")
    if m % 2:
        h = (m + 1) // 2
        f11 = [(k, m + 2 - k, 2) for k in range(2, h + 1)]
        f1m = [(1, m, 1)] + [(k, m + 1 - k, 2) for k in range(2, h)] + [(h, h, 1)]
        fmm = [(k, m - k, 2) for k in range(1, m // 2 + 1)]
    else:
        h = (m + 2) // 2
        f11 = [(k, m + 2 - k, 2) for k in range(2, h)] + [(h, h, 1)]
        f1m = [(1, m, 1)] + [(k, m + 1 - k, 2) for k in range(2, m // 2 + 1)]
        fmm = [(k, m - k, 2) for k in range(1, m // 2)] + [(m // 2, m // 2, 1)]
    return {
        hat(1, 1): (1, _mono(ring, *f11)),
        hat(1, m): (2, _mono(ring, *f1m)),
        hat(m - 1, m - 1): (1, _mono(ring, *fmm)),
    }


@dataclass
class CloneCodimReport:
    m: int
    certificate: CodimCertificate
    bound: int
    members_ok: bool
    displayed_match: Optional[bool] = None
    missing: list = field(default_factory=list)


def clone_codim_certificate(m: int, max_rows: int = 50000) -> CloneCodimReport:
    """codim J >= 3 for the clone: listed monomials for m = 3, 4; displayed
    leading terms of three partials for m >= 5."""
    M = build(md_clone(m))
    ring = M.ring
    gens = gradient(determinant(M), M.variables).generators
    if m in (3, 4):
        monos = clone_m3_monomials(ring) if m == 3 else clone_m4_monomials(ring)
        pieces: dict = {}
        witnesses, missing = [], []
        for mono in monos:
            d = sum(mono)
            if d not in pieces:
                pieces[d] = graded_piece(gens, d, max_rows)
            w = _witness_for(gens, pieces[d], mono)
            if w is None:
                missing.append(ring.format_monomial(mono))
            witnesses.append(w)
        method = "disjoint" if m == 3 else "transversal"
        cert = CodimCertificate(monos, witnesses, method=method,
                                labels=[ring.format_monomial(x) for x in monos])
        cert.bound = disjoint_support_codim(cert) if m == 3 else monomial_ideal_codim(monos)
        ok = not missing and cert.witnesses_ok()
        return CloneCodimReport(m, cert, cert.bound, ok, None, missing)
    shown = displayed_clone_initials(m, ring)
    monos, witnesses, labels = [], [], []
    match = True
    for v, (coeff, mono) in shown.items():
        g = gens[M.variables.index(v)]
        c, lm = g.leading_term()
        match = match and lm == mono and abs(c) == coeff  # sign depends on m
        monos.append(lm)
        witnesses.append(g)
        labels.append(f"in(f{v})")
    cert = CodimCertificate(monos, witnesses, method="disjoint", labels=labels)
    cert.bound = disjoint_support_codim(cert)
    return CloneCodimReport(m, cert, cert.bound, cert.witnesses_ok(), match)


@dataclass
class MembershipWitness:
    target: Poly
    combination: dict  # VarId of the partial f_v -> Poly coefficient
    multiplier: Poly
    generators: dict  # VarId -> Poly (the partials)

    def expand(self) -> Poly:
        acc = self.target.ring.zero()
        for v, c in self.combination.items():
            if c.terms:
                acc = acc + c * self.generators[v]
        return acc

    def verify(self) -> bool:
        return self.expand() == self.target


def sparse_membership_witness(m: int, r: int) -> MembershipWitness:
    """A monomial p with p * Delta_{m,m} in J, with explicit coefficients on the partials.

    Cofactors Delta_{i,j} with i + j <= 2m - r are (multiples of) partials.  The
    rest are reached column by column: for c past the middle, row a = 2m-r-c
    of S(r) stops at column c, so the cofactor identity for row a against
    column i isolates x_{a,c} * Delta_{i,c}.  Each column multiplies p by
    x_{a,c}^2.
    """
    if m - r < 3:
        raise ValueError("membership witness needs m - r >= 3")
    M = build(sparse(m, r))
    ring = M.ring
    f = determinant(M)
    grad = gradient(f, M.variables)
    gens = dict(zip(grad.variables, grad.generators))
    table = cofactors(M)
    s = 2 * m - r
    c0 = (s + 2) // 2

    def direct(i: int, j: int) -> dict:
        v = hat(i, j)
        return {v: ring.one() if v.i == v.j else ring.const(Fraction(1, 2))}

    def scale(combo: dict, p: Poly) -> dict:
        return {v: c * p for v, c in combo.items()}

    def add(acc: dict, combo: dict, p: Poly) -> None:
        for v, c in combo.items():
            acc[v] = acc.get(v, ring.zero()) + c * p

    known = {hat(i, j): direct(i, j) for i in range(1, c0) for j in range(i, c0)}
    mult = ring.one()
    for c in range(c0, m + 1):
        a = s - c
        x = ring.gen(*hat(a, c))
        new = {}
        for i in range(1, a + 1):
            new[hat(i, c)] = scale(direct(i, c), mult * x)
        for i in range(a + 1, c):
            acc: dict = {}
            for j in range(1, c):
                e = M.entry(a, j)
                if e is not None:
                    add(acc, known[hat(j, i)], -ring.gen(*e))
            new[hat(i, c)] = acc
        acc = {}
        for j in range(1, c):
            e = M.entry(a, j)
            if e is not None:
                add(acc, new[hat(j, c)], -ring.gen(*e))
        x2 = x * x
        known = {v: scale(cb, x2) for v, cb in known.items()}
        for v, cb in new.items():
            known[v] = scale(cb, x)
        known[hat(c, c)] = acc
        mult = mult * x2
    combo = {v: cb for v, cb in known[hat(m, m)].items() if cb.terms}
    return MembershipWitness(mult * table.delta[(m, m)], combo, mult, gens)


@dataclass
class SparseCodimReport:
    m: int
    r: int
    certificate: CodimCertificate
    lower_bound: int
    upper_bound: Optional[int]  # 2 when J sits inside (x_{1,m}, x_{2,m})
    containment_ok: Optional[bool]
    expected_initials_ok: bool
    witness: Optional[MembershipWitness] = None

    @property
    def codim(self) -> Optional[int]:
        return self.lower_bound if self.upper_bound == self.lower_bound else None


def _antidiagonal_monomial(ring, rows: range, total: int) -> tuple:
    return _mono(ring, *[(i, total - i, 1) for i in rows])


def sparse_codim_certificate(m: int, r: int) -> SparseCodimReport:
    M = build(sparse(m, r))
    ring = M.ring
    f = determinant(M)
    grad = gradient(f, M.variables)
    gens = dict(zip(grad.variables, grad.generators))
    g11, g1m = gens[hat(1, 1)], gens[hat(1, m)]
    expected = [
        _antidiagonal_monomial(ring, range(2, m + 1), m + 2),
        _antidiagonal_monomial(ring, range(2, m + 1), m + 1),
    ]
    monos = [g11.leading_monomial(), g1m.leading_monomial()]
    witnesses = [g11, g1m]
    labels = ["in(Delta11)", f"in(Delta1{m})"]
    witness = None
    containment = None
    upper = None
    if m - r == 2:
        a, b = ring.var_index(hat(1, m)), ring.var_index(hat(2, m))
        containment = all(mono[a] or mono[b] for g in gens.values() for mono in g.terms)
        upper = 2 if containment else None
    else:
        witness = sparse_membership_witness(m, r)
        if not witness.verify():
            raise AssertionError("membership witness does not expand to its target")
        p = witness.multiplier.leading_monomial()
        expected.append(tuple(x + y for x, y in zip(p, _antidiagonal_monomial(ring, range(1, m), m))))
        monos.append(witness.target.leading_monomial())
        witnesses.append(witness.target)
        labels.append(f"in(p*Delta{m}{m})")
    cert = CodimCertificate(monos, witnesses, method="disjoint", labels=labels)
    cert.bound = disjoint_support_codim(cert)
    return SparseCodimReport(m, r, cert, cert.bound, upper, containment, monos == expected, witness)
