"""Exact sparse multivariate polynomials over the rationals.

Variables are the entries ``x_{i,j}`` (``i <= j``) of a symmetric matrix,
ordered row-major.  Monomials are exponent tuples aligned to that order and
compared in degree-graded reverse lexicographic order.
"""
from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Optional, Union

Coeff = Union[int, Fraction]
Monomial = tuple  # exponent vector, one slot per ring variable


class VarId(NamedTuple):
    i: int
    j: int

    def __str__(self) -> str:
        return f"{self.i}{self.j}" if max(self.i, self.j) < 10 else f"{self.i}_{self.j}"


def hat(i: int, j: int) -> VarId:
    """The symmetric variable in slot (i, j): ``x_{i,j}`` if i <= j else ``x_{j,i}``."""
    return VarId(i, j) if i <= j else VarId(j, i)


def _norm(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Ring:
    """Polynomial ring over Q in an ordered tuple of variables."""

    __slots__ = ("variables", "prefix", "index", "nvars", "_zero_exp")

    def __init__(self, variables: Iterable[VarId], prefix: str = "x"):
        self.variables = tuple(variables)
        self.prefix = prefix
        self.index = {v: k for k, v in enumerate(self.variables)}
        if len(self.index) != len(self.variables):
            raise ValueError("duplicate variables in ring")
        self.nvars = len(self.variables)
        self._zero_exp = (0,) * self.nvars

    def __repr__(self) -> str:
        return f"Ring({self.prefix}, n={self.nvars})"

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, Ring)
            and self.prefix == other.prefix
            and self.variables == other.variables
        )

    def __hash__(self) -> int:
        return hash((self.prefix, self.variables))

    def var_index(self, v) -> int:
        v = hat(*v)
        try:
            return self.index[v]
        except KeyError:
            raise ValueError(f"{self.prefix}_{v} is not a variable of {self!r}") from None

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_exp: 1})

    def const(self, c: Coeff) -> "Poly":
        return Poly(self, {self._zero_exp: c})

    def gen(self, i: int, j: int) -> "Poly":
        e = [0] * self.nvars
        e[self.var_index((i, j))] = 1
        return Poly(self, {tuple(e): 1})

    def monomial(self, powers: Mapping) -> Monomial:
        e = [0] * self.nvars
        for v, k in powers.items():
            e[self.var_index(v)] += k
        return tuple(e)

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for v, k in zip(self.variables, mono):
            if k:
                name = f"{self.prefix}{v}"
                parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def symmetric_ring(m: int, prefix: str = "x") -> Ring:
    """Ring in the entries of the generic m x m symmetric matrix, row-major."""
    return Ring((VarId(i, j) for i in range(1, m + 1) for j in range(i, m + 1)), prefix)


def revlex_key(mono: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in graded revlex."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def compare_revlex(a: Monomial, b: Monomial, ring: Optional[Ring] = None) -> int:
    """Three-way comparison of monomials: 1 if a > b, 0 if equal, -1 if a < b."""
    if len(a) != len(b) or (ring is not None and len(a) != ring.nvars):
        raise ValueError("monomials over different variable universes")
    da, db = sum(a), sum(b)
    if da != db:
        return 1 if da > db else -1
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return 1 if x < y else -1
    return 0


class Poly:
    """Immutable polynomial: a map from exponent tuples to nonzero rationals."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Optional[Mapping[Monomial, Coeff]] = None):
        self.ring = ring
        self.terms = {k: _norm(c) for k, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.ring.zero()
            return Poly._raw(self.ring, {k: _norm(c * other) for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = get(k, 0) + ca * cb
        return Poly._raw(self.ring, {k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection ---------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def degree_in(self, v) -> int:
        idx = self.ring.var_index(v)
        return max((k[idx] for k in self.terms), default=-1)

    def variables(self) -> list:
        """Variables occurring in the polynomial, in ring order."""
        used = [False] * self.ring.nvars
        for k in self.terms:
            for t, e in enumerate(k):
                if e:
                    used[t] = True
        return [v for v, u in zip(self.ring.variables, used) if u]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: revlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple:
        return leading_term(self)

    def leading_monomial(self) -> Monomial:
        return leading_term(self)[1]

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.sorted_terms():
            name = self.ring.format_monomial(mono)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if name == "1":
                body = str(a)
            elif a == 1:
                body = name
            else:
                body = f"{a}*{name}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    # -- calculus and maps --------------------------------------------------

    def derivative(self, v) -> "Poly":
        return derivative(self, v)

    def substitute(self, endo: Mapping) -> "Poly":
        return substitute(self, endo)

    def evaluate(self, pt: Mapping) -> Coeff:
        return evaluate(self, pt)


def derivative(p: Poly, v) -> Poly:
    """Formal partial derivative with respect to the variable ``v``."""
    idx = p.ring.var_index(v)
    out = {}
    for k, c in p.terms.items():
        e = k[idx]
        if e:
            k2 = k[:idx] + (e - 1,) + k[idx + 1:]
            out[k2] = c * e
    return Poly._raw(p.ring, out)


def substitute(p: Poly, endo: Mapping) -> Poly:
    """Apply a coordinate-like endomorphism: each variable goes to a variable or to 0.

    ``endo`` maps VarId to VarId or None; unmapped variables are fixed.
    """
    ring = p.ring
    target = []
    for v in ring.variables:
        w = endo.get(v, v)
        target.append(None if w is None else ring.var_index(w))
    out: dict = {}
    n = ring.nvars
    for k, c in p.terms.items():
        e = [0] * n
        for t, x in enumerate(k):
            if x:
                dest = target[t]
                if dest is None:
                    break
                e[dest] += x
        else:
            key = tuple(e)
            out[key] = out.get(key, 0) + c
    return Poly(ring, out)


def _point_vector(ring: Ring, pt: Mapping) -> list:
    vals = [None] * ring.nvars
    for v, x in pt.items():
        idx = ring.index.get(hat(*v))
        if idx is not None:
            vals[idx] = x
    return vals


def evaluate(p: Poly, pt: Mapping) -> Coeff:
    """Exact value of ``p`` at a rational point (a map from VarId to a rational)."""
    return evaluate_vector(p, _point_vector(p.ring, pt))


def evaluate_vector(p: Poly, vals) -> Coeff:
    powers: dict = {}
    total = 0
    for k, c in p.terms.items():
        term = c
        for t, e in enumerate(k):
            if e:
                x = vals[t]
                if x is None:
                    raise ValueError(f"point does not assign {p.ring.prefix}{p.ring.variables[t]}")
                key = (t, e)
                pw = powers.get(key)
                if pw is None:
                    pw = powers[key] = x**e
                term = term * pw
        total += term
    return _norm(total) if isinstance(total, Fraction) else total


def compose(p: Poly, images: Mapping, target: Ring) -> Poly:
    """Ring homomorphism sending each variable of ``p.ring`` to a Poly of ``target``.

    Variables of ``p`` missing from ``images`` raise; ``p.ring`` variables that
    do not occur in ``p`` need no image.
    """
    ring = p.ring
    imgs = [None] * ring.nvars
    for v, q in images.items():
        idx = ring.index.get(hat(*v))
        if idx is not None:
            imgs[idx] = q
    cache: dict = {}

    def power(t: int, e: int) -> Poly:
        key = (t, e)
        if key not in cache:
            base = imgs[t]
            if base is None:
                raise ValueError(f"no image for {ring.prefix}{ring.variables[t]}")
            cache[key] = base if e == 1 else power(t, e - 1) * base
        return cache[key]

    acc: dict = {}
    for k, c in p.terms.items():
        term = target.const(c)
        for t, e in enumerate(k):
            if e:
                term = term * power(t, e)
        for kk, cc in term.terms.items():
            acc[kk] = acc.get(kk, 0) + cc
    return Poly(target, acc)


def leading_term(p: Poly) -> tuple:
    """(coefficient, monomial) of the revlex-largest term."""
    if not p.terms:
        raise ValueError("zero polynomial has no leading term")
    mono = max(p.terms, key=revlex_key)
    return p.terms[mono], mono


def reduce(p: Poly, d: Poly) -> tuple:
    """Long division of ``p`` by the single divisor ``d`` under graded revlex.

    Returns ``(q, r)`` with ``p = q*d + r`` and no term of ``r`` divisible by
    the leading monomial of ``d``.
    """
    if p.ring != d.ring:
        raise ValueError("polynomials from different rings")
    if not d.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    lc, lm = leading_term(d)
    lc = Fraction(lc)
    dterms = list(d.terms.items())
    work = dict(p.terms)
    heap = [(_neg_key(k), k) for k in work]
    heapq.heapify(heap)
    quot: dict = {}
    rem: dict = {}
    while heap:
        _, k = heapq.heappop(heap)
        c = work.pop(k, 0)
        if not c:
            continue
        # duplicates of the same key may still sit in the heap; the pop above drained it
        if all(x >= y for x, y in zip(k, lm)):
            qk = tuple(x - y for x, y in zip(k, lm))
            qc = _norm(c / lc)
            quot[qk] = qc
            for dk, dc in dterms:
                kk = tuple(x + y for x, y in zip(qk, dk))
                if kk == k:
                    continue
                prev = work.get(kk)
                nv = (prev or 0) - qc * dc
                if nv:
                    work[kk] = nv
                    if prev is None:
                        heapq.heappush(heap, (_neg_key(kk), kk))
                elif prev is not None:
                    del work[kk]
        else:
            rem[k] = c
    return Poly(p.ring, quot), Poly(p.ring, rem)


def _neg_key(mono: Monomial) -> tuple:
    return (-sum(mono), tuple(reversed(mono)))


def divide_exact(p: Poly, d: Poly) -> Optional[Poly]:
    """The quotient ``p / d`` if ``d`` divides ``p``, else None.

    A single polynomial is a Groebner basis of its principal ideal, so the
    remainder of long division vanishes exactly when ``d | p``.
    """
    q, r = reduce(p, d)
    return q if r.is_zero() else None


def multiplicity(p: Poly, d: Poly) -> tuple:
    """Largest k with d^k | p, and the final cofactor.  ``p`` must be nonzero."""
    if p.is_zero():
        raise ValueError("zero polynomial is divisible by every power")
    k = 0
    while True:
        q = divide_exact(p, d)
        if q is None:
            return k, p
        k, p = k + 1, q


def monomials_of_degree(ring: Ring, d: int, support: Optional[Iterable[int]] = None):
    """All exponent tuples of total degree d supported on the given variable indices."""
    idx = list(range(ring.nvars)) if support is None else sorted(support)
    for combo in itertools.combinations_with_replacement(idx, d):
        e = [0] * ring.nvars
        for t in combo:
            e[t] += 1
        yield tuple(e)


def lcm_denominator(values) -> int:
    out = 1
    for x in values:
        if isinstance(x, Fraction):
            out = math.lcm(out, x.denominator)
    return out
