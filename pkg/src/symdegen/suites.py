"""Verification suites behind the command line.  Each suite maps a RunConfig to checks."""
from __future__ import annotations

import re
from math import comb
from typing import Callable

from . import calculus, certificates, duality, syzygy
from .report import RunConfig, compare, info, skipped, timed
from .symmatrix import (
    Degeneration, DegenMatrix, Kind, adj_adj_identity, brute_zero_count, build,
    determinant, general, generic, md_clone, sparse, verify_cauchy, zero_count,
)

MAP_ITEM = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*->\s*(?:\(\s*(\d+)\s*,\s*(\d+)\s*\)|(0))")
SLOW_M = 6


class UsageError(ValueError):
    pass


def parse_map(text: str) -> dict:
    """'(2,3)->(1,1), (3,3)->0' -> {(2,3): (1,1), (3,3): None}."""
    out = {}
    rest = text
    for mt in MAP_ITEM.finditer(text):
        i, j, k, l, zero = mt.groups()
        out[(int(i), int(j))] = None if zero else (int(k), int(l))
        rest = rest.replace(mt.group(0), "", 1)
    if not out or rest.replace(",", "").strip():
        raise UsageError(f"cannot parse --map {text!r}; use '(i,j)->(k,l)' or '(i,j)->0', comma separated")
    return out


def degeneration(cfg: RunConfig) -> Degeneration:
    m = cfg.m
    if m < 2:
        raise UsageError("--m must be at least 2")
    kind = cfg.degen
    if kind == "clone":
        if m < 3:
            raise UsageError("cloning needs --m >= 3")
        return md_clone(m)
    if kind == "sparse":
        if cfg.r is None or not 1 <= cfg.r <= m - 2:
            raise UsageError("sparse needs --r with 1 <= r <= m-2")
        return sparse(m, cfg.r)
    if kind == "general":
        if not cfg.map:
            raise UsageError("general needs --map")
        try:
            deg = general(m, parse_map(cfg.map))
            build(deg)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return deg
    return generic(m)


def _fmt_point(pt: dict) -> dict:
    return {f"x{v}": str(x) for v, x in pt.items()}


def _gate(cfg: RunConfig, name: str, limit: int = SLOW_M - 1):
    if cfg.m > limit and not cfg.allow_slow:
        return skipped(name, f"m={cfg.m} exceeds the default size cap m<={limit}; pass --allow-slow")
    return None


def _matrix(cfg: RunConfig) -> DegenMatrix:
    return build(degeneration(cfg))


def suite_zeros(cfg: RunConfig) -> list:
    checks: list = []
    if cfg.r is None:
        return [skipped("zero_count", "needs --r")]
    with timed(checks):
        checks.append(compare("zero_count", brute_zero_count(cfg.m, cfg.r), zero_count(cfg.r)))
        checks.append(compare("surviving_positions", comb(cfg.m + 1, 2) - brute_zero_count(cfg.m, cfg.r),
                              duality.sparse_position_count(cfg.m, cfg.r)))
    return checks


def suite_cauchy(cfg: RunConfig) -> list:
    checks: list = []
    gate = _gate(cfg, "cauchy")
    if gate:
        return [gate]
    M = _matrix(cfg)
    with timed(checks):
        rep = verify_cauchy(M)
        checks.append(compare("cauchy_identity", True, rep.ok, {"entries_checked": rep.checked,
                                                                "first_failure": rep.first_failure}))
    if cfg.m <= 4:
        with timed(checks):
            checks.append(compare("adj_adj_identity", True, adj_adj_identity(M)))
    else:
        checks.append(skipped("adj_adj_identity", "adj(adj) is checked for m <= 4"))
    return checks


def suite_gradient(cfg: RunConfig) -> list:
    checks: list = []
    gate = _gate(cfg, "gradient_equals_cofactor_sums")
    if gate:
        return [gate]
    M = _matrix(cfg)
    with timed(checks):
        f = determinant(M)
        d = calculus.gradient(f, M.variables)
        c = calculus.gradient_from_cofactors(M)
        bad = [f"x{v}" for v, a, b in zip(M.variables, d.generators, c.generators) if a != b]
        checks.append(compare("gradient_equals_cofactor_sums", [], bad, {"variables": len(M.variables)}))
    return checks


def suite_syzygies(cfg: RunConfig) -> list:
    checks: list = []
    M = _matrix(cfg)
    kind = M.degeneration.kind
    m = cfg.m
    if kind in (Kind.CLONE, Kind.SPARSE):
        gate = _gate(cfg, "syzygies")
        if gate:
            return [gate]
        with timed(checks):
            if kind is Kind.CLONE:
                S = syzygy.cloning_syzygies(m)
                want = syzygy.expected_clone_count(m)
                blocks = syzygy.clone_row_blocks(m)
            else:
                S = syzygy.sparse_syzygies(m, cfg.r)
                want = comb(m + 1, 2) - 1
                blocks = syzygy.sparse_row_blocks(m)
                fams = S.family_counts()
                sizes = [fams.get(t, 0) for t in ("first-col", "inner", "tail")]
                checks.append(compare("family_sizes", list(syzygy.expected_sparse_family_sizes(m, cfg.r)), sizes))
            checks.append(compare("syzygy_count", want, len(S), S.family_counts()))
            checks.append(compare("annihilation", True, S.annihilates()))
            checks.append(compare("linear_entries", True, S.is_linear()))
        with timed(checks):
            checks.append(compare("syzygy_rank", want, syzygy.syzygy_rank(S, cfg.trials, cfg.seed)))
        if m <= 4:
            with timed(checks):
                checks.append(compare("block_triangular", True, syzygy.block_check(S, blocks, cfg.seed)))
        else:
            checks.append(skipped("block_triangular", "block shape is checked for m <= 4"))
        if kind is Kind.CLONE and m <= 4:
            with timed(checks):
                L = syzygy.linear_syzygy_space(S.generators, M.variables)
                checks.append(compare("constructed_in_solved", True, syzygy.contained_in(S, L, M.variables),
                                      {"solved_dimension": len(L)}))
        return checks
    if m > 4 and not cfg.allow_slow:
        return [skipped("linear_rank", "exact linear-syzygy solve runs for m <= 4; pass --allow-slow")]
    with timed(checks):
        f = determinant(M)
        gens = calculus.gradient(f, M.variables).generators
        L = syzygy.linear_syzygy_space(gens, M.variables)
        rank = syzygy.syzygy_rank(L, cfg.trials, cfg.seed)
        checks.append(info("linear_syzygy_dimension", len(L)))
        if kind is Kind.GENERIC:
            checks.append(compare("linear_rank", len(M.variables) - 1, rank))
        else:
            checks.append(info("linear_rank", rank, {"maximal": len(M.variables) - 1}))
    return checks


def suite_hessian(cfg: RunConfig) -> list:
    checks: list = []
    gate = _gate(cfg, "hessian")
    if gate:
        return [gate]
    M = _matrix(cfg)
    kind = M.degeneration.kind
    with timed(checks):
        f = determinant(M)
        H = calculus.hessian(f, M.variables)
        est = calculus.hessian_generic_rank(H, cfg.trials, cfg.seed)
        wit = {"ranks": est.ranks, "point": _fmt_point(est.witnesses[0])}
        if kind is Kind.SPARSE:
            want = calculus.expected_polar_rank(cfg.m, cfg.r)
            checks.append(compare("polar_rank", want, est.value, wit))
            checks.append(compare("polar_rank_never_exceeds", True, max(est.ranks) <= want))
        elif kind in (Kind.CLONE, Kind.GENERIC):
            checks.append(compare("hessian_rank", H.size, est.value, wit))
        else:
            checks.append(info("hessian_rank", est.value, wit))
    if kind is Kind.CLONE:
        with timed(checks):
            if cfg.m == 3:
                checks.append(compare("hessian_nonvanishing", True, not calculus.hessian_determinant(H).is_zero(),
                                      {"method": "exact_determinant"}))
            else:
                ds = calculus.diagonal_specialization(M, H)
                checks.append(compare("hessian_nonvanishing", True, ds.ok,
                                      {"method": "diagonal_specialization", "monomial": str(ds.det)}))
    return checks


def suite_homaloidal(cfg: RunConfig) -> list:
    checks: list = []
    gate = _gate(cfg, "homaloidal", 4 if cfg.degen != "clone" else 5)
    if gate:
        return [gate]
    M = _matrix(cfg)
    with timed(checks):
        rep = calculus.homaloidal_certificate(M, cfg.trials, cfg.seed)
        wit = {"hessian_method": rep.hessian_method, "linear_rank": rep.linear_rank}
        if M.degeneration.kind is Kind.GENERAL:
            checks.append(info("homaloidal_certificate", rep.homaloidal, wit))
        else:
            # sparse determinants have vanishing Hessian, so the polar map cannot be birational
            want = M.degeneration.kind is not Kind.SPARSE
            checks.append(compare("homaloidal_certificate", want, rep.homaloidal, wit))
    return checks


def suite_codim(cfg: RunConfig) -> list:
    checks: list = []
    kind = degeneration(cfg).kind
    m = cfg.m
    max_degree = cfg.max_degree if cfg.max_degree is not None else m
    if kind is Kind.CLONE:
        gate = _gate(cfg, "codim_certificate")
        if gate:
            return [gate]
        if m == 4 and max_degree < 4:
            return [skipped("codim_certificate", f"the 4x4 certificate needs degree 4 pieces; max degree is {max_degree}")]
        with timed(checks):
            rep = certificates.clone_codim_certificate(m)
            wit = {"monomials": rep.certificate.labels, "method": rep.certificate.method}
            checks.append(compare("initials_in_ideal", True, rep.members_ok, {"missing": rep.missing}))
            checks.append(compare("codim_lower_bound", 3, rep.bound, wit))
            if rep.displayed_match is not None:
                checks.append(compare("displayed_initials_match", True, rep.displayed_match))
        return checks
    if kind is Kind.SPARSE:
        gate = _gate(cfg, "codim_certificate")
        if gate:
            return [gate]
        with timed(checks):
            rep = certificates.sparse_codim_certificate(m, cfg.r)
            wit = {"monomials": [_monomial_label(rep.certificate, k) for k in range(len(rep.certificate.monomials))]}
            want = 2 if m - cfg.r == 2 else 3
            checks.append(compare("codim_lower_bound", want, rep.lower_bound, wit))
            checks.append(compare("initials_are_antidiagonal", True, rep.expected_initials_ok))
            if m - cfg.r == 2:
                checks.append(compare("containment_in_x1m_x2m", True, rep.containment_ok))
                checks.append(compare("codim", 2, rep.codim))
            else:
                checks.append(compare("membership_witness", True, rep.witness.verify(),
                                      {"multiplier": str(rep.witness.multiplier)}))
        return checks
    return [skipped("codim_certificate", "certificates exist for clone and sparse degenerations")]


def _monomial_label(cert, k: int) -> str:
    ring = cert.witnesses[k].ring
    return ring.format_monomial(cert.monomials[k])


def suite_antidiagonal(cfg: RunConfig) -> list:
    checks: list = []
    M = _matrix(cfg)
    kind = M.degeneration.kind
    if kind is Kind.CLONE:
        if cfg.m < 6:
            return [skipped("antidiagonal_initials", "the clone claim needs m >= 6")]
        if not cfg.allow_slow:
            return [skipped("antidiagonal_initials", "clone minors at m >= 6 need --allow-slow")]
        sizes = (cfg.m - 2, cfg.m - 1)
    else:
        gate = _gate(cfg, "antidiagonal_initials")
        if gate:
            return [gate]
        sizes = (cfg.m - 2, cfg.m - 1, cfg.m)
    for k in sizes:
        with timed(checks):
            rep = certificates.antidiagonal_initial_report(M, k)
            checks.append(compare(f"antidiagonal_initials_size_{k}", True, rep["ok"],
                                  {"checked": rep["checked"], "skipped": rep["skipped"],
                                   "failures": [list(map(list, x)) for x in rep["failures"][:5]]}))
    return checks


def suite_dual(cfg: RunConfig) -> list:
    checks: list = []
    gate = _gate(cfg, "dual")
    if gate:
        return [gate]
    M = _matrix(cfg)
    kind = M.degeneration.kind
    m = cfg.m
    with timed(checks):
        f = determinant(M)
        est = duality.hessian_rank_on_hypersurface(f, cfg.trials, cfg.seed)
        wit = {"ranks": est.ranks, "point": _fmt_point(est.witnesses[0])}
        dim = est.value - 2
        if kind is Kind.GENERAL:
            ladderlike = all(
                M.degeneration.image(v) == v
                for v in M.ring.variables if v.i + v.j <= m + 2
            )
            if ladderlike:
                checks.append(compare("dual_dimension_at_least", True, dim >= m - 1, {"dimension": dim, **wit}))
            else:
                checks.append(info("dual_dimension", dim, wit))
        else:
            checks.append(compare("dual_dimension", m - 1, dim, wit))
    if m > 4:
        checks.append(skipped("dual_ladder_divisible", "ladder divisibility runs for m <= 4"))
        return checks
    if kind is Kind.CLONE:
        with timed(checks):
            system = duality.dual_ladder_clone(m)
            ok = duality.ladder_divisibility(system, M)
            checks.append(compare("dual_ladder_divisible", len(ok), sum(ok), {"generators": len(ok)}))
        with timed(checks):
            q = duality.quadric_report(m)
            checks.append(compare("quadric_divisible", True, q.divisible))
            checks.append(compare("quadric_outside_ladder_span", True, q.outside_span))
    elif kind in (Kind.SPARSE, Kind.GENERIC):
        with timed(checks):
            system = duality.dual_ladder_sparse(m, cfg.r or 0)
            ok = duality.ladder_divisibility(system, M)
            checks.append(compare("dual_ladder_divisible", len(ok), sum(ok), {"generators": len(ok)}))
    return checks


def suite_polar_ladder(cfg: RunConfig) -> list:
    checks: list = []
    if degeneration(cfg).kind is not Kind.SPARSE:
        return [skipped("polar_ladder_vanishes", "the polar ladder belongs to sparse degenerations")]
    gate = _gate(cfg, "polar_ladder_vanishes")
    if gate:
        return [gate]
    with timed(checks):
        ok = duality.polar_ladder_vanishing(cfg.m, cfg.r)
        checks.append(compare("polar_ladder_vanishes", len(ok), sum(ok), {"generators": len(ok)}))
    return checks


def suite_multiplicity(cfg: RunConfig) -> list:
    checks: list = []
    M = _matrix(cfg)
    kind = M.degeneration.kind
    m = cfg.m
    n = len(M.variables)
    if n <= 6:
        method = "exact_division"
    else:
        method = "line_restriction"
        gate = _gate(cfg, "hessian_multiplicity", 4)
        if gate:
            return [gate]
    with timed(checks):
        f = determinant(M)
        rep = duality.hessian_multiplicity(f, method, cfg.seed)
        wit = {"method": method, "probabilistic": rep.probabilistic, **rep.witness}
        if kind is Kind.SPARSE:
            checks.append(compare("vanishing_hessian", True, rep.vanishing_hessian, wit))
        elif kind is Kind.CLONE:
            want = duality.expected_multiplicity(m)
            checks.append(compare("hessian_multiplicity", want, rep.k, wit))
            resid = n * (m - 2) - want * m
            checks.append(compare("residual_degree", resid, rep.residual_degree))
        else:
            checks.append(info("hessian_multiplicity", rep.k, {**wit, "vanishing_hessian": rep.vanishing_hessian}))
    return checks


def suite_gorenstein(cfg: RunConfig) -> list:
    if cfg.r is None or not 0 <= cfg.r <= cfg.m - 2:
        raise UsageError("gorenstein needs --r with 0 <= r <= m-2")
    checks: list = []
    with timed(checks):
        checks.append(compare("gorenstein", cfg.r == cfg.m - 2, duality.gorenstein_check(cfg.m, cfg.r),
                              {"corner_index_sum": 2 * cfg.m - cfg.r - 1, "m_plus_1": cfg.m + 1}))
    return checks


def suite_hypersurface(cfg: RunConfig) -> list:
    checks: list = []
    if degeneration(cfg).kind is not Kind.CLONE:
        return [skipped("hypersurface_equation", "the cofactor hypersurface belongs to the clone")]
    gate = _gate(cfg, "hypersurface_equation", 4)
    if gate:
        return [gate]
    with timed(checks):
        rep = duality.hypersurface_equation_report(cfg.m)
        checks.append(compare("hypersurface_equation", True, rep.vanishes))
        checks.append(compare("hypersurface_degree", cfg.m - 1, rep.degree))
        checks.append(compare("adj_adj_entries_coincide", True, rep.adj_adj_equal))
    return checks


SUITES: dict = {
    "zeros": (suite_zeros, "zero count of sparsing against brute force"),
    "cauchy": (suite_cauchy, "M*adj(M) = det(M)*I and adj(adj(M)) = det^(m-2)*M"),
    "gradient": (suite_gradient, "partials equal sums of cofactors over slots"),
    "syzygies": (suite_syzygies, "linear syzygies: counts, annihilation, rank, block shape"),
    "hessian": (suite_hessian, "generic Hessian rank, polar dimension, non-vanishing"),
    "homaloidal": (suite_homaloidal, "Hessian non-vanishing plus maximal linear rank"),
    "codim": (suite_codim, "initial-monomial codimension certificates"),
    "antidiagonal": (suite_antidiagonal, "leading terms of minors are anti-diagonal products"),
    "dual": (suite_dual, "dual dimension via Hessian rank on V(f); ladder minors mod f"),
    "polar-ladder": (suite_polar_ladder, "polar ladder minors vanish on cofactors"),
    "multiplicity": (suite_multiplicity, "power of f dividing the Hessian determinant"),
    "gorenstein": (suite_gorenstein, "inner-corner criterion for the sparse dual ladder"),
    "hypersurface": (suite_hypersurface, "image of the cofactor map of the clone"),
}

CLONE_REPORT = ("cauchy", "gradient", "syzygies", "hessian", "codim", "dual", "multiplicity", "hypersurface")
SPARSE_REPORT = ("zeros", "cauchy", "gradient", "syzygies", "codim", "hessian", "polar-ladder", "dual",
                 "multiplicity", "gorenstein")


def run_suites(cfg: RunConfig, names) -> list:
    checks: list = []
    for name in names:
        fn: Callable = SUITES[name][0]
        for c in fn(cfg):
            c.name = f"{name}.{c.name}"
            checks.append(c)
    return checks
