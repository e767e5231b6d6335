"""Invariants of sparse degenerations S(r) for all 1 <= r <= m-2.

    python3 scripts/sparse_table.py --m-max 5
"""
import argparse
import time
from dataclasses import dataclass

from symdegen.calculus import expected_polar_rank, hessian, hessian_generic_rank
from symdegen.certificates import sparse_codim_certificate
from symdegen.duality import dual_dimension, gorenstein_check
from symdegen.sampling import DEFAULT_SEED, DEFAULT_TRIALS
from symdegen.symmatrix import build, determinant, sparse, zero_count
from symdegen.syzygy import sparse_syzygies, syzygy_rank


@dataclass
class Config:
    m_min: int = 3
    m_max: int = 5
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED


def row(m: int, r: int, cfg: Config) -> dict:
    t0 = time.perf_counter()
    M = build(sparse(m, r))
    f = determinant(M)
    polar = hessian_generic_rank(hessian(f, M.variables), cfg.trials, cfg.seed).value
    cert = sparse_codim_certificate(m, r)
    return {
        "m": m,
        "r": r,
        "zeros": zero_count(r),
        "polar": polar,
        "want": expected_polar_rank(m, r),
        "lin_rank": syzygy_rank(sparse_syzygies(m, r), cfg.trials, cfg.seed),
        "codim": cert.codim if cert.codim is not None else f">={cert.lower_bound}",
        "dim dual": dual_dimension(f, cfg.trials, cfg.seed),
        "gorenstein": gorenstein_check(m, r),
        "s": round(time.perf_counter() - t0, 2),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m-min", type=int, default=Config.m_min)
    p.add_argument("--m-max", type=int, default=Config.m_max)
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(p.parse_args()))
    rows = [row(m, r, cfg) for m in range(cfg.m_min, cfg.m_max + 1) for r in range(1, m - 1)]
    keys = list(rows[0])
    widths = [max(len(k), *(len(str(x[k])) for x in rows)) for k in keys]
    print("  ".join(k.rjust(w) for k, w in zip(keys, widths)))
    for x in rows:
        print("  ".join(str(x[k]).rjust(w) for k, w in zip(keys, widths)))


if __name__ == "__main__":
    main()
