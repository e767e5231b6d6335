"""Invariants of the main-diagonal clone for a range of sizes.

    python3 scripts/clone_table.py --m-max 5
"""
import argparse
import time
from dataclasses import dataclass
from math import comb

from symdegen.calculus import diagonal_specialization_check
from symdegen.certificates import clone_codim_certificate
from symdegen.duality import dual_dimension, expected_multiplicity
from symdegen.sampling import DEFAULT_SEED, DEFAULT_TRIALS
from symdegen.symmatrix import build, determinant, md_clone
from symdegen.syzygy import cloning_syzygies, syzygy_rank


@dataclass
class Config:
    m_min: int = 3
    m_max: int = 5
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED


def row(m: int, cfg: Config) -> dict:
    t0 = time.perf_counter()
    M = build(md_clone(m))
    f = determinant(M)
    S = cloning_syzygies(m)
    cert = clone_codim_certificate(m)
    return {
        "m": m,
        "vars": len(M.variables),
        "terms(f)": len(f.terms),
        "syz": len(S),
        "lin_rank": syzygy_rank(S, cfg.trials, cfg.seed),
        "want": comb(m + 1, 2) - 2,
        "hess!=0": diagonal_specialization_check(M),
        "codim>=": cert.bound,
        "dim dual": dual_dimension(f, cfg.trials, cfg.seed),
        "mult(exp)": expected_multiplicity(m),
        "s": round(time.perf_counter() - t0, 2),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m-min", type=int, default=Config.m_min)
    p.add_argument("--m-max", type=int, default=Config.m_max)
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(p.parse_args()))
    rows = [row(m, cfg) for m in range(cfg.m_min, cfg.m_max + 1)]
    keys = list(rows[0])
    widths = [max(len(k), *(len(str(r[k])) for r in rows)) for k in keys]
    print("  ".join(k.rjust(w) for k, w in zip(keys, widths)))
    for r in rows:
        print("  ".join(str(r[k]).rjust(w) for k, w in zip(keys, widths)))


if __name__ == "__main__":
    main()
