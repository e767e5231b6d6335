"""Deterministic random integer points for rank sampling.

All draws come from numpy's counter-based Philox generator, keyed by the run
seed and a stream label so that each check replays independently.
"""
from __future__ import annotations

import zlib

import numpy as np

DEFAULT_SEED = 20190601
DEFAULT_TRIALS = 8
BOUND = 999
MAX_RESAMPLES = 32


def make_rng(seed: int, stream: str = "") -> np.random.Generator:
    key = np.random.SeedSequence([int(seed), zlib.crc32(stream.encode())])
    return np.random.Generator(np.random.Philox(key))


def random_ints(rng: np.random.Generator, n: int, bound: int = BOUND) -> list:
    return [int(x) for x in rng.integers(-bound, bound + 1, size=n)]


def random_point(rng: np.random.Generator, variables) -> dict:
    return dict(zip(variables, random_ints(rng, len(variables))))
