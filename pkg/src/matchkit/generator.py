"""Seeded random-instance generator with a same-side similarity bias.

Each side's preference matrix is drawn as follows: fix one random
permutation p of (0..n-1) for the whole side; for each row draw a vector v of
n independent uniforms in [0, n-1]; blend u = (1-c)*v + c*p; the row's
preference list is the argsort of u ascending (index of the smallest u value
first).  At c=0 every row is an independent uniform permutation; at c=1
every row equals argsort(p), a universal ranking where low p marks the
desirable candidates.  The women's matrix repeats the recipe with fresh
draws.

Determinism: all randomness flows through the in-repo splitmix64 streams
(:mod:`matchkit.rng`), so identical (n, c, seed) give bit-identical
instances on every platform.  The men's side uses streams (seed, 0, *), the
women's (seed, 1, *); stream index 0 is the side's permutation and index
i+1 is row i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Instance, validate_instance
from .errors import InvalidParams
from .rng import SplitMix64, splitmix_block_float53, stream_seed

MEN_SIDE = 0
WOMEN_SIDE = 1


@dataclass(frozen=True)
class GeneratorParams:
    """Market size, similarity coefficient in [0, 1], and a 64-bit seed."""

    n: int
    c: float
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParams(f"n must be >= 2, got {self.n}")
        if not 0.0 <= self.c <= 1.0:
            raise InvalidParams(f"c must lie in [0, 1], got {self.c}")
        if not 0 <= self.seed < 2**64:
            raise InvalidParams(f"seed must be an unsigned 64-bit int, got {self.seed}")


def side_matrix(n: int, c: float, seed: int, side: int) -> np.ndarray:
    """Preference matrix for one side; regenerable independently of the other."""
    perm = list(range(n))
    SplitMix64(stream_seed(seed, side, 0)).shuffle(perm)
    p = np.asarray(perm, dtype=np.float64)

    row_seeds = [stream_seed(seed, side, i + 1) for i in range(n)]
    v = splitmix_block_float53(row_seeds, n) * (n - 1)
    u = (1.0 - c) * v + c * p
    # Stable sort: hypothetical ties break toward the smaller index.  For
    # c < 1 ties have probability zero; at c = 1 the entries of p are
    # distinct integers.
    return np.argsort(u, axis=1, kind="stable")


def generate(params: GeneratorParams) -> Instance:
    """Draw one instance; deterministic in (n, c, seed)."""
    men = side_matrix(params.n, params.c, params.seed, MEN_SIDE)
    women = side_matrix(params.n, params.c, params.seed, WOMEN_SIDE)
    return validate_instance(men, women)
