"""Domain types for one-to-one two-sided matching markets.

An instance couples two n-by-n preference matrices: row i of ``men_prefs``
lists woman indices in strictly decreasing preference order, row j of
``women_prefs`` does the same with man indices.  Everything here is 0-based;
file formats and console output translate to 1-based IDs at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Sequence

import hashlib

import numpy as np

from .errors import (
    IndexOutOfRange,
    InvalidMatching,
    NTooSmall,
    RowNotPermutation,
    SizeMismatch,
)

Side = Literal["men", "women"]

MEN: Side = "men"
WOMEN: Side = "women"


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RankMatrix:
    """Inverse preference permutations for one side of the market.

    ``ranks[p][q]`` is the position (0 = most preferred) of candidate q in
    participant p's list, so preference comparisons are O(1).
    """

    ranks: np.ndarray

    @classmethod
    def from_prefs(cls, prefs: np.ndarray) -> "RankMatrix":
        n = prefs.shape[0]
        ranks = np.empty_like(prefs)
        ranks[np.arange(n)[:, None], prefs] = np.arange(prefs.shape[1])[None, :]
        return cls(_frozen(ranks))


@dataclass(frozen=True)
class Instance:
    """A validated market: two immutable preference matrices of equal size."""

    men_prefs: np.ndarray
    women_prefs: np.ndarray

    @property
    def n(self) -> int:
        return self.men_prefs.shape[0]

    @cached_property
    def men_ranks(self) -> RankMatrix:
        return RankMatrix.from_prefs(self.men_prefs)

    @cached_property
    def women_ranks(self) -> RankMatrix:
        return RankMatrix.from_prefs(self.women_prefs)

    # Plain-list views; the engine loops are much faster on lists than on
    # element-indexed numpy arrays.
    @cached_property
    def men_lists(self) -> list[list[int]]:
        return self.men_prefs.tolist()

    @cached_property
    def women_lists(self) -> list[list[int]]:
        return self.women_prefs.tolist()

    @cached_property
    def men_rank_rows(self) -> list[list[int]]:
        return self.men_ranks.ranks.tolist()

    @cached_property
    def women_rank_rows(self) -> list[list[int]]:
        return self.women_ranks.ranks.tolist()

    @cached_property
    def digest(self) -> str:
        """Content hash used to pair traces with the market they ran on."""
        h = hashlib.sha256()
        h.update(b"matchkit-instance-v1")
        h.update(self.n.to_bytes(4, "little"))
        h.update(np.ascontiguousarray(self.men_prefs, dtype="<u4").tobytes())
        h.update(np.ascontiguousarray(self.women_prefs, dtype="<u4").tobytes())
        return h.hexdigest()


def _first_bad_row(mat: np.ndarray, n: int) -> int | None:
    ok = (mat >= 0).all(axis=1) & (mat < n).all(axis=1)
    safe = np.where(ok[:, None], mat, 0)
    seen = np.zeros(mat.shape, dtype=bool)
    seen[np.arange(mat.shape[0])[:, None], safe] = True
    ok &= seen.all(axis=1)
    bad = np.nonzero(~ok)[0]
    return int(bad[0]) if bad.size else None


def validate_instance(men_prefs, women_prefs) -> Instance:
    """Validate raw preference data and build an :class:`Instance`.

    Both arguments must be n-by-n with every row a permutation of 0..n-1
    (complete strict preferences) and n >= 2.

    Raises:
        SizeMismatch: matrices are not square or differ in shape.
        NTooSmall: fewer than two participants per side.
        RowNotPermutation: a row repeats or omits a candidate; the error
            names the side and the first offending row.
    """
    men = np.asarray(men_prefs, dtype=np.int64)
    women = np.asarray(women_prefs, dtype=np.int64)
    if men.ndim != 2 or men.shape[0] != men.shape[1]:
        raise SizeMismatch(f"men matrix has shape {men.shape}")
    if women.shape != men.shape:
        raise SizeMismatch(
            f"women matrix has shape {women.shape}, men {men.shape}"
        )
    n = men.shape[0]
    if n < 2:
        raise NTooSmall(n)
    for side, mat in ((MEN, men), (WOMEN, women)):
        row = _first_bad_row(mat, n)
        if row is not None:
            raise RowNotPermutation(side, row)
    return Instance(_frozen(men.copy()), _frozen(women.copy()))


@dataclass(frozen=True)
class Matching:
    """A bijection between men and women; ``pairs[m]`` is m's partner."""

    pairs: tuple[int, ...]

    @classmethod
    def from_pairs(cls, pairs: Sequence[int]) -> "Matching":
        pairs = tuple(int(p) for p in pairs)
        n = len(pairs)
        if sorted(pairs) != list(range(n)):
            raise InvalidMatching(f"pairs {pairs} are not a permutation of 0..{n - 1}")
        return cls(pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def woman_of(self, man: int) -> int:
        return self.pairs[man]

    @cached_property
    def husbands(self) -> tuple[int, ...]:
        inv = [0] * len(self.pairs)
        for m, w in enumerate(self.pairs):
            inv[w] = m
        return tuple(inv)

    def man_of(self, woman: int) -> int:
        return self.husbands[woman]


@dataclass(frozen=True)
class BlockingPair:
    man: int
    woman: int


def _check_matching(instance: Instance, matching: Matching) -> np.ndarray:
    wife = np.asarray(matching.pairs, dtype=np.int64)
    n = instance.n
    if wife.shape != (n,):
        raise InvalidMatching(f"matching has {wife.shape} pairs, instance needs {n}")
    if wife.min() < 0 or wife.max() >= n or np.bincount(wife, minlength=n).max() != 1:
        raise InvalidMatching(f"pairs {matching.pairs} are not a bijection for n={n}")
    return wife


def _blocking_mask(instance: Instance, matching: Matching) -> np.ndarray:
    wife = _check_matching(instance, matching)
    n = instance.n
    husband = np.empty(n, dtype=np.int64)
    husband[wife] = np.arange(n)
    mr = instance.men_ranks.ranks
    wr = instance.women_ranks.ranks
    men_better = mr < mr[np.arange(n), wife][:, None]
    women_better = wr < wr[np.arange(n), husband][:, None]
    return men_better & women_better.T


def find_blocking_pairs(instance: Instance, matching: Matching) -> list[BlockingPair]:
    """All pairs (m, w) who strictly prefer each other to their partners.

    Returned in row-major (man, then woman) index order; an empty list means
    the matching is stable.
    """
    mask = _blocking_mask(instance, matching)
    return [BlockingPair(int(m), int(w)) for m, w in np.argwhere(mask)]


def is_stable(instance: Instance, matching: Matching) -> bool:
    """True iff the matching admits no blocking pair."""
    return not _blocking_mask(instance, matching).any()


def prefers(instance: Instance, side: Side, who: int, a: int, b: int) -> bool:
    """True iff participant ``who`` on ``side`` strictly prefers a over b.

    Preferences are strict, so a and b must differ.
    """
    if a == b:
        raise ValueError("strict comparison requires two distinct candidates")
    n = instance.n
    if not 0 <= who < n:
        raise IndexOutOfRange("participant", who, n)
    for cand in (a, b):
        if not 0 <= cand < n:
            raise IndexOutOfRange("candidate", cand, n)
    if side == MEN:
        ranks = instance.men_ranks.ranks
    elif side == WOMEN:
        ranks = instance.women_ranks.ranks
    else:
        raise ValueError(f"side must be 'men' or 'women', got {side!r}")
    return bool(ranks[who, a] < ranks[who, b])
