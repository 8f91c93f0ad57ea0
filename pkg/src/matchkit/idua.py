"""Iterated deletion of unattractive alternatives, down to the normal form.

A man m is unattractive to woman w when some man she prefers to m has w at
the top of his list: no stable matching can pair w below that man, so the
pair (m, w) can be removed outright.  The mirror statement prunes women from
men's lists.  Deleting such pairs exposes new top choices, which can justify
further deletions; iterating to a fixed point leaves the *normal form*, a
reduced market with exactly the same stable matchings.  Reading the top of
every man's surviving list gives the man-optimal stable matching, and the
women's tops give the woman-optimal one.

One step here is a simultaneous sweep: all deletions justified by the
current tops are collected, then applied as a batch.  The fixed point does
not depend on sweep order; the reported iteration count is defined under
this batch convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Instance, Matching
from .errors import EmptiedList


@dataclass(frozen=True)
class CandidateSets:
    """Surviving candidate lists, each ordered as in the original instance.

    Symmetric by construction: w is on m's list iff m is on w's list.
    """

    men_sets: tuple[tuple[int, ...], ...]
    women_sets: tuple[tuple[int, ...], ...]

    @classmethod
    def full(cls, instance: Instance) -> "CandidateSets":
        return cls(
            tuple(tuple(row) for row in instance.men_lists),
            tuple(tuple(row) for row in instance.women_lists),
        )

    def is_symmetric(self) -> bool:
        men_memb = [set(s) for s in self.men_sets]
        women_memb = [set(s) for s in self.women_sets]
        return all(
            (w in men_memb[m]) == (m in women_memb[w])
            for m in range(len(self.men_sets))
            for w in range(len(self.women_sets))
        )


@dataclass(frozen=True)
class NormalForm:
    sets: CandidateSets
    iterations: int
    mu_M: Matching
    mu_W: Matching


def delete_unattractive_step(instance: Instance, sets: CandidateSets) -> CandidateSets:
    """One batch deletion sweep; idempotent once the fixed point is reached.

    For each woman whose list still contains a man whose current top choice
    is her, every man she ranks below the best such man is dropped, and she
    is dropped from the symmetric lists; mirror rule for men.  Lists keep
    their relative order.
    """
    men_sets = sets.men_sets
    women_sets = sets.women_sets
    men_tops = [s[0] if s else -1 for s in men_sets]
    women_tops = [s[0] if s else -1 for s in women_sets]

    drop: set[tuple[int, int]] = set()
    for w, lst in enumerate(women_sets):
        # lst is in w's preference order, so the first man whose top is w is
        # the best-ranked one; everyone after him goes.
        cut = None
        for pos, m in enumerate(lst):
            if men_tops[m] == w:
                cut = pos
                break
        if cut is not None:
            for m in lst[cut + 1 :]:
                drop.add((m, w))
    for m, lst in enumerate(men_sets):
        cut = None
        for pos, w in enumerate(lst):
            if women_tops[w] == m:
                cut = pos
                break
        if cut is not None:
            for w in lst[cut + 1 :]:
                drop.add((m, w))

    if not drop:
        return sets

    new_men = tuple(
        tuple(w for w in lst if (m, w) not in drop) for m, lst in enumerate(men_sets)
    )
    new_women = tuple(
        tuple(m for m in lst if (m, w) not in drop) for w, lst in enumerate(women_sets)
    )
    for side, rows in (("man", new_men), ("woman", new_women)):
        for p, lst in enumerate(rows):
            if not lst:
                raise EmptiedList(f"{side} {p} lost every candidate; input was invalid")
    return CandidateSets(new_men, new_women)


def normal_form(instance: Instance) -> NormalForm:
    """Iterate deletion sweeps to the fixed point and read off both extremes.

    ``iterations`` is the number of sweeps that changed something, i.e. the
    smallest k for which sweep k+1 is a no-op.
    """
    sets = CandidateSets.full(instance)
    iterations = 0
    limit = instance.n * instance.n + 1
    while True:
        nxt = delete_unattractive_step(instance, sets)
        if nxt is sets or nxt == sets:
            break
        sets = nxt
        iterations += 1
        assert iterations < limit, "deletion failed to reach a fixed point"

    men_tops = [s[0] for s in sets.men_sets]
    assert sorted(men_tops) == list(range(instance.n)), (
        "men's surviving tops must be distinct at the fixed point"
    )
    women_tops = [s[0] for s in sets.women_sets]
    assert sorted(women_tops) == list(range(instance.n)), (
        "women's surviving tops must be distinct at the fixed point"
    )
    mu_w_pairs = [0] * instance.n
    for w, m in enumerate(women_tops):
        mu_w_pairs[m] = w
    return NormalForm(
        sets=sets,
        iterations=iterations,
        mu_M=Matching(tuple(men_tops)),
        mu_W=Matching(tuple(mu_w_pairs)),
    )
