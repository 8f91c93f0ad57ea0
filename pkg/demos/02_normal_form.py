"""Reduce a market to its normal form and read off both extremal matchings.

Iterated deletion prunes every partner that cannot appear in any stable
matching.  The tops of the surviving lists are the man-optimal and
woman-optimal stable matchings; when the market has a unique stable
matching the lists collapse to singletons.
"""

from matchkit import (
    GeneratorParams,
    delete_unattractive_step,
    enumerate_stable,
    generate,
    normal_form,
)
from matchkit.idua import CandidateSets


def render(sets: CandidateSets) -> None:
    for m, lst in enumerate(sets.men_sets):
        print(f"  m{m + 1}: " + " ".join(f"w{w + 1}" for w in lst))
    for w, lst in enumerate(sets.women_sets):
        print(f"  w{w + 1}: " + " ".join(f"m{m + 1}" for m in lst))


def main():
    instance = generate(GeneratorParams(n=6, c=0.5, seed=2024))
    sets = CandidateSets.full(instance)
    step = 0
    print("sweeping away unattractive alternatives:")
    while True:
        nxt = delete_unattractive_step(instance, sets)
        if nxt == sets:
            break
        step += 1
        survivors = sum(len(s) for s in nxt.men_sets)
        print(f"  sweep {step}: {survivors} surviving pairs")
        sets = nxt

    nf = normal_form(instance)
    print("\nnormal form:")
    render(nf.sets)
    print("\nman-optimal:  " + " ".join(f"m{i+1}-w{w+1}" for i, w in enumerate(nf.mu_M.pairs)))
    print("woman-optimal: " + " ".join(f"m{i+1}-w{w+1}" for i, w in enumerate(nf.mu_W.pairs)))
    print(f"\nthis market has {len(enumerate_stable(instance))} stable matching(s)")


if __name__ == "__main__":
    main()
