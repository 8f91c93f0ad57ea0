"""Walk both engines through the classic 5x5 market, round by round.

Accelerated deferred acceptance finishes this market in 2 rounds and 7
proposals where the plain algorithm needs 4 rounds and 10 proposals, one of
them an idle round in which every proposal bounces.
"""

from matchkit import run_ada, run_da, validate_instance

MEN = [
    [0, 1, 2, 3, 4],
    [0, 3, 4, 1, 2],
    [0, 3, 2, 4, 1],
    [3, 1, 2, 0, 4],
    [4, 3, 0, 1, 2],
]
WOMEN = [
    [4, 3, 0, 1, 2],
    [0, 2, 1, 3, 4],
    [4, 3, 2, 1, 0],
    [3, 1, 0, 2, 4],
    [4, 0, 2, 3, 1],
]


def show(trace):
    print(f"=== {trace.algorithm} ===")
    for ev in trace.rounds:
        print(f"round {ev.round}{' (idle)' if ev.idle else ''}")
        for m, w in ev.proposals:
            print(f"  m{m + 1} proposes to w{w + 1}")
        for m, w in ev.acceptances:
            print(f"  w{w + 1} tentatively accepts m{m + 1}")
        for m, w, kind in ev.rejections:
            print(f"  w{w + 1} rejects m{m + 1} [{kind.value}]")
    m = trace.metrics
    pairs = " ".join(f"m{i + 1}-w{w + 1}" for i, w in enumerate(trace.final_matching.pairs))
    print(f"done in {m.total_rounds} rounds, {m.total_proposals} proposals, "
          f"{m.direct_rejections} direct + {m.preemptive_rejections} pre-emptive rejections")
    print(f"matching: {pairs}\n")


def main():
    instance = validate_instance(MEN, WOMEN)
    show(run_da(instance))
    show(run_ada(instance))


if __name__ == "__main__":
    main()
