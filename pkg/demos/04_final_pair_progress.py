"""Final-pair progress: when do couples that will last actually meet?

For one large biased market, print the step function giving the fraction of
the terminal matching already tentatively formed after each round, and show
how far the plain engine had come when the accelerated one finished.
"""

from matchkit import (
    GeneratorParams,
    concavity_score,
    crossing_report,
    final_pair_curve,
    generate,
    run_ada,
    run_da,
)


def sparkline(curve, width=48):
    blocks = " .:-=+*#%@"
    idx = [min(int(p * (len(blocks) - 1)), len(blocks) - 1) for p in curve.proportion]
    step = max(1, len(idx) // width)
    return "".join(blocks[i] for i in idx[::step])


def main():
    instance = generate(GeneratorParams(n=512, c=0.9, seed=99))
    da = run_da(instance, collect_events=False)
    ada = run_ada(instance, collect_events=False)
    for trace in (da, ada):
        curve = final_pair_curve(trace)
        print(f"{trace.algorithm:>4}: {sparkline(curve)}  "
              f"({trace.metrics.total_rounds} rounds, "
              f"concavity {concavity_score(curve):.2f})")
    report = crossing_report(da, ada)
    print(
        f"\nwhen ada finished (round {report.ada_final_round}), da had formed "
        f"{report.da_progress_at_that_round:.0%} of its final pairs and still "
        f"had {report.da_final_round - report.ada_final_round} rounds to go"
    )


if __name__ == "__main__":
    main()
