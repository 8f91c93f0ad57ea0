"""A small benchmark sweep: how much work does acceleration save?

Runs both engines on the same generated instances across market sizes and
bias levels, then prints the mean rounds and proposals per cell.  At c=1
(a universal ranking) the two algorithms coincide exactly; everywhere else
the accelerated run stays ahead.
"""

from matchkit import SweepSpec, aggregate, run_sweep

SPEC = SweepSpec(
    n_values=(16, 64, 256),
    c_values=(0.0, 0.5, 0.9, 1.0),
    reps=30,
    base_seed=7,
)


def main():
    records = run_sweep(SPEC)
    summary = aggregate(records)
    print(f"{'n':>5} {'c':>5} {'algo':>5} {'rounds':>10} {'proposals':>12}")
    for (n, c, algo), stats in summary.items():
        print(
            f"{n:>5} {c:>5} {algo:>5} "
            f"{stats['rounds'].mean:>10.1f} {stats['proposals'].mean:>12.1f}"
        )
    print("\nper-cell savings (DA mean / ADA mean):")
    for n in SPEC.n_values:
        for c in SPEC.c_values:
            da = summary[(n, c, "da")]
            ada = summary[(n, c, "ada")]
            print(
                f"  n={n:<4} c={c:<4} rounds x{da['rounds'].mean / ada['rounds'].mean:5.1f}  "
                f"proposals x{da['proposals'].mean / ada['proposals'].mean:5.1f}"
            )


if __name__ == "__main__":
    main()
