"""plots <results_dir> <out_dir> [--format png|svg]"""

from __future__ import annotations

import argparse
import sys

from .figures import PlotDataError, plot_all


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Regenerate the standard benchmark figures from sweep CSVs",
    )
    parser.add_argument("results_dir")
    parser.add_argument("out_dir")
    parser.add_argument("--format", choices=("png", "svg"), default="png")
    args = parser.parse_args(argv)
    try:
        results = plot_all(args.results_dir, args.out_dir, fmt=args.format)
    except PlotDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for res in results:
        print(res.path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
