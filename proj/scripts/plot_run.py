#!/usr/bin/env python3
"""Plot a run file (year,observed,predicted,residual) written by the CLI."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("run", help="run CSV from predict/invert/fit-n0/...")
    parser.add_argument("-o", "--output", default="run.png")
    parser.add_argument("--band", type=float, default=0.0,
                        help="shade +-band (fraction) around observed, e.g. 0.05")
    args = parser.parse_args()

    df = pd.read_csv(args.run, comment="#")
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(df["year"], df["observed"], "o-", ms=3, label="observed")
    ax.plot(df["year"], df["predicted"], "s-", ms=3, label="predicted")
    if args.band > 0:
        ax.fill_between(df["year"], df["observed"] * (1 - args.band),
                        df["observed"] * (1 + args.band), alpha=0.15, label=f"+-{args.band:.0%}")
    ax.set_xlabel("year")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.output, dpi=120)


if __name__ == "__main__":
    main()
