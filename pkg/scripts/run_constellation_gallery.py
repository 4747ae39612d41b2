#!/usr/bin/env python3
"""Dump the designed constellations of all schemes for one channel draw.

Produces the labeled selection and full candidate scatter per scheme at
N=7, M=3, L=8 (128 candidate patterns), the setup of the constellation
gallery figures.
"""

import argparse
from pathlib import Path

from risim.cli import main as risim


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results/gallery"))
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    for scheme in ("scheme-c", "scheme-a", "proposed-no-sym", "proposed"):
        risim([
            "design", "--scheme", scheme,
            "--n-elements", "7", "--n-antennas", "3", "--phase-levels", "2",
            "--points", "8", "--seed", str(args.seed),
            "--output", str(args.out),
        ])
    print(f"gallery CSVs under {args.out}/")


if __name__ == "__main__":
    run()
