#!/usr/bin/env python3
"""Run the BER comparison experiments and write one CSV per scheme.

Reduced-trial reproduction of the headline sweeps: all schemes at N=4/L=4
and N=7/L=8 (bound attached to the proposed curve), plus a perfect-vs-
imperfect-CSI pair showing the error floor. Pass --trials 1000000 for
publication-scale statistics.
"""

import argparse
from pathlib import Path

from risim.cli import main as risim

SCHEMES = (
    "proposed",
    "proposed-no-sym",
    "proposed-no-gray",
    "scheme-a",
    "scheme-b",
    "scheme-c",
)


def run(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("--trials", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    setups = {
        "n4_l4": ["--n-elements", "4", "--points", "4"],
        "n7_l8": ["--n-elements", "7", "--points", "8"],
    }
    common = [
        "--n-antennas", "3", "--phase-levels", "2",
        "--trials", str(args.trials), "--seed", str(args.seed),
        "--snr=-10:30:2",
    ]
    for name, dims in setups.items():
        for scheme in SCHEMES:
            extra = ["--bound", "--bound-s", "1000"] if scheme == "proposed" else []
            risim(["ber", "--scheme", scheme, *dims, *common, *extra,
                   "--output", str(args.out / name)])

    # error-floor pair (estimation noise -50 dBm, pilot -30 dBm)
    floor = [
        "--n-elements", "7", "--points", "8", "--n-antennas", "1",
        "--trials", str(args.trials), "--seed", str(args.seed),
        "--snr", "0:40:5",
    ]
    risim(["ber", "--scheme", "proposed", *floor,
           "--output", str(args.out / "floor_perfect")])
    risim(["ber", "--scheme", "proposed", *floor, "--csi", "imperfect",
           "--output", str(args.out / "floor_imperfect")])
    print(f"results under {args.out}/")


if __name__ == "__main__":
    run()
