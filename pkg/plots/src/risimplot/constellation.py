"""Constellation scatter: candidate cloud with the labeled selection on top.

The figure caption reports the selection's total pairwise distance; that
number is the only quantity computed here rather than read from the CSV.
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .csvio import read_points, total_pairwise_distance


def plot_constellation(scatter_csv, labeled_csv, out_path, dpi=150):
    """Render candidates and/or selection; returns the annotated distance
    total (None when no labeled selection was given)."""
    if scatter_csv is None and labeled_csv is None:
        raise ValueError("need a scatter CSV, a labeled CSV, or both")
    scatter = read_points(scatter_csv) if scatter_csv else None
    labeled = read_points(labeled_csv) if labeled_csv else None

    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    if scatter is not None:
        ax.scatter(scatter.re, scatter.im, s=12, c="0.7", label="candidates")
    total = None
    if labeled is not None:
        ax.scatter(labeled.re, labeled.im, s=48, c="tab:red", zorder=3, label="selected")
        if labeled.labels:
            for x, y, lab in zip(labeled.re, labeled.im, labeled.labels):
                ax.annotate(lab, (x, y), textcoords="offset points", xytext=(6, 6))
        total = total_pairwise_distance(labeled)
        fig.text(0.5, 0.01, f"total pairwise distance of selection: {total:.6g}",
                 ha="center")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right")
    fig.tight_layout(rect=(0, 0.04, 1, 1))
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return total


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="risim-plot-constellation",
        description="Render a constellation scatter from simulator CSVs.",
    )
    parser.add_argument("--input", default=None, help="candidate scatter CSV")
    parser.add_argument("--labels", default=None, help="labeled selection CSV")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        total = plot_constellation(args.input, args.labels, args.out, dpi=args.dpi)
    except (OSError, ValueError) as exc:
        print(f"risim-plot-constellation: error: {exc}", file=sys.stderr)
        return 1
    if total is not None:
        print(f"total_pairwise_distance={total!r}")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
