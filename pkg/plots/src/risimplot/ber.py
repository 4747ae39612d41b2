"""BER-versus-SNR figure: one series per input CSV, log-scale error axis."""

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .csvio import read_ber


def plot_ber(inputs, series_labels, out_path, dpi=150):
    """Render the curves in ``inputs`` to ``out_path``.

    A CSV with a filled ``ber_bound`` column contributes a second, dashed
    series labeled "(bound)". Raises on missing/malformed/empty inputs
    before anything is written.
    """
    if not inputs:
        raise ValueError("need at least one BER CSV")
    if series_labels and len(series_labels) != len(inputs):
        raise ValueError("one label per input CSV required")
    series = [read_ber(p) for p in inputs]
    names = series_labels or [Path(p).stem for p in inputs]

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for data, name in zip(series, names):
        ax.semilogy(data.snr_db, data.ber_sim, marker="o", label=name)
        if data.ber_bound is not None:
            ax.semilogy(
                data.snr_db, data.ber_bound, linestyle="--", label=f"{name} (bound)"
            )
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("BER")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="risim-plot-ber", description="Render BER curves from simulator CSVs."
    )
    parser.add_argument("--input", nargs="+", required=True, help="BER CSV paths")
    parser.add_argument("--labels", nargs="*", default=None, help="series names")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        plot_ber(args.input, args.labels, args.out, dpi=args.dpi)
    except (OSError, ValueError) as exc:
        print(f"risim-plot-ber: error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
