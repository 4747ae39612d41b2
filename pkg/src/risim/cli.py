"""Command-line front end.

Three subcommands: ``design`` dumps a labeled constellation plus the full
candidate scatter, ``ber`` runs a Monte Carlo sweep (optionally with the
numerical bound), ``complexity`` reports operation counts. Outputs are
CSV files plus a JSON manifest that records everything needed to rerun.
"""

import argparse
import csv
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import ber_upper_bound, complexity_estimate
from .benchmarks import SCHEMES, design, designer_for
from .constellation import pattern_label
from .graycode import LabeledConstellation
from .linkops import run_ber_sweep, write_ber_csv
from .rng import substream
from .sysmodel import SystemConfig, apply_csi_error, generate_channel

SCATTER_HEADER = ["pattern_id", "phase_indices", "re", "im", "gain", "tx_phase_rad"]
LABELED_HEADER = SCATTER_HEADER + ["label"]


def _symbol_row(symbol, cfg, pattern_string=None):
    pat = pattern_string or pattern_label(
        symbol.pattern_id, cfg.phase_levels, cfg.n_elements
    )
    return [
        symbol.pattern_id,
        pat,
        repr(float(symbol.point.real)),
        repr(float(symbol.point.imag)),
        repr(float(symbol.gain)),
        repr(float(symbol.tx_phase)),
    ]


def write_scatter_csv(path, symbols, cfg):
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCATTER_HEADER)
        for s in symbols:
            writer.writerow(_symbol_row(s, cfg))


def write_constellation_csv(path, labeled: LabeledConstellation, cfg):
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh)
        writer.writerow(LABELED_HEADER)
        for i, s in enumerate(labeled.points):
            pat = labeled.pattern_strings[i] if labeled.pattern_strings else None
            writer.writerow(_symbol_row(s, cfg, pat) + [labeled.labels[i]])


def _parse_snr_grid(text: str) -> np.ndarray:
    """start:stop:step in dB, inclusive of stop when it falls on the grid."""
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected start:stop:step, got {text!r}"
        ) from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("need step > 0 and stop >= start")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _env_seed() -> int:
    return int(os.environ.get("RISIM_SEED", "0"))


def _add_common(parser):
    parser.add_argument("--n-elements", type=int, required=True, help="RIS elements N")
    parser.add_argument("--n-antennas", type=int, default=3, help="transmit antennas M")
    parser.add_argument("--phase-levels", type=int, default=2, help="phase levels B")
    parser.add_argument("--points", type=int, required=True, help="constellation size L")
    parser.add_argument("--seed", type=int, default=None, help="PRNG seed (env RISIM_SEED fallback)")
    parser.add_argument("--kmeans-iters", type=int, default=100, help="max clustering iterations")
    parser.add_argument("--restarts", type=int, default=1, help="clustering restarts")
    parser.add_argument("--scheme", choices=SCHEMES, default="proposed")
    parser.add_argument("--no-sym", action="store_true", help="drop the paired-phase constraint")
    parser.add_argument("--no-gray", action="store_true", help="natural binary labels")
    parser.add_argument("--csi", choices=("perfect", "imperfect"), default="perfect")
    parser.add_argument("--sigma-z-dbm", type=float, default=-50.0, help="estimation noise power")
    parser.add_argument("--pilot-dbm", type=float, default=-30.0, help="pilot power")
    parser.add_argument("--output", type=Path, default=Path("."), metavar="DIR")


def _resolve_scheme(args) -> str:
    scheme = args.scheme
    if args.no_sym:
        if scheme not in ("proposed", "proposed-no-sym"):
            raise ValueError("--no-sym only applies to the proposed scheme")
        scheme = "proposed-no-sym"
    if args.no_gray:
        if scheme not in ("proposed", "proposed-no-gray"):
            raise ValueError("--no-gray only applies to the proposed scheme")
        scheme = "proposed-no-gray"
    return scheme


def _config_from(args) -> SystemConfig:
    return SystemConfig(
        n_elements=args.n_elements,
        n_antennas=args.n_antennas,
        phase_levels=args.phase_levels,
        n_points=args.points,
        csi_noise_dbm=args.sigma_z_dbm,
        pilot_power_dbm=args.pilot_dbm,
        max_kmeans_iters=args.kmeans_iters,
        bound_randomizations=getattr(args, "bound_s", 1000),
        seed=args.seed if args.seed is not None else _env_seed(),
    )


def _manifest(args, cfg, scheme, command, outputs, extra=None):
    data = {
        "tool": "risim",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "scheme": scheme,
        "csi": args.csi,
        "restarts": args.restarts,
        "config": {
            "n_elements": cfg.n_elements,
            "n_antennas": cfg.n_antennas,
            "phase_levels": cfg.phase_levels,
            "n_points": cfg.n_points,
            "tx_power": cfg.tx_power,
            "noise_var": cfg.noise_var,
            "csi_noise_dbm": cfg.csi_noise_dbm,
            "pilot_power_dbm": cfg.pilot_power_dbm,
            "bound_randomizations": cfg.bound_randomizations,
            "max_kmeans_iters": cfg.max_kmeans_iters,
            "seed": cfg.seed,
        },
        "outputs": [str(p) for p in outputs],
    }
    if extra:
        data.update(extra)
    return data


def cmd_design(args) -> int:
    cfg = _config_from(args)
    scheme = _resolve_scheme(args)
    out = args.output
    out.mkdir(parents=True, exist_ok=True)
    ch = generate_channel(cfg, substream(cfg.seed, "channel", 0))
    if args.csi == "imperfect":
        ch = apply_csi_error(ch, cfg, substream(cfg.seed, "csi", 0))
    labeled, candidates = design(
        scheme, ch, cfg, substream(cfg.seed, "design", 0),
        restarts=args.restarts, with_candidates=True,
    )
    labeled_path = out / f"constellation_{scheme}.csv"
    scatter_path = out / f"scatter_{scheme}.csv"
    manifest_path = out / f"manifest_design_{scheme}.json"
    write_constellation_csv(labeled_path, labeled, cfg)
    write_scatter_csv(scatter_path, candidates, cfg)
    manifest = _manifest(
        args, cfg, scheme, "design", [labeled_path, scatter_path]
    )
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {labeled_path}, {scatter_path}, {manifest_path}")
    return 0


def cmd_ber(args) -> int:
    cfg = _config_from(args)
    scheme = _resolve_scheme(args)
    out = args.output
    out.mkdir(parents=True, exist_ok=True)
    designer = designer_for(scheme, restarts=args.restarts)
    curve = run_ber_sweep(
        cfg,
        designer,
        args.snr,
        args.trials,
        coherence_trials=args.coherence_trials,
        imperfect_csi=args.csi == "imperfect",
    )
    if args.bound:
        curve = curve.with_bound(
            ber_upper_bound(cfg, designer, args.snr, args.bound_s)
        )
    csv_path = out / f"ber_{scheme}.csv"
    manifest_path = out / f"manifest_ber_{scheme}.json"
    write_ber_csv(csv_path, curve)
    manifest = _manifest(
        args, cfg, scheme, "ber", [csv_path],
        extra={
            "snr_db": [float(v) for v in args.snr],
            "trials": args.trials,
            "coherence_trials": args.coherence_trials,
            "bound": bool(args.bound),
            "bound_s": args.bound_s,
        },
    )
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {csv_path}, {manifest_path}")
    return 0


def cmd_complexity(args) -> int:
    if args.points < 2:
        raise ValueError("--points must be >= 2 (at least one bit)")
    est = complexity_estimate(
        args.phase_levels, args.n_elements, args.kmeans_iters, args.points
    )
    report = {
        "phase_levels": args.phase_levels,
        "n_elements": args.n_elements,
        "kmeans_iters": args.kmeans_iters,
        "n_points": args.points,
        "stages": {
            "gain_and_sort": est.gain_and_sort,
            "clustering": est.clustering,
            "selection": est.selection,
            "gray_mapping": est.gray_mapping,
        },
        "proposed_exact": est.proposed_exact,
        "proposed_simplified": est.proposed_simplified,
        "scheme_a": est.scheme_a,
        "scheme_b": est.scheme_b,
        "scheme_c": est.scheme_c,
    }
    text = json.dumps(report, indent=2)
    print(text)
    if args.output != Path("."):
        args.output.mkdir(parents=True, exist_ok=True)
        (args.output / "complexity.json").write_text(text + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risim",
        description="Reflection-pattern index modulation: design, simulate, analyze.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_design = sub.add_parser("design", help="dump a designed constellation")
    _add_common(p_design)
    p_design.set_defaults(func=cmd_design)

    p_ber = sub.add_parser("ber", help="Monte Carlo BER sweep")
    _add_common(p_ber)
    p_ber.add_argument("--snr", type=_parse_snr_grid, required=True, metavar="START:STOP:STEP")
    p_ber.add_argument("--trials", type=int, required=True, help="trials per SNR point")
    p_ber.add_argument("--coherence-trials", type=int, default=1000,
                       help="trials per channel redraw")
    p_ber.add_argument("--bound", action="store_true", help="also compute the BER bound")
    p_ber.add_argument("--bound-s", type=int, default=1000,
                       help="channel randomizations for the bound")
    p_ber.set_defaults(func=cmd_ber)

    p_cx = sub.add_parser("complexity", help="operation-count report")
    p_cx.add_argument("--phase-levels", type=int, default=2)
    p_cx.add_argument("--n-elements", type=int, required=True)
    p_cx.add_argument("--points", type=int, required=True)
    p_cx.add_argument("--kmeans-iters", type=int, default=10)
    p_cx.add_argument("--output", type=Path, default=Path("."))
    p_cx.set_defaults(func=cmd_complexity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"risim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
