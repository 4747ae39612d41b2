"""Parsers for the simulator's documented CSV layouts.

Only reads what the files contain; no simulation quantity is ever
recomputed here except the pairwise-distance annotation of a selection.
"""

import csv
from dataclasses import dataclass
from typing import List, Optional

BER_HEADER = ["snr_db", "ber_sim", "ber_bound", "trials", "bit_errors"]
SCATTER_HEADER = ["pattern_id", "phase_indices", "re", "im", "gain", "tx_phase_rad"]
LABELED_HEADER = SCATTER_HEADER + ["label"]


@dataclass
class BerSeries:
    snr_db: List[float]
    ber_sim: List[float]
    ber_bound: Optional[List[float]]


@dataclass
class PointSet:
    re: List[float]
    im: List[float]
    labels: Optional[List[str]]


def _rows(path, expected_header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if header != expected_header:
            raise ValueError(
                f"{path}: unexpected header {header}, expected {expected_header}"
            )
        rows = [row for row in reader if row]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows


def read_ber(path) -> BerSeries:
    rows = _rows(path, BER_HEADER)
    bounds = [r[2] for r in rows]
    return BerSeries(
        snr_db=[float(r[0]) for r in rows],
        ber_sim=[float(r[1]) for r in rows],
        ber_bound=[float(b) for b in bounds] if all(b != "" for b in bounds) else None,
    )


def read_points(path) -> PointSet:
    with open(path, newline="") as fh:
        header = next(csv.reader(fh), None)
    if header == LABELED_HEADER:
        rows = _rows(path, LABELED_HEADER)
        labels = [r[6] for r in rows]
    elif header == SCATTER_HEADER:
        rows = _rows(path, SCATTER_HEADER)
        labels = None
    else:
        raise ValueError(f"{path}: not a constellation CSV (header {header})")
    return PointSet(
        re=[float(r[2]) for r in rows],
        im=[float(r[3]) for r in rows],
        labels=labels,
    )


def total_pairwise_distance(points: PointSet) -> float:
    """Sum of Euclidean distances over unordered point pairs."""
    total = 0.0
    n = len(points.re)
    for i in range(n):
        for j in range(i + 1, n):
            dx = points.re[i] - points.re[j]
            dy = points.im[i] - points.im[j]
            total += (dx * dx + dy * dy) ** 0.5
    return total
