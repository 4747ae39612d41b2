"""Transmission, maximum-likelihood detection and Monte Carlo BER sweeps.

A sweep point at ``snr_db`` uses transmit power ``rho = noise_var *
10^(snr_db/10)`` so that SNR is always ``rho / noise_var``. Channels are
redrawn (and the constellation redesigned) every ``coherence_trials``
trials to emulate block fading; the same channel blocks are replayed at
every SNR point, which lets one design serve the whole grid, while noise
and payload bits are drawn independently per (SNR, block).
"""

import csv
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .graycode import LabeledConstellation
from .rng import substream
from .sysmodel import ChannelRealization, SystemConfig, apply_csi_error, generate_channel

Designer = Callable[[ChannelRealization, SystemConfig, np.random.Generator], LabeledConstellation]

BER_CSV_HEADER = ["snr_db", "ber_sim", "ber_bound", "trials", "bit_errors"]


@dataclass(frozen=True)
class TxSymbol:
    """A detected (or transmitted) constellation index and its bit label."""

    index: int
    bits: str


@dataclass(frozen=True)
class BerCurve:
    """Simulated BER per SNR point, with optional bound values."""

    snr_db: np.ndarray
    ber_sim: np.ndarray
    trials: np.ndarray
    bit_errors: np.ndarray
    ber_bound: Optional[np.ndarray] = field(default=None)

    def with_bound(self, bound: np.ndarray) -> "BerCurve":
        return BerCurve(
            snr_db=self.snr_db,
            ber_sim=self.ber_sim,
            trials=self.trials,
            bit_errors=self.bit_errors,
            ber_bound=np.asarray(bound, dtype=float),
        )


def transmit(
    point: complex, rho: float, sigma2: float, rng: np.random.Generator
) -> complex:
    """Received sample ``sqrt(rho)*point + noise`` with complex-Gaussian
    noise of total variance ``sigma2``."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    if sigma2 < 0:
        raise ValueError("sigma2 must be non-negative")
    noise = 0.0
    if sigma2 > 0:
        noise = np.sqrt(sigma2 / 2) * complex(rng.standard_normal(), rng.standard_normal())
    return complex(np.sqrt(rho) * point + noise)


def detect_ml(
    y: complex, constellation: LabeledConstellation, rho: float
) -> TxSymbol:
    """Index minimizing ``|y - sqrt(rho)*point|^2``; ties go to the lowest index."""
    metrics = np.abs(y - np.sqrt(rho) * constellation.point_array()) ** 2
    idx = int(np.argmin(metrics))
    return TxSymbol(index=idx, bits=constellation.labels[idx])


def _detect_batch(y: np.ndarray, points: np.ndarray, rho: float) -> np.ndarray:
    """Vectorized ML detection: index of the closest scaled point per sample."""
    return np.argmin(np.abs(y[:, None] - np.sqrt(rho) * points[None, :]) ** 2, axis=1)


def _label_lookup(labeled: LabeledConstellation) -> np.ndarray:
    """Map label value (as an integer) to constellation index."""
    n = len(labeled.labels)
    lut = np.empty(n, dtype=np.int64)
    for idx, lab in enumerate(labeled.labels):
        lut[int(lab, 2)] = idx
    return lut


def run_ber_sweep(
    cfg: SystemConfig,
    designer: Designer,
    snr_db: Sequence[float],
    trials: int,
    seed: Optional[int] = None,
    *,
    coherence_trials: int = 1000,
    imperfect_csi: bool = False,
) -> BerCurve:
    """Monte Carlo bit-error-rate sweep over an SNR grid.

    Per coherence block: draw a channel, (optionally) perturb its estimate,
    run the designer on it, then per trial draw payload bits, map them to a
    point through the labels, transmit the physically received point and
    ML-detect against the designed points. ``trials`` counts per SNR point.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if coherence_trials < 1:
        raise ValueError("coherence_trials must be >= 1")
    if not cfg.noise_var > 0:
        raise ValueError("sweeps need noise_var > 0 to define SNR")
    seed = cfg.seed if seed is None else seed
    snr_db = np.asarray(snr_db, dtype=float)
    rhos = cfg.noise_var * 10.0 ** (snr_db / 10.0)
    sigma2 = cfg.noise_var
    n_bits = cfg.n_bits
    powers = 1 << np.arange(n_bits - 1, -1, -1)

    errors = np.zeros(len(snr_db), dtype=np.int64)
    n_blocks = (trials + coherence_trials - 1) // coherence_trials
    for block in range(n_blocks):
        block_trials = min(coherence_trials, trials - block * coherence_trials)
        ch = generate_channel(cfg, substream(seed, "channel", block))
        if imperfect_csi:
            ch = apply_csi_error(ch, cfg, substream(seed, "csi", block))
        labeled = designer(ch, cfg, substream(seed, "design", block))
        rx_points = labeled.point_array()
        tx_points = labeled.true_points if labeled.true_points is not None else rx_points
        bit_table = labeled.bit_matrix()
        lut = _label_lookup(labeled)
        for i, rho in enumerate(rhos):
            rng = substream(seed, "trial", i, block)
            bits = rng.integers(0, 2, size=(block_trials, n_bits), dtype=np.uint8)
            idx = lut[bits @ powers]
            noise = np.sqrt(sigma2 / 2) * (
                rng.standard_normal(block_trials)
                + 1j * rng.standard_normal(block_trials)
            )
            y = np.sqrt(rho) * tx_points[idx] + noise
            detected = _detect_batch(y, rx_points, rho)
            errors[i] += int(np.sum(bit_table[idx] != bit_table[detected]))

    trials_vec = np.full(len(snr_db), trials, dtype=np.int64)
    return BerCurve(
        snr_db=snr_db,
        ber_sim=errors / (trials_vec * n_bits),
        trials=trials_vec,
        bit_errors=errors,
    )


def write_ber_csv(path, curve: BerCurve) -> None:
    """Write a curve in the documented CSV layout (empty bound when absent)."""
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh)
        writer.writerow(BER_CSV_HEADER)
        for i in range(len(curve.snr_db)):
            bound = "" if curve.ber_bound is None else repr(float(curve.ber_bound[i]))
            writer.writerow(
                [
                    repr(float(curve.snr_db[i])),
                    repr(float(curve.ber_sim[i])),
                    bound,
                    int(curve.trials[i]),
                    int(curve.bit_errors[i]),
                ]
            )


def read_ber_csv(path) -> BerCurve:
    """Inverse of :func:`write_ber_csv`."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != BER_CSV_HEADER:
            raise ValueError(f"unexpected BER CSV header: {header}")
        rows = [row for row in reader if row]
    snr = np.array([float(r[0]) for r in rows])
    ber = np.array([float(r[1]) for r in rows])
    bounds = [r[2] for r in rows]
    trials = np.array([int(r[3]) for r in rows])
    bit_errors = np.array([int(r[4]) for r in rows])
    bound = None
    if any(b != "" for b in bounds):
        bound = np.array([float(b) if b != "" else np.nan for b in bounds])
    return BerCurve(
        snr_db=snr, ber_sim=ber, trials=trials, bit_errors=bit_errors, ber_bound=bound
    )
