"""System configuration and random channel generation.

The downlink is an M-antenna transmitter reaching a single-antenna user
through an N-element reflecting surface. One coherence block is described
by the per-element cascaded channel Z with entries
``Z[n, m] = conj(h_r[n]) * G[n, m]``, where G is the transmitter-to-surface
channel and h_r the surface-to-user channel. Entries of G and h_r are
i.i.d. circularly symmetric complex Gaussian with unit variance (Rayleigh
fading, no large-scale losses).
"""

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


def dbm_to_linear(value_dbm: float) -> float:
    """Convert a dBm quantity to linear scale (same scale as channel power)."""
    return 10.0 ** (value_dbm / 10.0)


@dataclass(frozen=True)
class SystemConfig:
    """All simulation parameters for one experiment.

    ``n_points`` must be a power of two not exceeding the number of
    available reflection patterns ``phase_levels ** n_elements``.
    """

    n_elements: int = 4
    n_antennas: int = 3
    phase_levels: int = 2
    n_points: int = 4
    tx_power: float = 1.0
    noise_var: float = 1.0
    csi_noise_dbm: float = -50.0
    pilot_power_dbm: float = -30.0
    bound_randomizations: int = 1000
    max_kmeans_iters: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.n_elements < 1:
            raise ValueError("n_elements must be >= 1")
        if self.n_antennas < 1:
            raise ValueError("n_antennas must be >= 1")
        if self.phase_levels < 2:
            raise ValueError("phase_levels must be >= 2")
        if self.n_points < 2 or self.n_points & (self.n_points - 1):
            raise ValueError("n_points must be a power of two >= 2")
        if self.n_points > self.n_patterns:
            raise ValueError(
                f"n_points={self.n_points} exceeds the "
                f"{self.n_patterns} available reflection patterns"
            )
        if not self.tx_power > 0:
            raise ValueError("tx_power must be positive")
        if self.noise_var < 0:
            raise ValueError("noise_var must be non-negative")
        if self.bound_randomizations < 1:
            raise ValueError("bound_randomizations must be >= 1")
        if self.max_kmeans_iters < 1:
            raise ValueError("max_kmeans_iters must be >= 1")

    @property
    def n_bits(self) -> int:
        """Bits conveyed per channel use, log2 of the constellation size."""
        return self.n_points.bit_length() - 1

    @property
    def n_patterns(self) -> int:
        """Total number of selectable reflection patterns."""
        return self.phase_levels**self.n_elements

    @property
    def csi_error_var(self) -> float:
        """Per-entry variance of the additive channel-estimation error."""
        pilot = dbm_to_linear(self.pilot_power_dbm)
        if not (math.isfinite(pilot) and pilot > 0):
            raise ValueError("pilot power must be positive and finite")
        return dbm_to_linear(self.csi_noise_dbm) / pilot


@dataclass(frozen=True)
class ChannelRealization:
    """Channel matrices for one coherence block.

    ``z_estimated`` is only present when an estimation error has been
    applied; design and detection then operate on it while the physical
    link still uses ``z_cascade``.
    """

    g_matrix: np.ndarray
    h_r: np.ndarray
    z_cascade: np.ndarray
    z_estimated: Optional[np.ndarray] = field(default=None)

    @property
    def design_channel(self) -> np.ndarray:
        """Channel matrix available to the transmitter-side design."""
        return self.z_cascade if self.z_estimated is None else self.z_estimated


def _complex_to_pairs(arr: np.ndarray) -> list:
    """Nested [re, im] pairs, row-major."""
    stacked = np.stack([arr.real, arr.imag], axis=-1)
    return stacked.tolist()


def _pairs_to_complex(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def channel_to_json(ch: ChannelRealization) -> str:
    """Serialize a realization as JSON with [re, im] pairs (row-major)."""
    data = {
        "g_matrix": _complex_to_pairs(ch.g_matrix),
        "h_r": _complex_to_pairs(ch.h_r),
        "z_cascade": _complex_to_pairs(ch.z_cascade),
    }
    if ch.z_estimated is not None:
        data["z_estimated"] = _complex_to_pairs(ch.z_estimated)
    return json.dumps(data)


def channel_from_json(text: str) -> ChannelRealization:
    """Inverse of :func:`channel_to_json`."""
    data = json.loads(text)
    return ChannelRealization(
        g_matrix=_pairs_to_complex(data["g_matrix"]),
        h_r=_pairs_to_complex(data["h_r"]),
        z_cascade=_pairs_to_complex(data["z_cascade"]),
        z_estimated=(
            _pairs_to_complex(data["z_estimated"]) if "z_estimated" in data else None
        ),
    )


def _cscg(rng: np.random.Generator, shape) -> np.ndarray:
    """Unit-variance circularly symmetric complex Gaussian samples."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def generate_channel(cfg: SystemConfig, rng: np.random.Generator) -> ChannelRealization:
    """Draw one i.i.d. Rayleigh realization of G, h_r and the cascade Z."""
    g = _cscg(rng, (cfg.n_elements, cfg.n_antennas))
    h_r = _cscg(rng, cfg.n_elements)
    z = np.conj(h_r)[:, None] * g
    return ChannelRealization(g_matrix=g, h_r=h_r, z_cascade=z)


def apply_csi_error(
    ch: ChannelRealization, cfg: SystemConfig, rng: np.random.Generator
) -> ChannelRealization:
    """Return a copy of ``ch`` carrying a noisy estimate of the cascade.

    The estimate is ``Z + E`` with E i.i.d. complex Gaussian whose per-entry
    variance is the noise-to-pilot power ratio, both converted from dBm.
    """
    var = cfg.csi_error_var
    err = np.sqrt(var) * _cscg(rng, ch.z_cascade.shape) if var > 0 else 0.0
    return ChannelRealization(
        g_matrix=ch.g_matrix,
        h_r=ch.h_r,
        z_cascade=ch.z_cascade,
        z_estimated=ch.z_cascade + err,
    )
