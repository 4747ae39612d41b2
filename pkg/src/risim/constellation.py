"""Reflection patterns and the effective symbols they induce.

Each pattern is a vector of N unit-modulus coefficients whose phases are
drawn from the B evenly spaced levels ``{0, 2*pi/B, ..., (B-1)*2*pi/B}``.
Under maximum-ratio transmission the composite channel seen by the user
for pattern ``xi`` collapses to the non-negative gain ``||xi^T Z||``; the
transmit signal only rotates it. Sorting patterns by gain and rotating
sorted pairs by (theta, theta + pi) places equal-gain pattern pairs at
antipodal points of the complex plane, which spreads the candidate set.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

DEFAULT_PATTERN_CAP = 2**20

_QUARTER_TURNS = ((0.0, 1.0 + 0.0j), (0.25, 1.0j), (0.5, -1.0 + 0.0j), (0.75, -1.0j))


def _coefficients(digits: np.ndarray, levels: int) -> np.ndarray:
    """Unit-modulus coefficients ``exp(2j*pi*digits/levels)``.

    Quarter-turn phases are snapped to exact +-1 / +-1j so that negated
    patterns produce exactly opposite coefficient vectors (and therefore
    exactly tied gains) for even ``levels``.
    """
    frac = digits / levels
    coeffs = np.exp(2j * np.pi * frac)
    for f, v in _QUARTER_TURNS:
        coeffs = np.where(frac == f, v, coeffs)
    return coeffs


@dataclass(frozen=True)
class ReflectionPattern:
    """One configuration of the surface: per-element phase indices."""

    phase_indices: np.ndarray
    coefficients: np.ndarray

    @classmethod
    def from_id(cls, pattern_id: int, levels: int, n_elements: int) -> "ReflectionPattern":
        """Pattern whose phase indices are the base-``levels`` digits of the id."""
        digits = (pattern_id // levels ** np.arange(n_elements)) % levels
        return cls(phase_indices=digits, coefficients=_coefficients(digits, levels))


@dataclass(frozen=True)
class EffectiveSymbol:
    """The complex point one pattern contributes to the candidate set.

    ``point == gain * exp(1j * tx_phase)`` with ``gain = ||xi^T Z||``.
    """

    pattern_id: int
    point: complex
    tx_phase: float
    gain: float


def enumerate_patterns(
    levels: int, n_elements: int, cap: int = DEFAULT_PATTERN_CAP
) -> List[ReflectionPattern]:
    """All ``levels**n_elements`` patterns in base-``levels`` counting order.

    The phase index of element 0 varies fastest. Raises when the count
    exceeds ``cap`` (raise the cap explicitly for very large surfaces).
    """
    if levels < 2:
        raise ValueError("levels must be >= 2")
    if n_elements < 1:
        raise ValueError("n_elements must be >= 1")
    total = levels**n_elements
    if total > cap:
        raise ValueError(f"{total} patterns exceed the cap of {cap}")
    ids = np.arange(total)
    digits = (ids[:, None] // levels ** np.arange(n_elements)[None, :]) % levels
    coeffs = _coefficients(digits, levels)
    return [
        ReflectionPattern(phase_indices=digits[r], coefficients=coeffs[r])
        for r in range(total)
    ]


def effective_gain(pattern: ReflectionPattern, z: np.ndarray) -> float:
    """Received amplitude ``||xi^T Z||`` of one pattern under MRT."""
    z = np.asarray(z)
    if z.ndim != 2 or z.shape[0] != pattern.coefficients.shape[0]:
        raise ValueError(
            f"channel shape {z.shape} does not match pattern length "
            f"{pattern.coefficients.shape[0]}"
        )
    return float(np.linalg.norm(pattern.coefficients @ z))


def _stack_coefficients(patterns: Sequence[ReflectionPattern]) -> np.ndarray:
    return np.stack([p.coefficients for p in patterns])


PHASE_MODES = ("paired", "independent", "plain")


def build_effective_symbols(
    patterns: Sequence[ReflectionPattern],
    z: np.ndarray,
    rng: np.random.Generator,
    phase_mode: str = "paired",
) -> List[EffectiveSymbol]:
    """Compute all effective symbols, sorted by descending gain.

    ``phase_mode`` selects the transmit-signal rotation:

    * ``"paired"`` -- entries at even sorted positions draw a phase
      uniformly from [0, pi) and the next entry takes that phase plus pi,
      so equal-gain pattern pairs land at antipodal points;
    * ``"independent"`` -- every symbol draws its own phase from
      [0, 2*pi) with no pairing (the non-symmetric variant);
    * ``"plain"`` -- no rotation at all (x = 1), leaving the points on the
      non-negative real axis, as selection-only schemes see them.

    Gain ties are broken by ascending pattern id, which keeps
    inverse-pattern pairs adjacent in the sorted order.
    """
    if not patterns:
        raise ValueError("patterns must be non-empty")
    if phase_mode not in PHASE_MODES:
        raise ValueError(f"phase_mode must be one of {PHASE_MODES}")
    z = np.asarray(z)
    if z.ndim != 2 or z.shape[0] != patterns[0].coefficients.shape[0]:
        raise ValueError(f"channel shape {z.shape} does not match patterns")

    coeffs = _stack_coefficients(patterns)
    gains = np.linalg.norm(coeffs @ z, axis=1)
    n = len(patterns)
    order = np.lexsort((np.arange(n), -gains))

    sorted_gains = gains[order]
    if phase_mode == "paired":
        thetas = rng.uniform(0.0, np.pi, size=(n + 1) // 2)
        phases = np.empty(n)
        phases[0::2] = thetas
        phases[1::2] = thetas[: n // 2] + np.pi
        x = np.empty(n, dtype=complex)
        x[0::2] = np.exp(1j * thetas)
        x[1::2] = -x[0::2][: n // 2]  # exact negation, not exp(1j*pi)
        points = sorted_gains * x
    elif phase_mode == "independent":
        phases = rng.uniform(0.0, 2.0 * np.pi, size=n)
        points = sorted_gains * np.exp(1j * phases)
    else:
        phases = np.zeros(n)
        points = sorted_gains.astype(complex)
    return [
        EffectiveSymbol(
            pattern_id=int(order[k]),
            point=complex(points[k]),
            tx_phase=float(phases[k]),
            gain=float(sorted_gains[k]),
        )
        for k in range(n)
    ]


def points_of(symbols: Sequence[EffectiveSymbol]) -> np.ndarray:
    """Complex points of a symbol sequence as one array."""
    return np.array([s.point for s in symbols], dtype=complex)


def pattern_label(pattern_id: int, levels: int, n_elements: int) -> str:
    """Base-``levels`` digit string of a pattern id, element N-1 first."""
    return np.base_repr(pattern_id, base=levels).zfill(n_elements)


def mrt_point(
    coefficients: np.ndarray,
    z_design: np.ndarray,
    z_true: np.ndarray,
    tx_phase: float,
) -> complex:
    """Physical constellation point when beamforming is matched to
    ``z_design`` but propagation happens over ``z_true``.

    Equals ``||xi^T z|| * exp(1j*tx_phase)`` when both channels agree.
    """
    row = coefficients @ z_design
    norm = np.linalg.norm(row)
    if norm == 0.0:
        w = np.zeros(z_design.shape[1], dtype=complex)
        w[0] = 1.0
    else:
        w = row.conj() / norm
    return complex((coefficients @ z_true) @ w * np.exp(1j * tx_phase))
