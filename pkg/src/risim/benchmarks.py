"""Constellation designers: the clustering pipeline and three baselines.

Every designer maps one channel realization to a labeled constellation of
``cfg.n_points`` points. Designs run on the channel estimate when one is
present; the physically received points are then attached separately so
the link simulation can transmit over the true channel. All schemes share
this treatment.
"""

from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from dataclasses import replace

from .clustering import cluster_points, select_constellation
from .constellation import (
    EffectiveSymbol,
    ReflectionPattern,
    build_effective_symbols,
    enumerate_patterns,
    mrt_point,
    points_of,
)
from .graycode import (
    LabeledConstellation,
    assign_gray_labels,
    assign_natural_labels,
    gray_code,
    order_chain,
)
from .sysmodel import ChannelRealization, SystemConfig

SCHEMES = (
    "proposed",
    "proposed-no-sym",
    "proposed-no-gray",
    "scheme-a",
    "scheme-b",
    "scheme-c",
)


@lru_cache(maxsize=8)
def _patterns(levels: int, n_elements: int) -> Tuple[ReflectionPattern, ...]:
    return tuple(enumerate_patterns(levels, n_elements))


def total_pairwise_distance(points: Sequence[complex]) -> float:
    """Sum of |p_i - p_j| over unordered point pairs."""
    pts = np.asarray(points, dtype=complex)
    dists = np.abs(pts[:, None] - pts[None, :])
    return float(dists[np.triu_indices(len(pts), k=1)].sum())


def design_scheme_a(
    symbols: Sequence[EffectiveSymbol], n_points: int, rng: np.random.Generator
) -> LabeledConstellation:
    """Distance-maximization baseline: greedy dispersion of the selection.

    Seeds with the two symbols at maximal mutual distance, then repeatedly
    adds the symbol maximizing the summed log-distance (the product of
    distances) to the selected set. Plain distance sums degenerate on
    gain-only candidates, where every gain appears twice (a pattern and
    its inverse reflect identically): they stack coincident points at the
    extremes; the log measure repels duplicates while still favoring a
    large total spread. Labels follow the same Gray-chain procedure as
    the clustering design.
    """
    if len(symbols) < n_points:
        raise ValueError("fewer candidate symbols than constellation points")
    points = points_of(symbols)
    dists = np.abs(points[:, None] - points[None, :])
    first, second = np.unravel_index(np.argmax(dists), dists.shape)
    chosen = [int(first), int(second)]
    while len(chosen) < n_points:
        with np.errstate(divide="ignore"):
            score = np.where(
                dists[:, chosen].min(axis=1) > 0,
                np.log(np.maximum(dists[:, chosen], 1e-300)).sum(axis=1),
                -np.inf,
            )
        chosen.append(int(np.argmax(score)))
    selected = [symbols[i] for i in chosen]
    n_bits = n_points.bit_length() - 1
    return assign_gray_labels(order_chain(selected, rng), n_bits)


def design_scheme_b(
    ch: ChannelRealization, cfg: SystemConfig, rng: np.random.Generator
) -> LabeledConstellation:
    """Single-active-element keying with one BPSK bit.

    The first ``2^(b-1)`` surface elements convey ``b - 1`` bits (Gray
    coded over the element index); the BPSK sign conveys the last bit.
    Only the active element reflects; the rest stay off.
    """
    n_bits = cfg.n_bits
    n_active = 2 ** (n_bits - 1)
    if n_active > cfg.n_elements:
        raise ValueError(
            f"{n_active} active-element choices need at least that many elements, "
            f"got {cfg.n_elements}"
        )
    z_design = ch.design_channel
    symbols: List[EffectiveSymbol] = []
    labels: List[str] = []
    strings: List[str] = []
    true_pts: List[complex] = []
    for elem in range(n_active):
        gain = float(np.linalg.norm(z_design[elem]))
        elem_bits = gray_code(elem, n_bits - 1) if n_bits > 1 else ""
        for sign, bit, tag in ((1.0, "0", "+"), (-1.0, "1", "-")):
            idx = len(symbols)
            symbols.append(
                EffectiveSymbol(
                    pattern_id=idx,
                    point=complex(gain * sign),
                    tx_phase=0.0 if sign > 0 else float(np.pi),
                    gain=gain,
                )
            )
            labels.append(elem_bits + bit)
            strings.append(f"ook{elem}{tag}")
            if ch.z_estimated is not None:
                w_row = z_design[elem].conj()
                norm = np.linalg.norm(w_row)
                w = w_row / norm if norm > 0 else np.eye(cfg.n_antennas)[0]
                true_pts.append(complex(ch.z_cascade[elem] @ w * sign))
    return LabeledConstellation(
        points=symbols,
        labels=labels,
        pattern_strings=strings,
        true_points=np.array(true_pts) if ch.z_estimated is not None else None,
    )


def design_scheme_c(
    symbols: Sequence[EffectiveSymbol], n_points: int, rng: np.random.Generator
) -> LabeledConstellation:
    """Uniform selection without replacement, natural-binary labels."""
    if len(symbols) < n_points:
        raise ValueError("fewer candidate symbols than constellation points")
    picks = rng.choice(len(symbols), size=n_points, replace=False)
    n_bits = n_points.bit_length() - 1
    return assign_natural_labels([symbols[int(i)] for i in picks], n_bits)


def _proposed_from_symbols(
    symbols: Sequence[EffectiveSymbol],
    cfg: SystemConfig,
    rng: np.random.Generator,
    gray: bool,
    restarts: int,
) -> LabeledConstellation:
    state = cluster_points(
        points_of(symbols), cfg.n_points, rng, cfg.max_kmeans_iters, restarts=restarts
    )
    selected = select_constellation(state, symbols)
    if gray:
        return assign_gray_labels(order_chain(selected, rng), cfg.n_bits)
    return assign_natural_labels(selected, cfg.n_bits)


def _attach_true_points(
    labeled: LabeledConstellation, ch: ChannelRealization, cfg: SystemConfig
) -> LabeledConstellation:
    """Physically received points for pattern-based designs made on an estimate."""
    if ch.z_estimated is None:
        return labeled
    z_design, z_true = ch.z_estimated, ch.z_cascade
    true_pts = np.array(
        [
            mrt_point(
                ReflectionPattern.from_id(
                    s.pattern_id, cfg.phase_levels, cfg.n_elements
                ).coefficients,
                z_design,
                z_true,
                s.tx_phase,
            )
            for s in labeled.points
        ]
    )
    return replace(labeled, true_points=true_pts)


def design(
    scheme: str,
    ch: ChannelRealization,
    cfg: SystemConfig,
    rng: np.random.Generator,
    *,
    restarts: int = 1,
    with_candidates: bool = False,
):
    """Run one scheme end to end on a channel realization.

    With ``with_candidates=True`` also returns the candidate symbol set
    the scheme selected from (used for scatter dumps).
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if scheme == "scheme-b":
        labeled = design_scheme_b(ch, cfg, rng)
        return (labeled, list(labeled.points)) if with_candidates else labeled

    patterns = _patterns(cfg.phase_levels, cfg.n_elements)
    if scheme == "proposed-no-sym":
        phase_mode = "independent"
    elif scheme in ("proposed", "proposed-no-gray"):
        phase_mode = "paired"
    else:
        # Selection-only baselines pick patterns without designing the
        # transmit signal, so their candidates sit on the real gain axis.
        phase_mode = "plain"
    symbols = build_effective_symbols(
        patterns, ch.design_channel, rng, phase_mode=phase_mode
    )
    if scheme in ("proposed", "proposed-no-sym", "proposed-no-gray"):
        labeled = _proposed_from_symbols(
            symbols, cfg, rng, gray=scheme != "proposed-no-gray", restarts=restarts
        )
    elif scheme == "scheme-a":
        labeled = design_scheme_a(symbols, cfg.n_points, rng)
    else:
        labeled = design_scheme_c(symbols, cfg.n_points, rng)
    labeled = _attach_true_points(labeled, ch, cfg)
    return (labeled, symbols) if with_candidates else labeled


def design_proposed(
    ch: ChannelRealization,
    cfg: SystemConfig,
    rng: np.random.Generator,
    *,
    symmetric: bool = True,
    gray: bool = True,
    restarts: int = 1,
) -> LabeledConstellation:
    """Clustering-based design; flags select the baseline variants."""
    if not symmetric and not gray:
        raise ValueError("variants disable at most one of symmetry and Gray coding")
    if not symmetric:
        scheme = "proposed-no-sym"
    elif not gray:
        scheme = "proposed-no-gray"
    else:
        scheme = "proposed"
    return design(scheme, ch, cfg, rng, restarts=restarts)


def designer_for(scheme: str, restarts: int = 1):
    """Designer callback (channel, config, stream) -> LabeledConstellation."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")

    def _designer(ch, cfg, rng):
        return design(scheme, ch, cfg, rng, restarts=restarts)

    return _designer
