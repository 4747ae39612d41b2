"""Bit labeling of a selected constellation.

The selected points are first threaded into a nearest-neighbor chain
(start random, always hop to the closest unvisited point) and the chain
positions then receive binary-reflected Gray codes, so spatially adjacent
points differ in a single bit. A plain-binary labeling of the unordered
selection is kept as the no-Gray baseline.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from .constellation import EffectiveSymbol
from .clustering import SelectedConstellation


@dataclass(frozen=True)
class LabeledConstellation:
    """Constellation points with their bit labels.

    ``labels`` is a permutation of all ``n_bits``-bit strings (MSB first).
    ``true_points``, when present, are the physically received points for
    designs made on an erroneous channel estimate. ``pattern_strings``
    optionally carries a scheme-specific textual pattern description used
    in dumps (single-active-element designs are not base-B patterns).
    """

    points: List[EffectiveSymbol]
    labels: List[str]
    true_points: Optional[np.ndarray] = field(default=None)
    pattern_strings: Optional[List[str]] = field(default=None)

    @property
    def n_bits(self) -> int:
        return len(self.labels[0])

    def point_array(self) -> np.ndarray:
        return np.array([s.point for s in self.points], dtype=complex)

    def bit_matrix(self) -> np.ndarray:
        """Labels as a (L, n_bits) 0/1 array."""
        return np.array([[int(c) for c in lab] for lab in self.labels], dtype=np.uint8)


def hamming(a: str, b: str) -> int:
    """Number of differing bit positions between two equal-length labels."""
    if len(a) != len(b):
        raise ValueError("labels have different lengths")
    return sum(x != y for x, y in zip(a, b))


def gray_code(i: int, n_bits: int) -> str:
    """Binary-reflected Gray code of ``i`` as an ``n_bits`` string."""
    return format(i ^ (i >> 1), f"0{n_bits}b")


def order_chain(
    selected: Union[SelectedConstellation, Sequence[EffectiveSymbol]],
    rng: np.random.Generator,
    first_index: Optional[int] = None,
) -> List[EffectiveSymbol]:
    """Greedy nearest-neighbor ordering of the selected points.

    The first point is drawn uniformly (or forced via ``first_index``);
    each following point is the unvisited one closest to the current
    point, ties resolved to the lowest pattern id.
    """
    symbols = list(getattr(selected, "members", selected))
    if not symbols:
        raise ValueError("nothing to order")
    points = np.array([s.point for s in symbols])
    ids = np.array([s.pattern_id for s in symbols])
    start = int(rng.integers(len(symbols))) if first_index is None else int(first_index)
    remaining = list(range(len(symbols)))
    chain = [remaining.pop(start)]
    while remaining:
        dists = np.abs(points[remaining] - points[chain[-1]])
        best = np.flatnonzero(dists == dists.min())
        pick = best[np.argmin(ids[remaining][best])] if best.size > 1 else best[0]
        chain.append(remaining.pop(int(pick)))
    return [symbols[i] for i in chain]


def assign_gray_labels(
    chain: Sequence[EffectiveSymbol], n_bits: int
) -> LabeledConstellation:
    """Label chain position i with the Gray code of i."""
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    if len(chain) != 2**n_bits:
        raise ValueError(f"chain length {len(chain)} != 2^{n_bits}")
    return LabeledConstellation(
        points=list(chain), labels=[gray_code(i, n_bits) for i in range(len(chain))]
    )


def assign_natural_labels(
    selected: Union[SelectedConstellation, Sequence[EffectiveSymbol]], n_bits: int
) -> LabeledConstellation:
    """Label selection position i with plain binary i (no chain ordering)."""
    symbols = list(getattr(selected, "members", selected))
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    if len(symbols) != 2**n_bits:
        raise ValueError(f"selection size {len(symbols)} != 2^{n_bits}")
    return LabeledConstellation(
        points=symbols, labels=[format(i, f"0{n_bits}b") for i in range(len(symbols))]
    )
