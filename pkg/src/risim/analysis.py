"""Error-rate analysis: pairwise error terms, a numerical BER upper bound
and operation-count estimates.

The probability of the detector preferring point ``l_hat`` over the sent
point ``l`` in Gaussian noise is ``Q(sqrt(kappa))`` with
``kappa = rho/(2*sigma2) * |g_l - g_lhat|^2``. Averaging the union of
those pairwise events over independently drawn channels (each with its own
freshly designed constellation) yields an upper bound on the mean BER that
cannot be written in closed form because the design step is data dependent.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import erfc

from .graycode import LabeledConstellation, hamming
from .linkops import Designer
from .rng import substream
from .sysmodel import SystemConfig, generate_channel


@dataclass(frozen=True)
class PairwiseErrorTerm:
    """One ordered pair (l, l_hat): its error exponent and bit weight."""

    l: int
    l_hat: int
    kappa: float
    n_bit_errors: int


@dataclass(frozen=True)
class ComplexityEstimate:
    """Operation counts of the design stages and the benchmark schemes.

    ``proposed_exact`` sums the four stage counts; ``proposed_simplified``
    is the conventional order-of-growth expression. Logarithms are base 2.
    """

    gain_and_sort: float
    clustering: float
    selection: float
    gray_mapping: float
    proposed_exact: float
    proposed_simplified: float
    scheme_a: float
    scheme_b: float
    scheme_c: float


def q_function(x):
    """Gaussian tail probability P(N(0,1) > x), elementwise."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / np.sqrt(2.0))


def pep_terms(
    constellation: LabeledConstellation, rho: float, sigma2: float
) -> List[PairwiseErrorTerm]:
    """All L*(L-1) ordered pairwise error terms of a labeled constellation."""
    points = constellation.point_array()
    labels = constellation.labels
    n = len(labels)
    scale = rho / (2.0 * sigma2)
    terms = []
    for l in range(n):
        for l_hat in range(n):
            if l == l_hat:
                continue
            terms.append(
                PairwiseErrorTerm(
                    l=l,
                    l_hat=l_hat,
                    kappa=float(scale * abs(points[l] - points[l_hat]) ** 2),
                    n_bit_errors=hamming(labels[l], labels[l_hat]),
                )
            )
    return terms


def ber_upper_bound(
    cfg: SystemConfig,
    designer: Designer,
    snr_db: Sequence[float],
    n_randomizations: Optional[int] = None,
    seed: Optional[int] = None,
) -> np.ndarray:
    """Union-style BER upper bound averaged over fresh channel designs.

    For each of ``n_randomizations`` independent channels the designer is
    rerun, then ``sum N(l, l_hat) * Q(sqrt(kappa))`` over ordered pairs is
    averaged and normalized by ``L * log2(L)``. Channel and design streams
    use the same derivation as the Monte Carlo sweep's coherence blocks,
    so with matching counts the two average over the same channel draws.
    """
    n_rand = cfg.bound_randomizations if n_randomizations is None else n_randomizations
    if n_rand < 1:
        raise ValueError("need at least one randomization")
    seed = cfg.seed if seed is None else seed
    snr_db = np.asarray(snr_db, dtype=float)
    rhos = cfg.noise_var * 10.0 ** (snr_db / 10.0)
    n_points = cfg.n_points

    # Pairwise squared distances and bit weights per randomization; the
    # SNR only scales them inside the Q argument.
    sq_dists = np.empty((n_rand, n_points, n_points))
    weights = np.empty((n_rand, n_points, n_points))
    for s in range(n_rand):
        ch = generate_channel(cfg, substream(seed, "channel", s))
        labeled = designer(ch, cfg, substream(seed, "design", s))
        pts = labeled.point_array()
        bits = labeled.bit_matrix()
        sq_dists[s] = np.abs(pts[:, None] - pts[None, :]) ** 2
        weights[s] = (bits[:, None, :] != bits[None, :, :]).sum(axis=2)

    bound = np.empty(len(snr_db))
    for i, rho in enumerate(rhos):
        kappa = rho / (2.0 * cfg.noise_var) * sq_dists
        bound[i] = float(
            np.sum(weights * q_function(np.sqrt(kappa)))
            / (n_rand * n_points * cfg.n_bits)
        )
    return bound


def complexity_estimate(
    levels: int, n_elements: int, n_iters: int, n_points: int
) -> ComplexityEstimate:
    """Operation counts for the design pipeline and the benchmark schemes."""
    if levels < 2 or n_elements < 1 or n_iters < 1 or n_points < 1:
        raise ValueError("invalid complexity parameters")
    r = float(levels**n_elements)
    log_r = np.log2(r)
    el = float(n_points)
    gain_and_sort = r * log_r + r * el
    clustering = r * n_iters * el
    selection = r * el - r + el
    gray_mapping = (el**2 - el) / 2.0
    return ComplexityEstimate(
        gain_and_sort=gain_and_sort,
        clustering=clustering,
        selection=selection,
        gray_mapping=gray_mapping,
        proposed_exact=gain_and_sort + clustering + selection + gray_mapping,
        proposed_simplified=r * log_r + r * n_iters * el + r * el - r + el**2,
        scheme_a=r * log_r + n_iters * el**2 + el**2,
        scheme_b=r + el * np.log2(el),
        scheme_c=el,
    )
