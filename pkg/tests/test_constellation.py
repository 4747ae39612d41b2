"""Pattern enumeration, MRT gains and effective-symbol construction."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risim.constellation import (
    EffectiveSymbol,
    ReflectionPattern,
    build_effective_symbols,
    effective_gain,
    enumerate_patterns,
    mrt_point,
    pattern_label,
    points_of,
)
from risim.rng import substream
from risim.sysmodel import SystemConfig, generate_channel


class ZeroPhaseRng:
    """Test hook: a stand-in generator whose uniform draws are all zero."""

    def uniform(self, low, high, size=None):
        return np.zeros(size if size is not None else ())


def test_enumerate_b2_n2_exact():
    pats = enumerate_patterns(2, 2)
    coeffs = [tuple(p.coefficients) for p in pats]
    assert coeffs == [
        (1 + 0j, 1 + 0j),
        (-1 + 0j, 1 + 0j),
        (1 + 0j, -1 + 0j),
        (-1 + 0j, -1 + 0j),
    ]


def test_enumerate_counts():
    assert len(enumerate_patterns(2, 7)) == 128


def test_enumerate_b4_n1_fourth_roots():
    pats = enumerate_patterns(4, 1)
    assert [p.coefficients[0] for p in pats] == [1 + 0j, 1j, -1 + 0j, -1j]


@pytest.mark.parametrize("levels,n", [(1, 3), (0, 3), (2, 0)])
def test_enumerate_rejects_bad_sizes(levels, n):
    with pytest.raises(ValueError):
        enumerate_patterns(levels, n)


def test_enumerate_rejects_over_cap():
    with pytest.raises(ValueError):
        enumerate_patterns(2, 21)
    assert len(enumerate_patterns(2, 21, cap=2**21)) == 2**21


def test_pattern_from_id_matches_enumeration():
    pats = enumerate_patterns(3, 4)
    for pid in (0, 5, 26, 80):
        single = ReflectionPattern.from_id(pid, 3, 4)
        assert np.array_equal(single.phase_indices, pats[pid].phase_indices)
        assert np.array_equal(single.coefficients, pats[pid].coefficients)


def test_effective_gain_hand_cases():
    z = np.array([[1.0], [1.0]], dtype=complex)
    plus = ReflectionPattern.from_id(0, 2, 2)   # (+1, +1)
    minus = ReflectionPattern.from_id(1, 2, 2)  # (-1, +1)
    assert effective_gain(plus, z) == 2.0
    assert effective_gain(minus, z) == 0.0


def test_effective_gain_matches_beamformed_composite():
    # |xi^T Z w| with w = h/||h||, h^H = xi^T Z, evaluated directly
    rng = substream(17, "test", 0)
    z = (rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))) / np.sqrt(2)
    for pid in range(16):
        pat = ReflectionPattern.from_id(pid, 2, 4)
        row = pat.coefficients @ z
        h = row.conj().T
        w = h / np.linalg.norm(h)
        oracle = abs(row @ w)
        assert effective_gain(pat, z) == pytest.approx(oracle, rel=1e-12)


def test_effective_gain_dimension_mismatch():
    pat = ReflectionPattern.from_id(0, 2, 3)
    with pytest.raises(ValueError):
        effective_gain(pat, np.ones((4, 2), dtype=complex))


def _random_channel(n, m, seed=0):
    cfg = SystemConfig(n_elements=n, n_antennas=m, phase_levels=2, n_points=2)
    return generate_channel(cfg, substream(seed, "channel", 0)).z_cascade


def test_zero_phase_hook_gives_alternating_real_signs():
    pats = enumerate_patterns(2, 4)
    z = _random_channel(4, 3, seed=8)
    symbols = build_effective_symbols(pats, z, ZeroPhaseRng())
    pts = points_of(symbols)
    assert np.all(pts.imag == 0.0)
    assert np.all(pts.real[0::2] >= 0.0)
    for k in range(0, len(pts) - 1, 2):
        assert pts[k + 1].real == pytest.approx(-pts[k].real, rel=1e-12, abs=1e-12)


def test_sorted_gains_non_increasing_and_magnitude_matches():
    pats = enumerate_patterns(2, 6)
    z = _random_channel(6, 3, seed=9)
    symbols = build_effective_symbols(pats, z, substream(9, "design", 0))
    gains = np.array([s.gain for s in symbols])
    assert np.all(np.diff(gains) <= 0.0)
    for s in symbols:
        assert abs(s.point) == pytest.approx(s.gain, rel=1e-12, abs=1e-15)


def test_paired_rotation_exact():
    pats = enumerate_patterns(2, 5)
    z = _random_channel(5, 2, seed=10)
    symbols = build_effective_symbols(pats, z, substream(10, "design", 0))
    for k in range(1, len(symbols), 2):
        assert symbols[k].tx_phase - symbols[k - 1].tx_phase == pytest.approx(np.pi)
        assert 0.0 <= symbols[k - 1].tx_phase < np.pi


def test_antipodal_pattern_pairing_for_b2():
    pats = enumerate_patterns(2, 7)
    z = _random_channel(7, 3, seed=11)
    symbols = build_effective_symbols(pats, z, substream(11, "design", 0))
    gains = np.array([s.gain for s in symbols])
    # generic-channel precondition: gains distinct across antipodal pairs
    assert np.unique(np.round(gains, 9)).size == len(gains) // 2
    n_pat = len(pats)
    for k in range(0, len(symbols), 2):
        a, b = symbols[k], symbols[k + 1]
        assert a.pattern_id + b.pattern_id == n_pat - 1  # inverse pattern
        assert a.gain == b.gain
        assert b.point == pytest.approx(-a.point, rel=1e-12)


def test_b2_gain_multiset_invariant_under_negation():
    pats = enumerate_patterns(2, 5)
    z = _random_channel(5, 2, seed=12)
    symbols = build_effective_symbols(pats, z, substream(12, "design", 0))
    gains = sorted(s.gain for s in symbols)
    # each value appears an even number of times
    for i in range(0, len(gains), 2):
        assert gains[i] == gains[i + 1]


def test_independent_mode_has_no_pairing():
    pats = enumerate_patterns(2, 5)
    z = _random_channel(5, 2, seed=13)
    symbols = build_effective_symbols(pats, z, substream(13, "design", 0), "independent")
    phases = np.array([s.tx_phase for s in symbols])
    assert np.all((0.0 <= phases) & (phases < 2 * np.pi))
    diffs = (phases[1::2] - phases[0::2]) % (2 * np.pi)
    assert not np.allclose(diffs, np.pi)


def test_plain_mode_is_real_gain_line():
    pats = enumerate_patterns(2, 5)
    z = _random_channel(5, 2, seed=14)
    symbols = build_effective_symbols(pats, z, substream(14, "design", 0), "plain")
    for s in symbols:
        assert s.point == complex(s.gain)
        assert s.tx_phase == 0.0


@given(seed=st.integers(min_value=0, max_value=2**31))
@settings(max_examples=20, deadline=None)
def test_symbols_are_permutation_of_patterns(seed):
    pats = enumerate_patterns(2, 4)
    z = _random_channel(4, 2, seed=seed)
    symbols = build_effective_symbols(pats, z, substream(seed, "design", 0))
    assert sorted(s.pattern_id for s in symbols) == list(range(16))


def test_pattern_label_roundtrip():
    assert pattern_label(0, 2, 7) == "0000000"
    assert pattern_label(5, 2, 3) == "101"
    assert int(pattern_label(77, 2, 7), 2) == 77
    assert pattern_label(11, 4, 3) == "023"


def test_mrt_point_reduces_to_gain_when_channels_agree():
    z = _random_channel(4, 3, seed=15)
    pat = ReflectionPattern.from_id(6, 2, 4)
    expected = effective_gain(pat, z)
    got = mrt_point(pat.coefficients, z, z, 0.0)
    assert got == pytest.approx(expected, rel=1e-12)
