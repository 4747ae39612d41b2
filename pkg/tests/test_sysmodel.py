"""Channel generation, configuration validation and CSI perturbation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risim.rng import substream
from risim.sysmodel import (
    ChannelRealization,
    SystemConfig,
    apply_csi_error,
    channel_from_json,
    channel_to_json,
    dbm_to_linear,
    generate_channel,
)


def test_config_accepts_valid():
    cfg = SystemConfig(n_elements=7, n_antennas=3, phase_levels=2, n_points=8)
    assert cfg.n_bits == 3
    assert cfg.n_patterns == 128


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n_elements=0),
        dict(n_antennas=0),
        dict(phase_levels=1),
        dict(n_points=3),
        dict(n_points=1),
        dict(n_elements=2, phase_levels=2, n_points=8),  # L > B^N
        dict(tx_power=0.0),
        dict(noise_var=-1.0),
        dict(bound_randomizations=0),
        dict(max_kmeans_iters=0),
    ],
)
def test_config_rejects_invalid(kwargs):
    base = dict(n_elements=4, n_antennas=2, phase_levels=2, n_points=4)
    base.update(kwargs)
    with pytest.raises(ValueError):
        SystemConfig(**base)


def test_cascade_is_scalar_product_at_size_one():
    cfg = SystemConfig(n_elements=1, n_antennas=1, phase_levels=2, n_points=2)
    ch = generate_channel(cfg, substream(5, "channel", 0))
    assert ch.z_cascade.shape == (1, 1)
    assert ch.z_cascade[0, 0] == np.conj(ch.h_r[0]) * ch.g_matrix[0, 0]


def test_same_seed_bit_identical():
    cfg = SystemConfig(n_elements=6, n_antennas=4, phase_levels=2, n_points=8)
    a = generate_channel(cfg, substream(99, "channel", 3))
    b = generate_channel(cfg, substream(99, "channel", 3))
    assert np.array_equal(a.g_matrix, b.g_matrix)
    assert np.array_equal(a.h_r, b.h_r)
    assert np.array_equal(a.z_cascade, b.z_cascade)


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_cascade_definition_exact(seed):
    cfg = SystemConfig(n_elements=5, n_antennas=3, phase_levels=2, n_points=4)
    ch = generate_channel(cfg, substream(seed, "channel", 0))
    expected = np.conj(ch.h_r)[:, None] * ch.g_matrix
    assert np.array_equal(ch.z_cascade, expected)


def test_cascade_entry_variance_is_one():
    # product of two independent unit-variance CSCG scalars has unit variance;
    # one element per row keeps the 1e6 products independent
    cfg = SystemConfig(n_elements=10**6, n_antennas=1, phase_levels=2, n_points=2)
    ch = generate_channel(cfg, substream(7, "channel", 0))
    var = np.mean(np.abs(ch.z_cascade) ** 2)
    assert var == pytest.approx(1.0, abs=0.01)


def test_csi_error_variance_value():
    cfg = SystemConfig(
        n_elements=4, n_antennas=2, phase_levels=2, n_points=4,
        csi_noise_dbm=-50.0, pilot_power_dbm=-30.0,
    )
    assert cfg.csi_error_var == pytest.approx(10.0 ** ((-50.0 - (-30.0)) / 10.0))
    assert cfg.csi_error_var == pytest.approx(0.01)


def test_csi_error_sample_variance():
    cfg = SystemConfig(
        n_elements=1000, n_antennas=1000, phase_levels=2, n_points=2,
        csi_noise_dbm=-50.0, pilot_power_dbm=-30.0,
    )
    ch = generate_channel(cfg, substream(13, "channel", 0))
    noisy = apply_csi_error(ch, cfg, substream(13, "csi", 0))
    var = np.mean(np.abs(noisy.z_estimated - noisy.z_cascade) ** 2)
    assert var == pytest.approx(0.01, rel=0.01)


def test_zero_error_variance_gives_exact_copy():
    cfg = SystemConfig(
        n_elements=3, n_antennas=2, phase_levels=2, n_points=4,
        csi_noise_dbm=-np.inf, pilot_power_dbm=-30.0,
    )
    ch = generate_channel(cfg, substream(1, "channel", 0))
    noisy = apply_csi_error(ch, cfg, substream(1, "csi", 0))
    assert np.array_equal(noisy.z_estimated, noisy.z_cascade)


def test_nonpositive_pilot_power_rejected():
    cfg = SystemConfig(
        n_elements=3, n_antennas=2, phase_levels=2, n_points=4,
        pilot_power_dbm=-np.inf,
    )
    ch = generate_channel(cfg, substream(1, "channel", 0))
    with pytest.raises(ValueError):
        apply_csi_error(ch, cfg, substream(1, "csi", 0))


def test_design_channel_switches_with_estimate():
    cfg = SystemConfig(n_elements=3, n_antennas=2, phase_levels=2, n_points=4)
    ch = generate_channel(cfg, substream(2, "channel", 0))
    assert ch.design_channel is ch.z_cascade
    noisy = apply_csi_error(ch, cfg, substream(2, "csi", 0))
    assert noisy.design_channel is noisy.z_estimated


def test_dbm_conversion():
    assert dbm_to_linear(0.0) == 1.0
    assert dbm_to_linear(-30.0) == pytest.approx(1e-3)


def test_json_roundtrip():
    cfg = SystemConfig(n_elements=3, n_antennas=2, phase_levels=2, n_points=4)
    ch = apply_csi_error(
        generate_channel(cfg, substream(4, "channel", 0)), cfg, substream(4, "csi", 0)
    )
    back = channel_from_json(channel_to_json(ch))
    assert np.array_equal(back.g_matrix, ch.g_matrix)
    assert np.array_equal(back.h_r, ch.h_r)
    assert np.array_equal(back.z_cascade, ch.z_cascade)
    assert np.array_equal(back.z_estimated, ch.z_estimated)
