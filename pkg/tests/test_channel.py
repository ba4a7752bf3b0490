from __future__ import annotations

import math

import numpy as np
import pytest

from convfec.channel import (
    NoiseConfig,
    add_awgn,
    bpsk_modulate,
    hard_quantize,
    inject_errors,
)

from reference import gaussian_tail


def test_modulation_mapping():
    assert list(bpsk_modulate([0, 1, 0])) == [1.0, -1.0, 1.0]


def test_modulation_zero_frame():
    assert list(bpsk_modulate([0] * 80)) == [1.0] * 80


def test_quantize_signs_and_tie():
    assert list(hard_quantize([0.3, -2.1])) == [0, 1]
    assert list(hard_quantize([0.0])) == [0]


def test_modulate_quantize_roundtrip():
    rng = np.random.default_rng(5)
    bits = rng.integers(0, 2, size=500, dtype=np.uint8)
    assert np.array_equal(hard_quantize(bpsk_modulate(bits)), bits)


def test_noise_config_validation():
    with pytest.raises(ValueError):
        NoiseConfig(math.inf, 0.5)
    with pytest.raises(ValueError):
        NoiseConfig(4.0, 0.0)
    with pytest.raises(ValueError):
        NoiseConfig(4.0, 1.5)


def test_noise_variance_formula():
    assert NoiseConfig(0.0, code_rate=1.0).noise_variance == pytest.approx(0.5)
    assert NoiseConfig(4.0, code_rate=0.5).noise_variance == pytest.approx(0.3981, abs=1e-4)


def test_awgn_deterministic_per_seed():
    symbols = bpsk_modulate(np.zeros(1000, dtype=np.uint8))
    cfg = NoiseConfig(3.0, 0.5, seed=42)
    assert np.array_equal(add_awgn(symbols, cfg), add_awgn(symbols, cfg))
    other = add_awgn(symbols, NoiseConfig(3.0, 0.5, seed=43))
    assert not np.array_equal(add_awgn(symbols, cfg), other)


def test_awgn_empirical_variance():
    cfg = NoiseConfig(4.0, code_rate=0.5, seed=11)
    noise = add_awgn(np.zeros(10**6), cfg)
    target = cfg.noise_variance
    assert abs(float(noise.var()) - target) / target < 0.01


def test_hard_decision_flip_probability_matches_q():
    # crossover after quantization converges to Q(sqrt(2 r Eb/N0))
    ebno_db, rate, n = 2.0, 1.0, 2 * 10**6
    cfg = NoiseConfig(ebno_db, code_rate=rate, seed=77)
    bits = np.zeros(n, dtype=np.uint8)
    flipped = hard_quantize(add_awgn(bpsk_modulate(bits), cfg))
    p_hat = float(np.count_nonzero(flipped)) / n
    p = gaussian_tail(math.sqrt(2 * rate * 10 ** (ebno_db / 10)))
    se = math.sqrt(p * (1 - p) / n)
    assert abs(p_hat - p) <= 3 * se


def test_inject_empty_set_is_identity():
    frame = [0, 1, 1, 0]
    assert inject_errors(frame, set()) == frame


def test_inject_seven_error_pattern():
    positions = {3, 17, 30, 41, 55, 60, 76}
    frame = inject_errors([0] * 80, positions)
    assert sum(frame) == 7
    assert {i for i, b in enumerate(frame) if b} == positions


def test_inject_is_involution():
    rng = np.random.default_rng(9)
    frame = [int(b) for b in rng.integers(0, 2, size=80)]
    positions = {1, 5, 40, 79}
    assert inject_errors(inject_errors(frame, positions), positions) == frame


def test_inject_changes_distance_by_pattern_size():
    frame = [0] * 80
    out = inject_errors(frame, {2, 4, 6})
    assert sum(a != b for a, b in zip(frame, out)) == 3


def test_inject_rejects_out_of_range():
    with pytest.raises(ValueError, match="80"):
        inject_errors([0] * 80, {80})
    with pytest.raises(ValueError):
        inject_errors([0] * 80, {-1})
