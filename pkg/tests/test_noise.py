"""Seeded magnitude-noise injection."""

import numpy as np
import pytest

from hftphase import NoiseParams, add_noise


def test_zero_noise_is_identity():
    a = np.array([[1.0, 2.0], [3.0, 0.0]])
    out = add_noise(a, NoiseParams(rnoi=0.0, anoi=0.0, seed=5))
    np.testing.assert_array_equal(out, a)
    assert out is not a


def test_relative_noise_on_zero_signal_is_zero():
    a = np.zeros((8, 8))
    out = add_noise(a, NoiseParams(rnoi=0.5, anoi=0.0, seed=3))
    np.testing.assert_array_equal(out, np.zeros((8, 8)))


def test_deterministic_bit_identical():
    rng = np.random.default_rng(1)
    a = rng.uniform(0, 100, size=(32, 32))
    p = NoiseParams(rnoi=0.1, anoi=2.0, seed=99)
    first = add_noise(a, p)
    second = add_noise(a, p)
    np.testing.assert_array_equal(first, second)


def test_different_seeds_differ():
    a = np.full((16, 16), 10.0)
    out1 = add_noise(a, NoiseParams(rnoi=0.1, anoi=0.0, seed=0))
    out2 = add_noise(a, NoiseParams(rnoi=0.1, anoi=0.0, seed=1))
    assert not np.array_equal(out1, out2)


def test_output_nonnegative():
    a = np.full((64, 64), 0.5)
    out = add_noise(a, NoiseParams(rnoi=0.0, anoi=50.0, seed=7))
    assert np.all(out >= 0)
    assert np.any(out == 0.0)


def test_scale_equivariance():
    rng = np.random.default_rng(2)
    a = rng.uniform(0, 10, size=(24, 24))
    c = 3.7
    p = NoiseParams(rnoi=0.3, anoi=1.5, seed=11)
    p_scaled = NoiseParams(rnoi=0.3, anoi=1.5 * c, seed=11)
    np.testing.assert_allclose(add_noise(c * a, p_scaled), c * add_noise(a, p), rtol=1e-12)


def test_seeded_mean_and_std():
    a = np.full((256, 256), 100.0)
    out = add_noise(a, NoiseParams(rnoi=0.0, anoi=10.0, seed=0))
    assert abs(out.mean() - 100.0) < 0.5
    assert abs(out.std() - 10.0) < 0.5


def test_rejects_negative_scales():
    with pytest.raises(ValueError):
        NoiseParams(rnoi=-0.1)
    with pytest.raises(ValueError):
        NoiseParams(anoi=-1.0)


def test_rejects_negative_input():
    with pytest.raises(ValueError):
        add_noise(np.array([[-1.0, 0.0]]), NoiseParams())
