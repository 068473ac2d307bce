"""numba and numpy kernel paths must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from homenhance import _kernels as K
from homenhance import fit_transfer, from_unit
from conftest import random_valid_config

needs_numba = pytest.mark.skipif(K.partition_sums_numba is None, reason="numba not importable")


def test_backend_flag_reflects_environment():
    code = "from homenhance import _kernels as K; print(K.BACKEND)"
    env = dict(os.environ, HOMENHANCE_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


@needs_numba
def test_partition_sums_agree(rng):
    for maxval in (1, 255, 65535):
        samples = rng.integers(0, maxval + 1, 5000).astype(np.uint16)
        for _ in range(20):
            lo, hi = sorted(rng.integers(-1, maxval + 2, 2).tolist())
            assert K.partition_sums_numba(samples, lo, hi) == K.partition_sums_numpy(samples, lo, hi)


@needs_numba
def test_partition_sums_exact_for_large_images():
    samples = np.full(1 << 20, 65535, dtype=np.uint16)
    c1, s1, c2, s2 = K.partition_sums_numba(samples, 0, 65535)
    assert c1 == c2 == 1 << 20 and s1 == s2 == 65535 * (1 << 20)


@needs_numba
def test_transfer_eval_agree(rng):
    for _ in range(200):
        nodes, targets = random_valid_config(rng)
        t = fit_transfer(nodes, targets)
        args = (nodes.x1, nodes.x2, targets.g1, targets.g2, t.gamma, t.alpha1, t.alpha2)
        for maxval in (255, 65535):
            x = np.arange(maxval + 1) / maxval
            a = K.transfer_eval_numpy(x, *args)
            b = K.transfer_eval_numba(x, *args)
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-300)
            assert np.array_equal(from_unit(a, maxval), from_unit(b, maxval))


@needs_numba
def test_apply_lut_agree(rng):
    lut = rng.integers(0, 256, 256).astype(np.uint16)
    samples = rng.integers(0, 256, 100_000).astype(np.uint16)
    ref = K.apply_lut_numpy(samples, lut)
    assert np.array_equal(K.apply_lut_numba(samples, lut), ref)
    assert np.array_equal(K.apply_lut_parallel_numba(samples, lut), ref)
