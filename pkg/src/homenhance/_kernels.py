"""Per-pixel and per-level kernels.

Each kernel has a numba ``@njit`` implementation and a pure-numpy one. The
numba path is used when numba imports and ``HOMENHANCE_NUMBA`` is not set to
``0``/``false``/``off``; :data:`BACKEND` names the active choice. Both paths
are always importable under ``*_numpy`` / ``*_numba`` names (the latter are
``None`` without numba) so they can be compared against each other.
"""

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_flag = os.environ.get("HOMENHANCE_NUMBA", "1").strip().lower()
NUMBA_ENABLED = numba is not None and _flag not in ("0", "false", "off", "no")
BACKEND = "numba" if NUMBA_ENABLED else "numpy"


# --- numpy ------------------------------------------------------------------


def partition_sums_numpy(samples, lo, hi):
    """Count and integer-sum the samples ``<= hi`` and the samples ``>= lo``."""
    s = samples.astype(np.int64, copy=False)
    low = s <= hi
    high = s >= lo
    return (
        int(np.count_nonzero(low)),
        int(s[low].sum()),
        int(np.count_nonzero(high)),
        int(s[high].sum()),
    )


def transfer_eval_numpy(x, x1, x2, g1, g2, gamma, alpha1, alpha2):
    """Curve values at ``x`` via the g2-weight ``w = 1 / (1 + exp(z))``.

    ``z = ln(alpha1 / alpha2) + gamma * (ln u - ln v)`` is non-increasing in
    ``x`` step by step under rounding, so the computed curve is monotone.
    """
    x = np.asarray(x, dtype=np.float64)
    log_ratio = math.log(alpha1) - math.log(alpha2)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        z = log_ratio + gamma * (np.log(x2 - x) - np.log(x - x1))
        w = 1.0 / (1.0 + np.exp(z))
        g = g1 + (g2 - g1) * w
    g = np.minimum(np.maximum(g, g1), g2)
    g = np.where(x <= x1, g1, g)
    g = np.where(x >= x2, g2, g)
    return g


def apply_lut_numpy(samples, lut):
    return lut[samples]


# --- numba ------------------------------------------------------------------

partition_sums_numba = None
transfer_eval_numba = None
apply_lut_numba = None
apply_lut_parallel_numba = None

if numba is not None:

    @numba.njit(cache=True)
    def _partition_sums_jit(samples, lo, hi):
        count1 = 0
        sum1 = 0
        count2 = 0
        sum2 = 0
        for i in range(samples.shape[0]):
            s = np.int64(samples[i])
            if s <= hi:
                count1 += 1
                sum1 += s
            if s >= lo:
                count2 += 1
                sum2 += s
        return count1, sum1, count2, sum2

    def partition_sums_numba(samples, lo, hi):
        c1, s1, c2, s2 = _partition_sums_jit(samples, np.int64(lo), np.int64(hi))
        return int(c1), int(s1), int(c2), int(s2)

    @numba.njit(cache=True)
    def _transfer_eval_jit(x, x1, x2, g1, g2, gamma, alpha1, alpha2, out):
        log_ratio = math.log(alpha1) - math.log(alpha2)
        for i in range(x.shape[0]):
            xi = x[i]
            if xi <= x1:
                out[i] = g1
            elif xi >= x2:
                out[i] = g2
            else:
                z = log_ratio + gamma * (math.log(x2 - xi) - math.log(xi - x1))
                if z > 709.0:
                    w = 0.0
                else:
                    w = 1.0 / (1.0 + math.exp(z))
                g = g1 + (g2 - g1) * w
                out[i] = min(max(g, g1), g2)

    def transfer_eval_numba(x, x1, x2, g1, g2, gamma, alpha1, alpha2):
        x = np.ascontiguousarray(x, dtype=np.float64)
        flat = x.reshape(-1)
        out = np.empty_like(flat)
        _transfer_eval_jit(
            flat, float(x1), float(x2), float(g1), float(g2),
            float(gamma), float(alpha1), float(alpha2), out,
        )
        return out.reshape(x.shape)

    @numba.njit(cache=True)
    def apply_lut_numba(samples, lut):
        out = np.empty(samples.shape[0], dtype=lut.dtype)
        for i in range(samples.shape[0]):
            out[i] = lut[samples[i]]
        return out

    @numba.njit(parallel=True, cache=True)
    def apply_lut_parallel_numba(samples, lut):
        out = np.empty(samples.shape[0], dtype=lut.dtype)
        for i in numba.prange(samples.shape[0]):
            out[i] = lut[samples[i]]
        return out


if NUMBA_ENABLED:
    partition_sums = partition_sums_numba
    transfer_eval = transfer_eval_numba
    apply_lut = apply_lut_numba
    apply_lut_parallel = apply_lut_parallel_numba
else:
    partition_sums = partition_sums_numpy
    transfer_eval = transfer_eval_numpy
    apply_lut = apply_lut_numpy
    apply_lut_parallel = apply_lut_numpy
