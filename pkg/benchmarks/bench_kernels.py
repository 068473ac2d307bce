"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py --size 2048 --repeat 5
"""

import argparse
import time

import numpy as np

from homenhance import _kernels as K
from homenhance import GrayImage, NodeSet, fit_transfer, interwoven_means


def timeit(fn, repeat):
    fn()  # warm-up (jit compile / cache load)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=2048, help="square image side")
    parser.add_argument("--maxval", type=int, default=255)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if K.partition_sums_numba is None:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(0)
    n = args.size * args.size
    samples = np.clip(rng.normal(0.3, 0.15, n) * args.maxval, 0, args.maxval).astype(np.uint16)
    lut = rng.integers(0, args.maxval + 1, args.maxval + 1).astype(np.uint16)
    t = fit_transfer(NodeSet(0.0, 0.1, 0.3, 1.0))
    curve_args = (t.nodes.x1, t.nodes.x2, t.targets.g1, t.targets.g2, t.gamma, t.alpha1, t.alpha2)
    levels = np.arange(65536) / 65535
    lo, hi = args.maxval // 4, 3 * args.maxval // 4

    rows = [
        ("partition_sums", lambda: K.partition_sums_numpy(samples, lo, hi),
         lambda: K.partition_sums_numba(samples, lo, hi)),
        ("transfer_eval (65536 levels)", lambda: K.transfer_eval_numpy(levels, *curve_args),
         lambda: K.transfer_eval_numba(levels, *curve_args)),
        ("apply_lut", lambda: K.apply_lut_numpy(samples, lut), lambda: K.apply_lut_numba(samples, lut)),
        ("apply_lut (parallel)", lambda: K.apply_lut_numpy(samples, lut),
         lambda: K.apply_lut_parallel_numba(samples, lut)),
    ]

    print(f"image {args.size}x{args.size}, maxval {args.maxval}, best of {args.repeat}")
    print(f"{'kernel':<30}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, np_fn, nb_fn in rows:
        a = timeit(np_fn, args.repeat)
        b = timeit(nb_fn, args.repeat)
        print(f"{name:<30}{a * 1e3:>12.2f}{b * 1e3:>12.2f}{a / b:>9.1f}x")

    img = GrayImage(args.size, args.size, args.maxval, samples)
    total = timeit(lambda: interwoven_means(img), 1)
    print(f"\ninterwoven_means end to end ({K.BACKEND} backend): {total * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
