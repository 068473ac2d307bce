"""Histogram, extrema, global mean and the interwoven-means node iteration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import ConstantImage, DegenerateNodes, EmptyPartition
from .image_io import GrayImage


@dataclass(frozen=True, eq=False)
class Histogram:
    bins: np.ndarray
    total: int

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.int64).copy()
        if bins.ndim != 1 or bins.size < 2:
            raise ValueError("histogram needs at least two bins")
        if (bins < 0).any():
            raise ValueError("negative histogram count")
        if int(bins.sum()) != int(self.total):
            raise ValueError(f"bins sum to {int(bins.sum())}, total is {self.total}")
        bins.flags.writeable = False
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "total", int(self.total))

    @classmethod
    def from_bins(cls, bins) -> "Histogram":
        bins = np.asarray(bins, dtype=np.int64)
        return cls(bins, int(bins.sum()))

    @property
    def maxval(self) -> int:
        return self.bins.size - 1

    def cdf(self) -> np.ndarray:
        return np.cumsum(self.bins) / self.total

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return self.total == other.total and np.array_equal(self.bins, other.bins)


@dataclass(frozen=True)
class NodeSet:
    """Interpolation abscissae ``x1 < c1 < c2 < x2`` in unit gray."""

    x1: float
    c1: float
    c2: float
    x2: float

    def __post_init__(self):
        if not (self.x1 < self.c1 < self.c2 < self.x2):
            raise DegenerateNodes(
                f"nodes not strictly increasing: {self.x1!r}, {self.c1!r}, {self.c2!r}, {self.x2!r}"
            )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x1, self.c1, self.c2, self.x2)

    def check_gap(self, min_gap: float) -> None:
        x1, c1, c2, x2 = self.as_tuple()
        if not (x1 + min_gap <= c1 and c1 + min_gap <= c2 and c2 + min_gap <= x2):
            raise DegenerateNodes(
                f"nodes closer than {min_gap:g}: {x1!r}, {c1!r}, {c2!r}, {x2!r}"
            )


@dataclass(frozen=True)
class IterationConfig:
    epsilon: float = 1e-4
    max_iters: int = 100
    min_gap: float = 1e-6

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if int(self.max_iters) < 1:
            raise ValueError("max_iters must be at least 1")
        if not self.min_gap > 0:
            raise ValueError("min_gap must be positive")


@dataclass(frozen=True)
class IterationTrace:
    iterates: tuple[tuple[float, float], ...]
    converged: bool
    cycle_detected: bool

    @property
    def iterations_used(self) -> int:
        return len(self.iterates) - 1


@dataclass(frozen=True)
class PartitionStats:
    """Sufficient statistics of the two overlapping pixel sets.

    Sums are kept as exact integer sample sums; ``sum1``/``sum2`` give the
    unit-gray equivalents.
    """

    count1: int
    raw_sum1: int
    count2: int
    raw_sum2: int
    maxval: int

    @property
    def sum1(self) -> float:
        return self.raw_sum1 / self.maxval

    @property
    def sum2(self) -> float:
        return self.raw_sum2 / self.maxval

    def means(self) -> tuple[float, float]:
        if self.count1 == 0 or self.count2 == 0:
            raise EmptyPartition(
                f"empty pixel set (count1={self.count1}, count2={self.count2})"
            )
        # Python int / int is correctly rounded, so each mean is a single rounding
        return (
            self.raw_sum1 / (self.count1 * self.maxval),
            self.raw_sum2 / (self.count2 * self.maxval),
        )


def histogram(img: GrayImage) -> Histogram:
    bins = np.bincount(img.samples, minlength=img.maxval + 1)
    return Histogram(bins, img.size)


def extrema(img: GrayImage) -> tuple[float, float]:
    lo = int(img.samples.min())
    hi = int(img.samples.max())
    if lo == hi:
        raise ConstantImage(f"image has the single gray level {lo}")
    return lo / img.maxval, hi / img.maxval


def global_mean(img: GrayImage) -> float:
    return int(img.samples.sum(dtype=np.int64)) / (img.size * img.maxval)


def _thresholds(c1, c2, maxval: int) -> tuple[int, int]:
    # sample/maxval <= c2  <=>  sample <= floor(c2 * maxval), evaluated exactly
    hi = math.floor(Fraction(c2) * maxval)
    lo = math.ceil(Fraction(c1) * maxval)
    return lo, hi


def partition_stats(img: GrayImage, c1: float, c2: float) -> PartitionStats:
    """Statistics of ``D1 = {l in [x1, c2]}`` and ``D2 = {l in [c1, x2]}``.

    Both intervals are closed. Membership is decided on the integer samples
    so that levels sitting exactly on a threshold are never misclassified.
    """
    lo, hi = _thresholds(c1, c2, img.maxval)
    count1, sum1, count2, sum2 = _kernels.partition_sums(img.samples, lo, hi)
    return PartitionStats(count1, sum1, count2, sum2, img.maxval)


def interwoven_means(
    img: GrayImage, cfg: IterationConfig | None = None
) -> tuple[NodeSet, IterationTrace]:
    """Locate the interior nodes ``c1, c2`` by fixed-point iteration.

    Starting from ``c1 = (min + mean) / 2`` and ``c2 = (mean + max) / 2``,
    each step replaces ``c1`` by the mean level of the pixels in
    ``[min, c2]`` and ``c2`` by the mean level of those in ``[c1, max]``.
    The loop stops when both moves are below ``cfg.epsilon``. A period-2
    oscillation (new iterate within epsilon of the one two steps back) is
    resolved by averaging the two alternating states; after
    ``cfg.max_iters`` steps the last iterate is returned unconverged.

    Iterates are carried as exact rationals (every one is a ratio of integer
    sums) and rounded to floats only for the returned nodes and trace.
    """
    cfg = cfg or IterationConfig()
    extrema(img)
    maxval = img.maxval
    lo = int(img.samples.min())
    hi = int(img.samples.max())
    x1 = Fraction(lo, maxval)
    x2 = Fraction(hi, maxval)
    mean = Fraction(int(img.samples.sum(dtype=np.int64)), img.size * maxval)
    eps = Fraction(cfg.epsilon)

    c1 = (x1 + mean) / 2
    c2 = (mean + x2) / 2
    exact = [(c1, c2)]
    converged = False
    cycle = False

    for _ in range(cfg.max_iters):
        t_lo, t_hi = _thresholds(c1, c2, maxval)
        count1, sum1, count2, sum2 = _kernels.partition_sums(img.samples, t_lo, t_hi)
        if count1 == 0 or count2 == 0:
            raise EmptyPartition(f"empty pixel set (count1={count1}, count2={count2})")
        n1 = Fraction(sum1, count1 * maxval)
        n2 = Fraction(sum2, count2 * maxval)
        exact.append((n1, n2))
        if abs(n1 - c1) < eps and abs(n2 - c2) < eps:
            converged = True
            c1, c2 = n1, n2
            break
        if len(exact) >= 3:
            p1, p2 = exact[-3]
            if abs(n1 - p1) < eps and abs(n2 - p2) < eps:
                cycle = True
                c1, c2 = (n1 + c1) / 2, (n2 + c2) / 2
                break
        c1, c2 = n1, n2

    trace = IterationTrace(
        tuple((float(a), float(b)) for a, b in exact), converged, cycle
    )
    f1, f2 = float(c1), float(c2)
    fx1, fx2 = float(x1), float(x2)
    if not (fx1 < f1 < f2 < fx2):
        raise DegenerateNodes(
            f"interior nodes collapsed: x1={fx1!r}, c1={f1!r}, c2={f2!r}, x2={fx2!r}"
        )
    nodes = NodeSet(fx1, f1, f2, fx2)
    nodes.check_gap(cfg.min_gap)
    return nodes, trace


def ks_uniform_distance(hist: Histogram) -> float:
    """Largest gap between the histogram CDF and the uniform CDF over all levels."""
    levels = hist.bins.size
    uniform = np.arange(1, levels + 1) / levels
    return float(np.max(np.abs(hist.cdf() - uniform)))
