"""Generalized homographic transfer curve: fitting, evaluation and LUTs.

The curve through ``(x1, g1)`` and ``(x2, g2)`` is::

    g(x) = (a1 g1 u**gamma + a2 g2 v**gamma) / (a1 u**gamma + a2 v**gamma)

with ``u = x2 - x`` and ``v = x - x1``. ``gamma`` and the weights ``a1, a2``
are fixed in closed form by requiring the curve to also pass through the
interior points ``(c1, gc1)`` and ``(c2, gc2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import GammaUndefined, Overflow
from .image_io import from_unit
from .statistics import NodeSet

# |log| below this counts as zero in the gamma quotient
GAMMA_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class TargetLevels:
    g1: float = 0.0
    gc1: float = 1.0 / 3.0
    gc2: float = 2.0 / 3.0
    g2: float = 1.0

    def __post_init__(self):
        if not (self.g1 < self.gc1 < self.gc2 < self.g2):
            raise ValueError(
                f"target levels must be strictly increasing: {self.as_tuple()}"
            )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.g1, self.gc1, self.gc2, self.g2)


EQUALIZING_TARGETS = TargetLevels()


@dataclass(frozen=True)
class TransferFunction:
    gamma: float
    alpha1: float
    alpha2: float
    nodes: NodeSet
    targets: TargetLevels

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise ValueError(f"gamma must be finite, got {self.gamma!r}")
        for name in ("alpha1", "alpha2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    def __call__(self, x):
        return eval_transfer(self, x)


@dataclass(frozen=True, eq=False)
class Lut:
    maxval: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries)
        if entries.shape != (self.maxval + 1,):
            raise ValueError(f"LUT needs {self.maxval + 1} entries, got {entries.shape}")
        entries = entries.astype(np.uint16)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.entries.astype(np.int64)) >= 0))

    def __eq__(self, other):
        if not isinstance(other, Lut):
            return NotImplemented
        return self.maxval == other.maxval and np.array_equal(self.entries, other.entries)


def two_point_homographic(x1, x2, f1, f2, alpha1, alpha2, x):
    """Plain homographic interpolant through ``(x1, f1)`` and ``(x2, f2)``."""
    x = np.asarray(x, dtype=np.float64)
    u = x2 - x
    v = x - x1
    out = (alpha1 * f1 * u + alpha2 * f2 * v) / (alpha1 * u + alpha2 * v)
    out = np.where(x == x1, f1, np.where(x == x2, f2, out))
    return float(out) if out.ndim == 0 else out


def gamma_zero(nodes: NodeSet, targets: TargetLevels) -> float:
    x1, c1, c2, x2 = nodes.as_tuple()
    g1, gc1, gc2, g2 = targets.as_tuple()
    num = math.log((gc1 - g1) / (g2 - gc1) * ((g2 - gc2) / (gc2 - g1)))
    den = math.log((c1 - x1) / (x2 - c1) * ((x2 - c2) / (c2 - x1)))
    if abs(den) < GAMMA_ZERO_TOL:
        if abs(num) < GAMMA_ZERO_TOL:
            # every exponent satisfies both conditions; take the plain homographic case
            return 1.0
        raise GammaUndefined(
            f"node cross-ratio is 1 but target cross-ratio is not (log {num:.6g})"
        )
    return num / den


def _coefficient(level_gap: float, node_gap: float, gamma: float, name: str) -> float:
    try:
        value = math.exp(math.log(level_gap) - gamma * math.log(node_gap))
    except OverflowError:
        value = math.inf
    if not (math.isfinite(value) and value > 0):
        raise Overflow(f"{name} not representable for gamma={gamma!r}")
    return value


def fit_transfer(nodes: NodeSet, targets: TargetLevels = EQUALIZING_TARGETS) -> TransferFunction:
    """Fit the curve through the four (node, target) pairs."""
    x1, c1, _, x2 = nodes.as_tuple()
    g1, gc1, _, g2 = targets.as_tuple()
    gamma = gamma_zero(nodes, targets)
    alpha1 = _coefficient(g2 - gc1, x2 - c1, gamma, "alpha1")
    alpha2 = _coefficient(gc1 - g1, c1 - x1, gamma, "alpha2")
    return TransferFunction(gamma, alpha1, alpha2, nodes, targets)


def eval_transfer(t: TransferFunction, x):
    """Evaluate the curve; inputs outside ``[x1, x2]`` are clamped.

    Endpoints return ``g1``/``g2`` exactly. The powers are never formed: the
    g2-weight is a logistic of ``ln(a1 / a2) + gamma * ln(u / v)``, which
    neither overflows for large ``gamma`` nor breaks monotonicity.
    """
    n, g = t.nodes, t.targets
    out = _kernels.transfer_eval(
        np.atleast_1d(np.asarray(x, dtype=np.float64)),
        n.x1, n.x2, g.g1, g.g2, t.gamma, t.alpha1, t.alpha2,
    )
    if np.ndim(x) == 0:
        return float(out[0])
    return out


def build_lut(t: TransferFunction, maxval: int) -> Lut:
    if not 1 <= maxval <= 65535:
        raise ValueError(f"maxval {maxval} outside [1, 65535]")
    levels = np.arange(maxval + 1, dtype=np.float64) / maxval
    return Lut(maxval, from_unit(eval_transfer(t, levels), maxval))
