"""Independent reference computations used to freeze expected values.

Nothing here imports from the package's numerical paths; the fixed-point
simulation runs on exact rationals and the curve is evaluated in mpmath.
"""

from fractions import Fraction

import mpmath


def simulate_interwoven_means(levels, epsilon=Fraction(1, 10000), max_iters=100):
    """Plain transcription of the node iteration on exact rational levels.

    Returns ``(c1, c2, iterates, status)`` with status one of
    ``"converged"``, ``"cycle"``, ``"exhausted"``.
    """
    levels = [Fraction(v) for v in levels]
    lo, hi = min(levels), max(levels)
    mean = sum(levels) / len(levels)
    c1, c2 = (lo + mean) / 2, (mean + hi) / 2
    iterates = [(c1, c2)]
    for _ in range(max_iters):
        d1 = [v for v in levels if lo <= v <= c2]
        d2 = [v for v in levels if c1 <= v <= hi]
        n1, n2 = sum(d1) / len(d1), sum(d2) / len(d2)
        iterates.append((n1, n2))
        if abs(n1 - c1) < epsilon and abs(n2 - c2) < epsilon:
            return n1, n2, iterates, "converged"
        if len(iterates) >= 3:
            p1, p2 = iterates[-3]
            if abs(n1 - p1) < epsilon and abs(n2 - p2) < epsilon:
                return (n1 + c1) / 2, (n2 + c2) / 2, iterates, "cycle"
        c1, c2 = n1, n2
    return c1, c2, iterates, "exhausted"


def _mp(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def gamma_closed_form(nodes, targets, dps=50):
    with mpmath.workdps(dps):
        x1, c1, c2, x2 = map(_mp, nodes)
        g1, gc1, gc2, g2 = map(_mp, targets)
        num = mpmath.log((gc1 - g1) / (g2 - gc1) * (g2 - gc2) / (gc2 - g1))
        den = mpmath.log((c1 - x1) / (x2 - c1) * (x2 - c2) / (c2 - x1))
        return num / den


def curve_exact(nodes, targets, x, dps=50):
    """The fitted curve written out in full, gamma included, at high precision."""
    with mpmath.workdps(dps):
        x1, c1, c2, x2 = map(_mp, nodes)
        g1, gc1, gc2, g2 = map(_mp, targets)
        gamma = gamma_closed_form(nodes, targets, dps)
        a1 = (g2 - gc1) / (x2 - c1) ** gamma
        a2 = (gc1 - g1) / (c1 - x1) ** gamma
        x = _mp(x)
        u, v = x2 - x, x - x1
        num = a1 * g1 * u**gamma + a2 * g2 * v**gamma
        den = a1 * u**gamma + a2 * v**gamma
        return num / den


def ks_to_uniform(samples, maxval):
    """Empirical CDF of the samples against the discrete uniform CDF, level by level."""
    ordered = sorted(int(s) for s in samples)
    n = len(ordered)
    levels = maxval + 1
    worst = Fraction(0)
    idx = 0
    for k in range(levels):
        while idx < n and ordered[idx] <= k:
            idx += 1
        gap = abs(Fraction(idx, n) - Fraction(k + 1, levels))
        worst = max(worst, gap)
    return float(worst)
