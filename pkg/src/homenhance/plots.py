"""CSV and minimal SVG renderings of histograms and the transfer curve."""

from __future__ import annotations

import numpy as np

from .statistics import Histogram
from .transfer import TransferFunction, eval_transfer

VIEWPORT = 512
CURVE_SAMPLES = 256
NODE_RADIUS = 4


def _real(value: float) -> str:
    return format(float(value), ".17g")


def _coord(value: float) -> str:
    return format(float(value), ".6g")


def histogram_csv(h: Histogram) -> bytes:
    lines = ["level,count"]
    lines += [f"{level},{count}" for level, count in enumerate(h.bins.tolist())]
    return ("\n".join(lines) + "\n").encode("utf-8")


def curve_points(t: TransferFunction, samples: int) -> tuple[np.ndarray, np.ndarray]:
    if samples < 2:
        raise ValueError("curve needs at least two samples")
    x = np.linspace(t.nodes.x1, t.nodes.x2, samples)
    # linspace may not land exactly on the right end
    x[0], x[-1] = t.nodes.x1, t.nodes.x2
    return x, eval_transfer(t, x)


def curve_csv(t: TransferFunction, samples: int = CURVE_SAMPLES) -> bytes:
    x, g = curve_points(t, samples)
    lines = ["x,g"] + [f"{_real(a)},{_real(b)}" for a, b in zip(x, g)]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _svg(body: list[str]) -> bytes:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEWPORT}" height="{VIEWPORT}" '
        f'viewBox="0 0 {VIEWPORT} {VIEWPORT}">'
    )
    return "\n".join([head, *body, "</svg>"]).encode("utf-8") + b"\n"


def _to_view(x, y):
    # unit square to viewport, y axis pointing up
    return np.asarray(x) * VIEWPORT, VIEWPORT - np.asarray(y) * VIEWPORT


def curve_svg(t: TransferFunction) -> bytes:
    """Transfer curve as a polyline with circles on the four interpolation nodes."""
    x, g = curve_points(t, CURVE_SAMPLES)
    vx, vy = _to_view(x, g)
    points = " ".join(f"{_coord(a)},{_coord(b)}" for a, b in zip(vx, vy))
    body = [
        f'<rect x="0" y="0" width="{VIEWPORT}" height="{VIEWPORT}" fill="white" stroke="black"/>',
        f'<polyline fill="none" stroke="black" stroke-width="1.5" points="{points}"/>',
    ]
    nx = t.nodes.as_tuple()
    ny = t.targets.as_tuple()
    for cx, cy in zip(*_to_view(nx, ny)):
        body.append(
            f'<circle cx="{_coord(cx)}" cy="{_coord(cy)}" r="{NODE_RADIUS}" '
            'fill="none" stroke="red"/>'
        )
    return _svg(body)


def histogram_svg(h: Histogram) -> bytes:
    """Bar chart with one bar per non-empty level, tallest bar at full height."""
    bins = h.bins
    width = VIEWPORT / bins.size
    peak = int(bins.max())
    body = [f'<rect x="0" y="0" width="{VIEWPORT}" height="{VIEWPORT}" fill="white"/>']
    for level in np.flatnonzero(bins):
        height = VIEWPORT * int(bins[level]) / peak
        body.append(
            f'<rect class="bar" x="{_coord(level * width)}" y="{_coord(VIEWPORT - height)}" '
            f'width="{_coord(width)}" height="{_coord(height)}" fill="black"/>'
        )
    return _svg(body)
