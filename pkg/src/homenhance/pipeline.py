"""End-to-end enhancement and the machine-readable report."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .image_io import GrayImage
from .statistics import Histogram, IterationConfig, NodeSet, histogram, interwoven_means
from .transfer import EQUALIZING_TARGETS, Lut, TargetLevels, TransferFunction, build_lut, fit_transfer

REPORT_KEYS = (
    "x1", "c1", "c2", "x2",
    "g1", "gc1", "gc2", "g2",
    "gamma", "alpha1", "alpha2",
    "iterations", "converged", "cycle_detected",
    "histogram_before", "histogram_after",
)


@dataclass(frozen=True)
class EnhanceReport:
    nodes: NodeSet
    targets: TargetLevels
    gamma: float
    alpha1: float
    alpha2: float
    iterations_used: int
    converged: bool
    cycle_detected: bool
    histogram_before: Histogram | None = None
    histogram_after: Histogram | None = None

    @property
    def transfer(self) -> TransferFunction:
        return TransferFunction(self.gamma, self.alpha1, self.alpha2, self.nodes, self.targets)


def apply_lut(img: GrayImage, lut: Lut, parallel: bool = False) -> GrayImage:
    if lut.maxval != img.maxval:
        raise ValueError(f"LUT maxval {lut.maxval} does not match image maxval {img.maxval}")
    mapper = _kernels.apply_lut_parallel if parallel else _kernels.apply_lut
    return GrayImage(img.width, img.height, img.maxval, mapper(img.samples, lut.entries))


def enhance(
    img: GrayImage,
    targets: TargetLevels = EQUALIZING_TARGETS,
    cfg: IterationConfig | None = None,
    parallel: bool = False,
) -> tuple[GrayImage, EnhanceReport]:
    """Fit the transfer curve to ``img`` and remap every pixel through its LUT."""
    nodes, trace = interwoven_means(img, cfg)
    t = fit_transfer(nodes, targets)
    out = apply_lut(img, build_lut(t, img.maxval), parallel=parallel)
    report = EnhanceReport(
        nodes=nodes,
        targets=targets,
        gamma=t.gamma,
        alpha1=t.alpha1,
        alpha2=t.alpha2,
        iterations_used=trace.iterations_used,
        converged=trace.converged,
        cycle_detected=trace.cycle_detected,
        histogram_before=histogram(img),
        histogram_after=histogram(out),
    )
    return out, report


def format_real(value: float) -> str:
    return format(float(value), ".17g")


def report_fields(r: EnhanceReport) -> list[tuple[str, str]]:
    """Scalar report entries as ``(key, rendered value)`` in report order."""
    reals = r.nodes.as_tuple() + r.targets.as_tuple() + (r.gamma, r.alpha1, r.alpha2)
    fields = [(k, format_real(v)) for k, v in zip(REPORT_KEYS[:11], reals)]
    fields.append(("iterations", str(int(r.iterations_used))))
    fields.append(("converged", "true" if r.converged else "false"))
    fields.append(("cycle_detected", "true" if r.cycle_detected else "false"))
    return fields


def report_serialize(r: EnhanceReport, include_histograms: bool = True) -> bytes:
    """Render the report as a JSON object with a fixed key order.

    Reals are printed with 17 significant digits so they parse back to the
    same binary64 value.
    """
    parts = [f'"{k}": {v}' for k, v in report_fields(r)]
    if include_histograms:
        for key, h in (("histogram_before", r.histogram_before), ("histogram_after", r.histogram_after)):
            if h is not None:
                parts.append(f'"{key}": [' + ", ".join(map(str, h.bins.tolist())) + "]")
    return ("{\n  " + ",\n  ".join(parts) + "\n}\n").encode("utf-8")


def report_parse(data: bytes) -> EnhanceReport:
    obj = json.loads(data)
    hists = {}
    for key in ("histogram_before", "histogram_after"):
        hists[key] = Histogram.from_bins(obj[key]) if key in obj else None
    return EnhanceReport(
        nodes=NodeSet(*(float(obj[k]) for k in ("x1", "c1", "c2", "x2"))),
        targets=TargetLevels(*(float(obj[k]) for k in ("g1", "gc1", "gc2", "g2"))),
        gamma=float(obj["gamma"]),
        alpha1=float(obj["alpha1"]),
        alpha2=float(obj["alpha2"]),
        iterations_used=int(obj["iterations"]),
        converged=bool(obj["converged"]),
        cycle_detected=bool(obj["cycle_detected"]),
        **hists,
    )
