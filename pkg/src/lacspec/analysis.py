"""Line-shape analysis of computed spectra: dips, depths and line centers."""

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .spectrum import Spectrum


@dataclass(frozen=True)
class Dip:
    """One resolved dip (local minimum) of a spectrum."""

    field_gauss: float
    value: float
    prominence: float
    index: int


def find_dips(
    spec: Spectrum,
    prominence: float,
    min_separation_gauss: float = 0.0,
    window: tuple[float, float] | None = None,
) -> list[Dip]:
    """Resolved dips of a spectrum, by prominence of the inverted trace.

    Args:
        spec: Input spectrum.
        prominence: Minimum dip prominence (population units).
        min_separation_gauss: Merge minima closer than this (keep the deeper).
        window: Optional (b_lo, b_hi) restriction in Gauss.

    Returns:
        Dips sorted by field.
    """
    fields, values = spec.fields, spec.values
    if window is not None:
        mask = (fields >= window[0]) & (fields <= window[1])
        fields, values = fields[mask], values[mask]
        offset = int(np.argmax(mask))
    else:
        offset = 0
    if fields.size < 3:
        return []
    spacing = float(np.median(np.diff(fields)))
    distance = max(1, int(round(min_separation_gauss / spacing))) if min_separation_gauss else 1
    idx, props = find_peaks(-values, prominence=prominence, distance=distance)
    return [
        Dip(
            field_gauss=float(fields[i]),
            value=float(values[i]),
            prominence=float(p),
            index=int(i + offset),
        )
        for i, p in zip(idx, props["prominences"])
    ]


def line_depth(
    spec: Spectrum, b_lo: float, b_hi: float, baseline: str = "edges"
) -> float:
    """Depth of the deepest feature inside a window, relative to a baseline.

    Args:
        spec: Input spectrum.
        b_lo, b_hi: Window in Gauss.
        baseline: "edges" interpolates linearly between the window edges;
            "max" uses the window maximum.

    Returns:
        Baseline minus the window minimum (>= 0 for a dip).
    """
    mask = (spec.fields >= b_lo) & (spec.fields <= b_hi)
    if not np.any(mask):
        raise ValueError(f"window [{b_lo}, {b_hi}] G contains no grid points")
    f = spec.fields[mask]
    v = spec.values[mask]
    k = int(np.argmin(v))
    if baseline == "edges":
        frac = (f[k] - f[0]) / (f[-1] - f[0]) if f[-1] > f[0] else 0.0
        base = v[0] + frac * (v[-1] - v[0])
    elif baseline == "max":
        base = float(v.max())
    else:
        raise ValueError(f"unknown baseline mode {baseline!r}")
    return float(base - v[k])


def smooth_residual(spec: Spectrum, window_gauss: float) -> np.ndarray:
    """Deviation of a spectrum from its moving-average trend.

    Used to verify that a spectrum is featureless: for a smooth monotone
    curve the residual stays at the level of the trend curvature bias.
    """
    spacing = float(np.median(np.diff(spec.fields)))
    half = max(1, int(round(window_gauss / spacing / 2)))
    kernel = np.ones(2 * half + 1) / (2 * half + 1)
    padded = np.pad(spec.values, half, mode="reflect")
    trend = np.convolve(padded, kernel, mode="valid")
    return spec.values - trend
