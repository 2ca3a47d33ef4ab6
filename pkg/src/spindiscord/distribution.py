"""Distribution of the conditional entropy over measurement bases.

For a fixed two-qubit X state, the conditional entropy C(theta, phi) varies
with the measured basis.  This module aggregates its values into a histogram
P(C) and moments under a choice of sampling scheme:

  * UniformSphere: seeded Monte Carlo with cos(theta) uniform on [-1, 1],
    the proper solid-angle measure dOmega/(4 pi).
  * GaussGrid: Gauss-Legendre nodes in cos(theta) times a uniform phi grid,
    a deterministic quadrature of the same solid-angle measure.
  * AngleGrid: equal-weight uniform grid in (theta, phi) itself.  This is a
    different measure: relative to the sphere it oversamples the poles by
    1/sin(theta).  For zero-magnetization pair states, whose C depends on
    theta alone and is monotone in cos^2(theta), the solid-angle density of
    C has a single integrable divergence at the equator value, so histograms
    under the first two schemes are single-peaked; the angle-uniform measure
    adds a second divergence at the pole value and can therefore produce the
    twin-peaked histograms seen in coarse-grained basis surveys.

Moments, extrema, and the histogram are all computed from the raw weighted
values; bins exist only for presentation and peak counting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .xstate import XState, conditional_entropy_values
from .correlators import two_site_rdm
from .spinchain import ground_state

__all__ = [
    "UniformSphere",
    "GaussGrid",
    "AngleGrid",
    "EntropyHistogram",
    "MomentsByAnisotropy",
    "sample_distribution",
    "find_peaks",
    "moments_vs_delta",
]

_CHUNK = 1 << 18


@dataclass(frozen=True)
class UniformSphere:
    """Seeded Monte Carlo over the solid-angle measure."""

    n_samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if self.n_samples < 1000:
            raise ValueError(f"n_samples {self.n_samples} below minimum 1000")

    def _chunks(self):
        rng = np.random.default_rng(self.seed)
        weight = 1.0 / self.n_samples
        remaining = self.n_samples
        while remaining > 0:
            m = min(remaining, _CHUNK)
            cos_theta = rng.uniform(-1.0, 1.0, m)
            phi = rng.uniform(0.0, 2.0 * math.pi, m)
            yield np.arccos(cos_theta), phi, np.full(m, weight)
            remaining -= m


@dataclass(frozen=True)
class GaussGrid:
    """Gauss-Legendre quadrature in cos(theta) times a uniform phi grid."""

    n_theta: int = 256
    n_phi: int = 256

    def __post_init__(self):
        if self.n_theta < 2 or self.n_phi < 2:
            raise ValueError("grid needs at least 2 nodes per axis")
        if self.n_theta * self.n_phi < 1000:
            raise ValueError(
                f"grid of {self.n_theta}x{self.n_phi} points is below the "
                "1000-point minimum"
            )

    def _chunks(self):
        nodes, weights = np.polynomial.legendre.leggauss(self.n_theta)
        theta = np.arccos(nodes)
        phi = (np.arange(self.n_phi) + 0.5) * (2.0 * math.pi / self.n_phi)
        rows = max(1, _CHUNK // self.n_phi)
        for start in range(0, self.n_theta, rows):
            th = theta[start : start + rows]
            wt = weights[start : start + rows] / (2.0 * self.n_phi)
            yield (
                np.repeat(th, self.n_phi),
                np.tile(phi, len(th)),
                np.repeat(wt, self.n_phi),
            )


@dataclass(frozen=True)
class AngleGrid:
    """Equal-weight uniform grid in the angles (theta, phi) themselves."""

    n_theta: int = 8193
    n_phi: int = 256

    def __post_init__(self):
        if self.n_theta < 2 or self.n_phi < 2:
            raise ValueError("grid needs at least 2 nodes per axis")
        if self.n_theta * self.n_phi < 1000:
            raise ValueError(
                f"grid of {self.n_theta}x{self.n_phi} points is below the "
                "1000-point minimum"
            )

    def _chunks(self):
        theta = np.linspace(0.0, math.pi, self.n_theta)
        phi = np.arange(self.n_phi) * (2.0 * math.pi / self.n_phi)
        weight = 1.0 / (self.n_theta * self.n_phi)
        rows = max(1, _CHUNK // self.n_phi)
        for start in range(0, self.n_theta, rows):
            th = theta[start : start + rows]
            yield (
                np.repeat(th, self.n_phi),
                np.tile(phi, len(th)),
                np.full(len(th) * self.n_phi, weight),
            )


@dataclass(frozen=True)
class EntropyHistogram:
    """Binned P(C) plus moments and extrema from the raw weighted values."""

    bin_width: float
    bins: Dict[int, float]
    mean: float
    variance: float
    min_c: float
    max_c: float
    scheme: object
    n_samples: int

    def __post_init__(self):
        total = sum(self.bins.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"histogram mass {total!r} does not sum to 1")
        if not self.min_c - 1e-12 <= self.mean <= self.max_c + 1e-12:
            raise ValueError(
                f"mean {self.mean!r} outside [{self.min_c!r}, {self.max_c!r}]"
            )
        if self.variance < 0.0:
            raise ValueError(f"variance {self.variance!r} negative")


@dataclass(frozen=True)
class MomentsByAnisotropy:
    """Conditional-entropy moments of the pair (1, 1+r) at one anisotropy."""

    delta: float
    r: int
    mean_c: float
    var_c: float
    min_c: float
    max_c: float


def sample_distribution(state: XState, scheme, bin_width: float = 0.005) -> EntropyHistogram:
    """Histogram and moments of C(theta, phi) under the given scheme."""
    if not 0.0 < bin_width <= 1.0:
        raise ValueError(f"bin_width {bin_width!r} outside (0, 1]")
    if not hasattr(scheme, "_chunks"):
        raise ValueError(f"unknown sampling scheme {scheme!r}")
    n_bins = int(math.ceil(1.0 / bin_width)) + 1
    dense = np.zeros(n_bins)
    s1 = 0.0
    s2 = 0.0
    lo = math.inf
    hi = -math.inf
    total = 0
    for theta, phi, w in scheme._chunks():
        values = np.maximum(conditional_entropy_values(state, theta, phi), 0.0)
        idx = np.minimum((values / bin_width).astype(np.int64), n_bins - 1)
        dense += np.bincount(idx, weights=w, minlength=n_bins)
        s1 += float(np.sum(w * values))
        s2 += float(np.sum(w * values * values))
        lo = min(lo, float(values.min()))
        hi = max(hi, float(values.max()))
        total += len(values)
    return EntropyHistogram(
        bin_width=bin_width,
        bins={int(i): float(m) for i, m in enumerate(dense) if m > 0.0},
        mean=s1,
        variance=max(s2 - s1 * s1, 0.0),
        min_c=lo,
        max_c=hi,
        scheme=scheme,
        n_samples=total,
    )


def find_peaks(histogram: EntropyHistogram, min_separation: int = 5) -> list:
    """Bin indices that strictly dominate every bin closer than min_separation.

    Missing bins count as zero mass, so two reported peaks are always at
    least min_separation bins apart.
    """
    if min_separation < 1:
        raise ValueError(f"min_separation {min_separation} must be >= 1")
    bins = histogram.bins
    if not bins:
        return []
    window = min_separation - 1
    peaks = []
    for i, mass in bins.items():
        neighbors = (
            bins.get(j, 0.0)
            for j in range(i - window, i + window + 1)
            if j != i
        )
        if all(mass > other for other in neighbors):
            peaks.append(i)
    return sorted(peaks)


def moments_vs_delta(
    n_sites: int,
    deltas,
    rs,
    scheme=None,
    *,
    bin_width: float = 0.005,
    tol: float = 1e-12,
    seed: int = 0,
    cache_dir=None,
) -> list:
    """Conditional-entropy moment table over (delta, r).

    Anisotropies at or below −1 use the analytic pair state of the polarized
    mixture (diagonal, u = v = 1/2) instead of a solver call.
    """
    if scheme is None:
        scheme = GaussGrid()
    for r in rs:
        if not 1 <= r <= n_sites - 1:
            raise ValueError(f"separation {r} outside [1, {n_sites - 1}]")
    rows = []
    for delta in deltas:
        if delta <= -1.0:
            hist = sample_distribution(
                XState(u=0.5, v=0.5, w1=0.0, w2=0.0), scheme, bin_width
            )
            rows.extend(
                MomentsByAnisotropy(
                    float(delta), r, hist.mean, hist.variance, hist.min_c, hist.max_c
                )
                for r in rs
            )
            continue
        gs = ground_state(n_sites, float(delta), tol=tol, seed=seed, cache_dir=cache_dir)
        for r in rs:
            hist = sample_distribution(two_site_rdm(gs, 1, 1 + r), scheme, bin_width)
            rows.append(
                MomentsByAnisotropy(
                    float(delta), r, hist.mean, hist.variance, hist.min_c, hist.max_c
                )
            )
    return rows
