"""Phenomenological critical scaling of pair correlators and discord.

Near a continuous transition at reduced temperature t = 1 the correlation
length either diverges as a power law, xi0*|1-t|^(-nu), or with the essential
singularity exp(pi/sqrt(t-1)) of a Kosterlitz-Thouless transition (defined
for t > 1 only).  Two model correlators follow:

  * well-separated pair:   gamma_far(t) = exp(-r/xi(t))/r,
  * nearest neighbors:     gamma_nn(t)  = gamma_c - (gamma_c - gamma_0)|1-t|^(1-alpha),

with gamma_c the critical-point value and gamma_0 the t = 0 value.  Discord
along the curve is the isotropic closed form evaluated at the (negative,
antiferromagnetic-sign) correlator and normalized by its t = 1 value, which
produces a peak of height 1 at the critical point with a kink: the one-sided
slopes diverge because of the |1-t|^(1-alpha) and |1-t|^nu cusps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .correlators import discord_isotropic

__all__ = [
    "ScalingForm",
    "PairKind",
    "ScalingParams",
    "ScalingDomainError",
    "NormalizedDiscordPoint",
    "correlation_length",
    "gamma_far",
    "gamma_nn",
    "normalized_discord_curve",
]


class ScalingForm(Enum):
    POWER_LAW = "power_law"
    KOSTERLITZ_THOULESS = "kosterlitz_thouless"


class PairKind(Enum):
    NN = "nn"
    FAR = "far"


class ScalingDomainError(ValueError):
    """Raised for reduced temperatures outside a form's validity domain."""


@dataclass(frozen=True)
class ScalingParams:
    """Exponents, amplitudes, and reference correlator values."""

    alpha: float = 0.1
    nu: float = 0.6
    xi0: float = 4.0
    r: int = 20
    form: ScalingForm = ScalingForm.POWER_LAW
    gamma_c: float = -0.25
    gamma_0: float = -1.0 / 6.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha {self.alpha!r} outside (0, 1)")
        if not self.nu > 0.0:
            raise ValueError(f"nu {self.nu!r} must be positive")
        if not self.xi0 > 0.0:
            raise ValueError(f"xi0 {self.xi0!r} must be positive")
        if self.r < 1:
            raise ValueError(f"separation r {self.r!r} must be >= 1")


def correlation_length(params: ScalingParams, t: float) -> float:
    """xi(t); +inf at t = 1 for the power law (documented sentinel)."""
    if params.form is ScalingForm.KOSTERLITZ_THOULESS:
        if t <= 1.0:
            raise ScalingDomainError(
                f"Kosterlitz-Thouless correlation length defined for t > 1, got {t!r}"
            )
        return math.exp(math.pi / math.sqrt(t - 1.0))
    if t == 1.0:
        return math.inf
    return params.xi0 * abs(1.0 - t) ** (-params.nu)


def gamma_far(params: ScalingParams, t: float) -> float:
    """Large-separation correlator magnitude exp(-r/xi)/r; 1/r at t = 1."""
    xi = correlation_length(params, t)
    return math.exp(-params.r / xi) / params.r


def gamma_nn(params: ScalingParams, t: float) -> float:
    """Nearest-neighbor correlator gamma_c - (gamma_c - gamma_0)|1-t|^(1-alpha)."""
    if not 0.0 <= t <= 2.0:
        raise ScalingDomainError(f"t {t!r} outside the model window [0, 2]")
    return params.gamma_c - (params.gamma_c - params.gamma_0) * abs(1.0 - t) ** (
        1.0 - params.alpha
    )


@dataclass(frozen=True)
class NormalizedDiscordPoint:
    t: float
    value: float


def normalized_discord_curve(params: ScalingParams, ts, pair: PairKind) -> list:
    """Discord along the model correlator, normalized to its t = 1 value.

    The far pair feeds -gamma_far into the isotropic closed form (the
    reference correlator is antiferromagnetic, hence negative); normalization
    uses the t = 1 limits gamma_c and -1/r, so the curve equals 1.0 exactly
    at the critical point.
    """
    if pair is PairKind.FAR:
        gamma_at = lambda t: -gamma_far(params, t)
        reference = discord_isotropic(-1.0 / params.r)
    elif pair is PairKind.NN:
        gamma_at = lambda t: gamma_nn(params, t)
        reference = discord_isotropic(params.gamma_c)
    else:
        raise ValueError(f"unknown pair kind {pair!r}")
    return [
        NormalizedDiscordPoint(float(t), discord_isotropic(gamma_at(float(t))) / reference)
        for t in ts
    ]
