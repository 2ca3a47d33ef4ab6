"""Quantum discord of two-qubit X states from closed-form conditional entropies.

An X state in the product basis |00⟩, |01⟩, |10⟩, |11⟩ has the matrix

        ⎛ u    0    0    y̅ ⎞
    ρ = ⎜ 0    w1   x̅    0 ⎟        u + v + w1 + w2 = 1,  ρ ⪰ 0,
        ⎜ 0    x    w2   0 ⎟        |x|² ≤ w1·w2,  |y|² ≤ u·v.
        ⎝ y    0    0    v ⎠

Measuring qubit B in the basis |0̃⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩ leaves
qubit A in a conditional state whose eigenvalues are

    λ±(k̃) = [ p_k̃ ± sqrt(b_k̃² + 4|z|²) ] / (2 p_k̃),
    z      = cos(θ/2) sin(θ/2) (x e^{iφ} + y e^{-iφ}),

with outcome probabilities p_0̃, p_1̃ and diagonal splittings b_0̃, b_1̃ given
below.  The measurement-conditioned entropy C_{θ,φ} = Σ_k̃ p_k̃ S(ρ_{A|B_k̃})
attains its minimum over (θ, φ) at θ = 0 or at θ = π/2 with an optimal φ*,
which yields the discord

    D(A:B) = min(C_{0,0}, C_{90,φ*}) − S(ρ_AB) + S(ρ_B).

`discord_grid_verify` checks that two-angle minimum against a brute-force
grid over the full measurement sphere.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

__all__ = [
    "XState",
    "MeasurementBasis",
    "OptimalTheta",
    "DiscordResult",
    "C90Result",
    "GridVerifyReport",
    "binary_entropy",
    "joint_eigenvalues",
    "conditional_entropy",
    "conditional_entropy_values",
    "c00",
    "c90",
    "discord",
    "discord_grid_verify",
    "pure_state_discord",
    "random_xstate",
]

# Probabilities within this distance of the valid range are clamped, not rejected.
_CLAMP = 1e-12


def binary_entropy(p: float) -> float:
    """H(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.

    Accepts p within 1e-12 outside [0, 1] (clamped); otherwise raises ValueError.
    """
    if not -_CLAMP <= p <= 1.0 + _CLAMP:
        raise ValueError(f"binary_entropy argument {p!r} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _h2(p):
    """Vectorized binary entropy; input is clipped to [0, 1]."""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
        out -= np.where(q > 0.0, q * np.log2(np.where(q > 0.0, q, 1.0)), 0.0)
    return out


def _entropy_of(eigs) -> float:
    """Shannon entropy (base 2) of a probability vector; zeros contribute 0."""
    total = 0.0
    for lam in eigs:
        lam = float(lam)
        if lam > 0.0:
            total -= lam * math.log2(lam)
    return total


@dataclass(frozen=True)
class XState:
    """Two-qubit X-state weights; validated on construction.

    u, v, w1, w2 are the diagonal occupations of |00⟩, |11⟩, |01⟩, |10⟩.
    x sits at ⟨10|ρ|01⟩ and y at ⟨11|ρ|00⟩.
    """

    u: float
    v: float
    w1: float
    w2: float
    x: complex = 0.0
    y: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "u", float(self.u))
        object.__setattr__(self, "v", float(self.v))
        object.__setattr__(self, "w1", float(self.w1))
        object.__setattr__(self, "w2", float(self.w2))
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        trace = self.u + self.v + self.w1 + self.w2
        if abs(trace - 1.0) > 1e-12:
            raise ValueError(f"X-state trace {trace!r} is not 1")
        for name in ("u", "v", "w1", "w2"):
            if getattr(self, name) < -_CLAMP:
                raise ValueError(f"negative occupation {name}={getattr(self, name)!r}")
        if min(joint_eigenvalues(self)) < -1e-9:
            raise ValueError("X-state matrix is not positive semidefinite")

    def matrix(self) -> np.ndarray:
        """Dense 4x4 matrix in the |00⟩,|01⟩,|10⟩,|11⟩ basis."""
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.u, self.w1, self.w2, self.v
        m[2, 1], m[1, 2] = self.x, np.conj(self.x)
        m[3, 0], m[0, 3] = self.y, np.conj(self.y)
        return m


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective qubit basis |0̃⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi + _CLAMP:
            raise ValueError(f"theta {self.theta!r} outside [0, pi]")
        if not 0.0 <= self.phi < 2.0 * math.pi + _CLAMP:
            raise ValueError(f"phi {self.phi!r} outside [0, 2*pi)")


class OptimalTheta(Enum):
    """Which of the two candidate measurement angles attains the minimum."""

    ZERO = "zero"
    NINETY = "ninety"


class C90Result(NamedTuple):
    value: float
    phi_star: float


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    c00: float
    c90: float
    phi_star: float
    chosen_theta: OptimalTheta
    s_joint: float
    s_b: float


@dataclass(frozen=True)
class GridVerifyReport:
    grid_min: float
    closed_form_min: float
    argmin: MeasurementBasis
    discrepancy: float


def joint_eigenvalues(state: XState) -> np.ndarray:
    """Eigenvalues of ρ_AB: the X structure splits into two 2x2 blocks."""
    outer = math.hypot(state.u - state.v, 2.0 * abs(state.y))
    inner = math.hypot(state.w1 - state.w2, 2.0 * abs(state.x))
    return np.array(
        [
            (state.u + state.v + outer) / 2.0,
            (state.u + state.v - outer) / 2.0,
            (state.w1 + state.w2 + inner) / 2.0,
            (state.w1 + state.w2 - inner) / 2.0,
        ]
    )


def conditional_entropy_values(state: XState, theta, phi) -> np.ndarray:
    """C_{θ,φ} evaluated elementwise over broadcast angle arrays (radians).

    Angles are unrestricted; the expression is 2π-periodic and symmetric
    under θ → θ + π (the measurement pair {|0̃⟩, |1̃⟩} is unchanged).
    A zero-probability branch contributes zero.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    a2 = np.cos(theta / 2.0) ** 2
    b2 = np.sin(theta / 2.0) ** 2
    ab = np.cos(theta / 2.0) * np.sin(theta / 2.0)
    zmag2 = ab * ab * np.abs(state.x * np.exp(1j * phi) + state.y * np.exp(-1j * phi)) ** 2

    d0 = state.u + state.w2   # P(B=0) weight entering outcome probabilities
    d1 = state.w1 + state.v
    e0 = state.u - state.w2
    e1 = state.w1 - state.v

    out = np.zeros(np.broadcast(theta, phi, zmag2).shape)
    for pk, bk in (
        (a2 * d0 + b2 * d1, a2 * e0 + b2 * e1),
        (b2 * d0 + a2 * d1, b2 * e0 + a2 * e1),
    ):
        root = np.sqrt(bk * bk + 4.0 * zmag2)
        safe = np.where(pk > _CLAMP, pk, 1.0)
        lam = np.clip((safe + root) / (2.0 * safe), 0.0, 1.0)
        out += np.where(pk > _CLAMP, pk * _h2(lam), 0.0)
    return out


def conditional_entropy(state: XState, theta: float, phi: float) -> float:
    """Measurement-conditioned entropy C_{θ,φ} for one basis direction."""
    return float(conditional_entropy_values(state, theta, phi))


def c00(state: XState) -> float:
    """C_{θ=0}: measuring B along the computational axis.

    Equals (u+w2) H(u/(u+w2)) + (v+w1) H(v/(v+w1)); empty branches contribute 0.
    """
    out = 0.0
    if state.u + state.w2 > _CLAMP:
        out += (state.u + state.w2) * binary_entropy(state.u / (state.u + state.w2))
    if state.v + state.w1 > _CLAMP:
        out += (state.v + state.w1) * binary_entropy(state.v / (state.v + state.w1))
    return out


def c90(state: XState) -> C90Result:
    """C_{θ=π/2, φ*}: equatorial measurement at the optimal azimuth.

    |z| is maximal where tan(2φ) = -Im(x y̅)/Re(x y̅); of the two branches a
    quarter turn apart, the one maximizing |x e^{iφ} + y e^{-iφ}| minimizes C.
    With either amplitude zero the value is φ-independent and φ* = 0.
    """
    x, y = state.x, state.y
    if abs(x) < _CLAMP or abs(y) < _CLAMP:
        phi_star = 0.0
        amp = abs(x) + abs(y)
    else:
        base = -cmath.phase(x * y.conjugate()) / 2.0
        candidates = [base, base + math.pi / 2.0]
        amps = [abs(x * cmath.exp(1j * f) + y * cmath.exp(-1j * f)) for f in candidates]
        pick = int(np.argmax(amps))
        phi_star = candidates[pick] % math.pi
        amp = amps[pick]
    gap = state.u - state.v + state.w1 - state.w2
    lam = (1.0 + math.hypot(gap, 2.0 * amp)) / 2.0
    return C90Result(binary_entropy(min(lam, 1.0)), phi_star)


def discord(state: XState) -> DiscordResult:
    """Quantum discord D(A:B) = min(C_00, C_90) − S(ρ_AB) + S(ρ_B).

    Ties between the two candidate angles resolve to θ = 0.
    """
    c_zero = c00(state)
    c_ninety, phi_star = c90(state)
    s_joint = _entropy_of(np.clip(joint_eigenvalues(state), 0.0, None))
    s_b = binary_entropy(state.u + state.w2)
    if c_zero <= c_ninety:
        chosen, c_min = OptimalTheta.ZERO, c_zero
    else:
        chosen, c_min = OptimalTheta.NINETY, c_ninety
    return DiscordResult(
        discord=c_min - s_joint + s_b,
        c00=c_zero,
        c90=c_ninety,
        phi_star=phi_star,
        chosen_theta=chosen,
        s_joint=s_joint,
        s_b=s_b,
    )


def discord_grid_verify(state: XState, n_theta: int = 181, n_phi: int = 360) -> GridVerifyReport:
    """Brute-force check of the two-angle minimum over a full (θ, φ) grid.

    discrepancy = closed_form_min − grid_min.  A value above the grid
    resolution means the two-angle closed form missed the true optimum.
    Ties in the grid argmin resolve to the lexicographically first (θ, φ).
    """
    if n_theta < 2 or n_phi < 1:
        raise ValueError("grid needs n_theta >= 2 and n_phi >= 1")
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    grid = conditional_entropy_values(state, thetas[:, None], phis[None, :])
    flat = int(np.argmin(grid))
    it, ip = np.unravel_index(flat, grid.shape)
    grid_min = float(grid[it, ip])
    closed = min(c00(state), c90(state).value)
    return GridVerifyReport(
        grid_min=grid_min,
        closed_form_min=closed,
        argmin=MeasurementBasis(float(thetas[it]), float(phis[ip])),
        discrepancy=closed - grid_min,
    )


def pure_state_discord(a: complex, b: complex, c: complex, d: complex):
    """Discord of the pure state a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩.

    The Schmidt weight is p = (1 + sqrt(1 − |2(bc − ad)|²))/2 and the discord
    equals the entanglement entropy H(p).  Returns (p, discord).
    """
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    norm = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"ket norm² {norm!r} is not 1")
    conc = 2.0 * abs(b * c - a * d)
    p = (1.0 + math.sqrt(max(0.0, 1.0 - conc * conc))) / 2.0
    return p, binary_entropy(p)


def random_xstate(rng: np.random.Generator) -> XState:
    """Random valid X state: flat-simplex diagonal, coherences inside the
    positivity disks |x| ≤ sqrt(w1 w2), |y| ≤ sqrt(u v), uniform phases."""
    u, v, w1, w2 = rng.dirichlet(np.ones(4))
    x = math.sqrt(w1 * w2) * rng.uniform() * cmath.exp(2j * math.pi * rng.uniform())
    y = math.sqrt(u * v) * rng.uniform() * cmath.exp(2j * math.pi * rng.uniform())
    return XState(u, v, w1, w2, x, y)
