"""Two-site reduced density matrices and discord profiles of ring ground states.

For a ring ground state with fixed total S^z, the reduced state of any site
pair (i, j) is an X state whose entries are set by three expectation values:

    gamma_d = <s^z_i s^z_j>,   gamma_o = <s^+_i s^-_j>,   m^z = <s^z_i>,

via u/v = 1/4 + gamma_d ± (mz_i+mz_j)/2, w1/w2 = 1/4 − gamma_d ± (mz_i−mz_j)/2,
x = gamma_o, y = 0.  In the zero-magnetization sector the pair state is
symmetric (u = v, w1 = w2) and its discord reduces to a closed form in
gamma_d and the ratio k = gamma_o/gamma_d: with Gamma = gamma_d the joint
eigenvalues are {1/4+Gamma (twice), 1/4+(k−1)Gamma, 1/4−(k+1)Gamma} and

    D = 1 − S_joint + min(H(1/2 + 2 Gamma), H(1/2 + k Gamma)),

the first argument winning for k below 2 and the second above.  The module
computes the correlators directly from sector amplitudes, reconstructs pair
states, evaluates the closed forms, and sweeps discord over separation and
over the anisotropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .spinchain import GroundState, ground_state
from .xstate import OptimalTheta, XState, binary_entropy, c00, c90, discord

__all__ = [
    "PairCorrelations",
    "KRatio",
    "DiscordByDistance",
    "DiscordByAnisotropy",
    "AsymptoticCheck",
    "UndefinedRatioError",
    "CorrelatorDomainError",
    "two_site_rdm",
    "pair_correlations",
    "k_ratio",
    "discord_profile_vs_r",
    "discord_profile_vs_delta",
    "discord_symmetric",
    "discord_isotropic",
    "asymptotic_discord_check",
]

_LN2 = math.log(2.0)


class UndefinedRatioError(ValueError):
    """Raised when gamma_o/gamma_d is requested with vanishing gamma_d."""


class CorrelatorDomainError(ValueError):
    """Raised when (gamma_d, k) imply a negative pair-state eigenvalue."""


@dataclass(frozen=True)
class PairCorrelations:
    """Raw pair expectation values at ring distance r."""

    r: int
    gamma_d: float
    gamma_o: complex
    y_corr: complex
    mz_i: float
    mz_j: float

    def __post_init__(self):
        if abs(self.gamma_d) > 0.25 + 1e-9:
            raise ValueError(f"gamma_d {self.gamma_d!r} outside [-1/4, 1/4]")


@dataclass(frozen=True)
class KRatio:
    """Off-diagonal to diagonal correlator ratio k = gamma_o/gamma_d."""

    r: int
    k: float


@dataclass(frozen=True)
class DiscordByDistance:
    """Pipeline discord at separation r plus applicable closed forms."""

    r: int
    discord: float
    symmetric_closed_form: Optional[float]
    isotropic_closed_form: Optional[float]


@dataclass(frozen=True)
class DiscordByAnisotropy:
    """One (delta, r) row of a discord sweep over the anisotropy."""

    delta: float
    r: int
    discord: float
    k: float
    chosen_theta: OptimalTheta


class AsymptoticCheck(NamedTuple):
    exact: float
    leading: float


def _site_bits(gs: GroundState, site: int) -> np.ndarray:
    return ((gs.basis.states >> np.uint64(site - 1)) & np.uint64(1)).astype(np.int64)


def _flip_sum(gs: GroundState, select: np.ndarray, flip: int) -> float:
    """Sum of amp(c ^ flip) * amp(c) over selected configs c.

    Configurations whose flipped partner falls outside the sector contribute
    nothing (the operator maps them out of the conserved-S^z space).
    """
    states = gs.basis.states
    amps = gs.amplitudes
    src = np.nonzero(select)[0]
    if src.size == 0:
        return 0.0
    targets = states[src] ^ np.uint64(flip)
    pos = np.minimum(np.searchsorted(states, targets), gs.basis.dim - 1)
    found = states[pos] == targets
    return float(np.sum(amps[pos[found]] * amps[src[found]]))


def _check_pair(gs: GroundState, i: int, j: int) -> None:
    n = gs.basis.n_sites
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"sites ({i}, {j}) outside ring [1, {n}]")
    if i == j:
        raise ValueError(f"pair sites must differ, got ({i}, {j})")


def _ring_distance(n: int, i: int, j: int) -> int:
    d = abs(i - j) % n
    return min(d, n - d)


def two_site_rdm(gs: GroundState, i: int, j: int) -> XState:
    """Reduced density matrix of ring sites (i, j); site i is the first qubit.

    Qubit value 0 is spin up.  Assembled by grouping |amplitude|^2 by the four
    local (i, j) configurations and accumulating the flip-flop cross terms.
    """
    _check_pair(gs, i, j)
    bi = _site_bits(gs, i)
    bj = _site_bits(gs, j)
    weights = gs.amplitudes * gs.amplitudes
    # qubit index: 0 = up (bit 1), so |00> collects both-up configurations
    occ = np.bincount(2 * (1 - bi) + (1 - bj), weights=weights, minlength=4)
    flip = (1 << (i - 1)) | (1 << (j - 1))
    x = _flip_sum(gs, (bi == 0) & (bj == 1), flip)
    y = _flip_sum(gs, (bi == 0) & (bj == 0), flip)
    return XState(u=occ[0], v=occ[3], w1=occ[1], w2=occ[2], x=x, y=y)


def pair_correlations(gs: GroundState, i: int, j: int) -> PairCorrelations:
    """Pair expectation values computed directly from the amplitudes."""
    _check_pair(gs, i, j)
    bi = _site_bits(gs, i)
    bj = _site_bits(gs, j)
    weights = gs.amplitudes * gs.amplitudes
    zi = bi - 0.5
    zj = bj - 0.5
    flip = (1 << (i - 1)) | (1 << (j - 1))
    return PairCorrelations(
        r=_ring_distance(gs.basis.n_sites, i, j),
        gamma_d=float(np.sum(weights * zi * zj)),
        gamma_o=complex(_flip_sum(gs, (bi == 0) & (bj == 1), flip)),
        y_corr=complex(_flip_sum(gs, (bi == 0) & (bj == 0), flip)),
        mz_i=float(np.sum(weights * zi)),
        mz_j=float(np.sum(weights * zj)),
    )


def k_ratio(gs: GroundState, r: int) -> KRatio:
    """Correlator ratio k = gamma_o/gamma_d for the pair (1, 1+r)."""
    n = gs.basis.n_sites
    if not 1 <= r <= n - 1:
        raise ValueError(f"separation {r} outside [1, {n - 1}]")
    corr = pair_correlations(gs, 1, 1 + r)
    if abs(corr.gamma_d) < 1e-14:
        raise UndefinedRatioError(
            f"gamma_d(r={r}) = {corr.gamma_d!r} vanishes; k is undefined"
        )
    return KRatio(r=corr.r, k=corr.gamma_o.real / corr.gamma_d)


def _symmetric_eigenvalues(gamma_d: float, k: float) -> list:
    g = gamma_d
    return [0.25 + g, 0.25 + g, 0.25 + (k - 1.0) * g, 0.25 - (k + 1.0) * g]


def discord_symmetric(gamma_d: float, k: float) -> float:
    """Closed-form discord of the symmetric pair state (u = v, w1 = w2).

    The state has x = k*gamma_d, zero local magnetization, and maximally mixed
    marginals, so D = 1 − S_joint + min over the two candidate bases.
    """
    eigs = _symmetric_eigenvalues(gamma_d, k)
    if min(eigs) < -1e-12:
        raise CorrelatorDomainError(
            f"eigenvalues {eigs} of the symmetric pair state are negative for "
            f"gamma_d={gamma_d!r}, k={k!r}; gamma_d must stay within "
            "[-1/(4(k-1)), 1/(4(k+1))] for k > 1"
        )
    lam = np.clip(eigs, 0.0, 1.0)
    s_joint = float(-np.sum(lam[lam > 0] * np.log2(lam[lam > 0])))
    c_zero = binary_entropy(min(max(0.5 + 2.0 * gamma_d, 0.0), 1.0))
    c_ninety = binary_entropy(min(max(0.5 + k * gamma_d, 0.0), 1.0))
    return 1.0 - s_joint + min(c_zero, c_ninety)


def discord_isotropic(gamma_d: float) -> float:
    """Closed-form discord at the isotropic point, where k = 2."""
    return discord_symmetric(gamma_d, 2.0)


def asymptotic_discord_check(gamma_d: float, k: float) -> AsymptoticCheck:
    """Exact closed-form discord next to its small-gamma_d quadratic law.

    The leading term is 2(k^2+4) gamma_d^2 / ln 2 (natural logarithm in the
    denominator; the binary entropies supply the 1/ln 2 when expanded).
    """
    exact = discord_symmetric(gamma_d, k)
    leading = 2.0 * (k * k + 4.0) * gamma_d * gamma_d / _LN2
    return AsymptoticCheck(exact=exact, leading=leading)


def discord_profile_vs_r(gs: GroundState) -> list:
    """Discord of pairs (1, 1+r) for r = 1..N/2, with closed-form companions.

    The symmetric closed form applies whenever k is defined; the isotropic
    one is attached only where the measured k is 2 (the isotropic point).
    """
    rows = []
    for r in range(1, gs.basis.n_sites // 2 + 1):
        state = two_site_rdm(gs, 1, 1 + r)
        corr = pair_correlations(gs, 1, 1 + r)
        symmetric = None
        isotropic = None
        if abs(corr.gamma_d) >= 1e-14:
            k = corr.gamma_o.real / corr.gamma_d
            try:
                symmetric = discord_symmetric(corr.gamma_d, k)
            except CorrelatorDomainError:
                symmetric = None
            if abs(k - 2.0) < 1e-6:
                isotropic = discord_isotropic(corr.gamma_d)
        rows.append(
            DiscordByDistance(
                r=r,
                discord=discord(state).discord,
                symmetric_closed_form=symmetric,
                isotropic_closed_form=isotropic,
            )
        )
    return rows


def discord_profile_vs_delta(
    n_sites: int,
    deltas,
    rs,
    *,
    tol: float = 1e-12,
    seed: int = 0,
    cache_dir=None,
) -> list:
    """Discord table over (delta, r).

    Anisotropies at or below −1 are filled analytically: the ground state is
    the symmetric mixture of the two fully polarized states, whose pair state
    is classical, so discord is 0, k is 0, and the optimal basis is theta=0.
    """
    for r in rs:
        if not 1 <= r <= n_sites - 1:
            raise ValueError(f"separation {r} outside [1, {n_sites - 1}]")
    rows = []
    for delta in deltas:
        if delta <= -1.0:
            rows.extend(
                DiscordByAnisotropy(float(delta), r, 0.0, 0.0, OptimalTheta.ZERO)
                for r in rs
            )
            continue
        gs = ground_state(n_sites, float(delta), tol=tol, seed=seed, cache_dir=cache_dir)
        for r in rs:
            result = discord(two_site_rdm(gs, 1, 1 + r))
            try:
                k = k_ratio(gs, r).k
            except UndefinedRatioError:
                k = math.nan
            rows.append(
                DiscordByAnisotropy(
                    float(delta), r, result.discord, k, result.chosen_theta
                )
            )
    return rows
