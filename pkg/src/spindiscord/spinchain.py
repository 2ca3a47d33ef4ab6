"""Exact ground states of the spin-1/2 XXZ Heisenberg ring.

    H = Σ_{i=1}^{N} [ s^x_i s^x_{i+1} + s^y_i s^y_{i+1} + Δ s^z_i s^z_{i+1} ],

with s = σ/2, J = 1 and periodic boundary (site N+1 ≡ 1).  H conserves total
S^z, so the ground state for Δ > −1 is searched in the S^z = 0 sector whose
basis is enumerated by bit patterns with exactly N/2 set bits (bit i−1 holds
site i; a set bit is spin up).  The two Hamiltonian pieces in that basis:

  * diagonal: Δ/4 times (aligned bonds − anti-aligned bonds),
  * flip-flop: matrix element 1/2 between configurations that differ by
    swapping one anti-aligned neighbor pair.

The lowest eigenpair comes from a seeded Lanczos iteration (full
reorthogonalization up to sector dimension 1e5, restarted cycles with
cycle-local reorthogonalization above).  `dense_spectrum_oracle` provides an
independently constructed dense cross-check for small sectors.  Solved ground
states can be persisted in a binary cache keyed by (N, n_up, Δ, tol).
"""

from __future__ import annotations

import itertools
import math
import os
import struct
import zlib
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

__all__ = [
    "SectorBasis",
    "GroundState",
    "FerromagneticRegimeError",
    "ConvergenceError",
    "DegenerateGroundStateError",
    "build_sector",
    "apply_hamiltonian",
    "ground_state",
    "dense_sector_hamiltonian",
    "dense_spectrum_oracle",
    "cache_path",
    "save_ground_state",
    "load_ground_state",
    "load_cached_ground_state",
]

MAX_SITES = 26
# Above this sector dimension the solver reorthogonalizes only within the
# running restart cycle instead of against the full Krylov history.
_FULL_REORTH_LIMIT = 100_000

_CACHE_MAGIC = b"SDKGS1"
_CACHE_HEADER = struct.Struct("<6sIIdddQ")
_CACHE_FOOTER = struct.Struct("<I")
_CACHE_CODE_VERSION = 1


class FerromagneticRegimeError(ValueError):
    """Raised for Δ ≤ −1, where the ground state leaves the S^z = 0 sector."""


class ConvergenceError(RuntimeError):
    """Raised when the Lanczos iteration exhausts its budget."""


class DegenerateGroundStateError(RuntimeError):
    """Raised when the lowest two Ritz values are closer than 1e-10."""


class SectorBasis:
    """All N-site configurations with a fixed number of up spins, ascending."""

    def __init__(self, n_sites: int, n_up: int):
        if n_sites < 4 or n_sites % 2:
            raise ValueError(f"n_sites must be even and >= 4, got {n_sites}"
                             " (a 2-site ring double-counts its only bond)")
        if n_sites > MAX_SITES:
            raise ValueError(f"n_sites {n_sites} above the supported cap {MAX_SITES}")
        if not 0 <= n_up <= n_sites:
            raise ValueError(f"n_up {n_up} outside [0, {n_sites}]")
        self.n_sites = n_sites
        self.n_up = n_up
        self.states = _enumerate_sector(n_sites, n_up)
        self.states.flags.writeable = False
        self.dim = len(self.states)

    def index_of(self, config: int) -> int:
        """Position of a configuration in the basis; KeyError if absent."""
        pos = int(np.searchsorted(self.states, np.uint64(config)))
        if pos == self.dim or int(self.states[pos]) != config:
            raise KeyError(f"configuration {config:#x} not in sector")
        return pos

    @cached_property
    def _diag_zz(self) -> np.ndarray:
        """Σ_bonds s^z s^z per configuration: (aligned − anti)/4."""
        n = self.n_sites
        mask = np.uint64((1 << n) - 1)
        rot = ((self.states >> np.uint64(1)) | (self.states << np.uint64(n - 1))) & mask
        anti = np.bitwise_count(self.states ^ rot).astype(np.float64)
        return (n - 2.0 * anti) / 4.0

    @cached_property
    def _flip_pairs(self):
        """(src, dst) index pairs connected by one neighbor flip-flop."""
        srcs, dsts = [], []
        for i in range(self.n_sites):
            j = (i + 1) % self.n_sites
            bond = np.uint64((1 << i) | (1 << j))
            src = np.nonzero(np.bitwise_count(self.states & bond) == 1)[0]
            dst = np.searchsorted(self.states, self.states[src] ^ bond)
            srcs.append(src)
            dsts.append(dst)
        return (
            np.concatenate(srcs).astype(np.intp),
            np.concatenate(dsts).astype(np.intp),
        )


def _enumerate_sector(n_sites: int, n_up: int) -> np.ndarray:
    """Ascending bit patterns with n_up set bits (Gosper's next-combination)."""
    if n_up == 0:
        return np.zeros(1, dtype=np.uint64)
    out = np.empty(math.comb(n_sites, n_up), dtype=np.uint64)
    v = (1 << n_up) - 1
    top = 1 << n_sites
    k = 0
    while v < top:
        out[k] = v
        k += 1
        t = (v | (v - 1)) + 1
        v = t | ((((t & -t) // (v & -v)) >> 1) - 1)
    return out


def build_sector(n_sites: int, n_up: int) -> SectorBasis:
    """Basis of the fixed-S^z sector with n_up up spins."""
    return SectorBasis(n_sites, n_up)


def apply_hamiltonian(basis: SectorBasis, delta: float, psi: np.ndarray) -> np.ndarray:
    """Matrix-free H·psi in the sector basis."""
    psi = np.asarray(psi, dtype=np.float64)
    if psi.shape != (basis.dim,):
        raise ValueError(f"psi has shape {psi.shape}, expected ({basis.dim},)")
    out = (delta * basis._diag_zz) * psi
    src, dst = basis._flip_pairs
    out += 0.5 * np.bincount(dst, weights=psi[src], minlength=basis.dim)
    return out


@dataclass(frozen=True)
class GroundState:
    """Converged lowest eigenpair of the sector Hamiltonian."""

    basis: SectorBasis
    delta: float
    energy: float
    amplitudes: np.ndarray
    residual: float
    tol: float
    seed: int
    iterations: int
    ritz_history: tuple

    @property
    def n_sites(self) -> int:
        return self.basis.n_sites


def _lanczos_lowest(matvec, dim: int, *, seed: int, tol: float, max_cycles: int = 60):
    """Seeded restarted Lanczos for the lowest eigenpair.

    Converged when the Ritz value moves less than tol between iterations and
    the residual estimate is below 10*tol.  Returns (energy, vector, explicit
    residual, total iterations, ritz history, final tridiagonal eigenvalues).
    """
    rng = np.random.default_rng(seed)
    q = rng.standard_normal(dim)
    q /= np.linalg.norm(q)

    cycle_len = min(dim, 300 if dim <= _FULL_REORTH_LIMIT else 80)
    history = []
    theta_prev = None
    iterations = 0
    t_eigs = None

    for _ in range(max_cycles):
        v = np.empty((cycle_len + 1, dim))
        v[0] = q
        alphas: list[float] = []
        betas: list[float] = []
        exhausted = False
        converged = False

        for j in range(cycle_len):
            w = matvec(v[j])
            alphas.append(float(v[j] @ w))
            w -= alphas[j] * v[j]
            if j > 0:
                w -= betas[j - 1] * v[j - 1]
            # two-pass reorthogonalization against the stored cycle vectors
            for _pass in range(2):
                w -= v[: j + 1].T @ (v[: j + 1] @ w)
            beta = float(np.linalg.norm(w))
            iterations += 1

            t = np.diag(alphas)
            if betas:
                off = np.array(betas)
                t += np.diag(off, 1) + np.diag(off, -1)
            t_eigs, t_vecs = np.linalg.eigh(t)
            theta = float(t_eigs[0])
            history.append(theta)
            res_est = beta * abs(float(t_vecs[-1, 0]))

            if theta_prev is not None and abs(theta_prev - theta) < tol and res_est < 10.0 * tol:
                converged = True
            theta_prev = theta
            if beta < 1e-13 * max(1.0, abs(theta)):
                exhausted = True  # invariant subspace: Ritz pair is exact
                converged = True
            if converged or j == cycle_len - 1:
                q = v[: j + 1].T @ t_vecs[:, 0]
                q /= np.linalg.norm(q)
                break
            betas.append(beta)
            v[j + 1] = w / beta

        if converged or exhausted:
            hq = matvec(q)
            energy = float(q @ hq)
            residual = float(np.linalg.norm(hq - energy * q))
            if residual <= max(10.0 * tol, 1e-12):
                return energy, q, residual, iterations, tuple(history), t_eigs
            theta_prev = None  # restart with a sharper target

    raise ConvergenceError(
        f"Lanczos did not converge in {max_cycles} cycles (last Ritz value "
        f"{history[-1] if history else math.nan!r})"
    )


def ground_state(
    n_sites: int,
    delta: float,
    *,
    tol: float = 1e-12,
    seed: int = 0,
    cache_dir=None,
    max_cycles: int = 60,
) -> GroundState:
    """Lowest eigenpair of the XXZ ring in the S^z = 0 sector.

    Requires Δ > −1 so that sector actually hosts the global ground state.
    With `cache_dir` set, solved states are persisted and read back exactly.
    """
    if not delta > -1.0:
        raise FerromagneticRegimeError(
            f"delta={delta!r} <= -1: ground state is fully polarized and leaves "
            "the S^z = 0 sector; pair discord vanishes there"
        )
    if not 0.0 < tol <= 1e-4:
        raise ValueError(f"tol {tol!r} outside (0, 1e-4]")
    basis = build_sector(n_sites, n_sites // 2)

    path = None
    if cache_dir is not None:
        path = cache_path(cache_dir, n_sites, basis.n_up, delta, tol)
        cached = load_ground_state(path)
        if cached is not None:
            energy, amplitudes = cached
            if amplitudes.shape == (basis.dim,):
                amplitudes.flags.writeable = False
                residual = float(
                    np.linalg.norm(apply_hamiltonian(basis, delta, amplitudes) - energy * amplitudes)
                )
                if residual <= 1e-8:
                    return GroundState(
                        basis, delta, energy, amplitudes, residual, tol, seed, 0, ()
                    )
            # corrupt or stale entry: fall through and re-solve

    energy, vec, residual, iterations, history, t_eigs = _lanczos_lowest(
        lambda p: apply_hamiltonian(basis, delta, p),
        basis.dim,
        seed=seed,
        tol=tol,
        max_cycles=max_cycles,
    )
    if t_eigs is not None and len(t_eigs) >= 2 and float(t_eigs[1] - t_eigs[0]) <= 1e-10:
        raise DegenerateGroundStateError(
            f"Ritz gap {float(t_eigs[1] - t_eigs[0])!r} <= 1e-10: sector ground "
            "state is not unique, pair density matrices are ill-defined"
        )
    if vec[np.argmax(np.abs(vec))] < 0.0:
        vec = -vec
    vec = vec / np.linalg.norm(vec)
    vec.flags.writeable = False

    state = GroundState(basis, delta, energy, vec, residual, tol, seed, iterations, history)
    if path is not None:
        save_ground_state(path, state)
    return state


# ── persistent cache ────────────────────────────────────────────────────────
# Layout: magic "SDKGS1", u32 N, u32 n_up, f64 delta, f64 tol, f64 energy,
# u64 dimension, then dimension little-endian f64 amplitudes, then u32 CRC32
# of the payload bytes.  All integers little-endian.


def cache_path(cache_dir, n_sites: int, n_up: int, delta: float, tol: float) -> Path:
    """File path for one solved sector, keyed on every cache header field."""
    name = (
        f"gs_n{n_sites:02d}_up{n_up:02d}_d{delta:.17g}_t{tol:.17g}"
        f"_v{_CACHE_CODE_VERSION}.bin"
    )
    return Path(cache_dir) / name


def save_ground_state(path, state: GroundState) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = state.amplitudes.astype("<f8").tobytes()
    header = _CACHE_HEADER.pack(
        _CACHE_MAGIC,
        state.basis.n_sites,
        state.basis.n_up,
        state.delta,
        state.tol,
        state.energy,
        state.basis.dim,
    )
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(payload)
        fh.write(_CACHE_FOOTER.pack(zlib.crc32(payload)))
    os.replace(tmp, path)


def load_ground_state(path):
    """(energy, amplitudes) from a cache file, or None on any mismatch."""
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError:
        return None
    if len(blob) < _CACHE_HEADER.size + _CACHE_FOOTER.size:
        return None
    magic, _n, _n_up, _delta, _tol, energy, dim = _CACHE_HEADER.unpack_from(blob)
    if magic != _CACHE_MAGIC:
        return None
    expected = _CACHE_HEADER.size + 8 * dim + _CACHE_FOOTER.size
    if len(blob) != expected:
        return None
    payload = blob[_CACHE_HEADER.size : _CACHE_HEADER.size + 8 * dim]
    (crc,) = _CACHE_FOOTER.unpack_from(blob, _CACHE_HEADER.size + 8 * dim)
    if zlib.crc32(payload) != crc:
        return None
    return energy, np.frombuffer(payload, dtype="<f8").astype(np.float64)


def load_cached_ground_state(cache_dir, n_sites: int, delta: float, tol: float):
    """Header-validated cache lookup for the S^z = 0 sector, or None."""
    return load_ground_state(cache_path(cache_dir, n_sites, n_sites // 2, delta, tol))


# ── independent dense oracle ────────────────────────────────────────────────


def dense_sector_hamiltonian(n_sites: int, delta: float, n_up=None) -> np.ndarray:
    """Dense sector Hamiltonian built from scratch with plain integer bit ops.

    Deliberately shares no construction code with `apply_hamiltonian`; the
    configuration order (ascending) matches `build_sector`.
    """
    if n_up is None:
        n_up = n_sites // 2
    dim = math.comb(n_sites, n_up)
    if dim > 4096:
        raise ValueError(f"sector dimension {dim} too large for the dense oracle")
    configs = sorted(
        sum(1 << i for i in combo) for combo in itertools.combinations(range(n_sites), n_up)
    )
    index = {c: a for a, c in enumerate(configs)}
    h = np.zeros((dim, dim))
    for a, c in enumerate(configs):
        aligned = 0
        for i in range(n_sites):
            j = (i + 1) % n_sites
            if ((c >> i) & 1) == ((c >> j) & 1):
                aligned += 1
            else:
                h[index[c ^ ((1 << i) | (1 << j))], a] += 0.5
        h[a, a] = delta * (2 * aligned - n_sites) / 4.0
    return h


def dense_spectrum_oracle(n_sites: int, delta: float, n_up=None) -> np.ndarray:
    """All sector eigenvalues, ascending, via dense diagonalization."""
    return np.linalg.eigvalsh(dense_sector_hamiltonian(n_sites, delta, n_up))
