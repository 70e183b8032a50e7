"""Dispersive material response of a single-resonance magnetodielectric.

Permittivity and permeability follow damped single-resonance models; the
complex refractive index is built from the phase half-sum of eps and mu so
that the branch stays passive (Im n > 0) even when both response functions
have negative real parts.  All frequencies are measured in units of a
reference frequency omega_ref (the magnetic resonance frequency of the
canonical parameter set).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "MaterialParams",
    "OpticalResponse",
    "BandStructure",
    "RefractiveIndex",
    "PoleError",
    "GainMediumError",
    "VACUUM",
    "permittivity",
    "permeability",
    "refractive_index",
    "optical_response",
    "is_left_handed",
    "band_structure",
]


class PoleError(ValueError):
    """A lossless resonance was evaluated exactly at its pole frequency."""


class GainMediumError(ValueError):
    """eps or mu has negative imaginary part (amplifying media unsupported)."""


@dataclass(frozen=True)
class MaterialParams:
    """Resonance parameters of the electric and magnetic response.

    All values are real, nonnegative, and expressed in units of omega_ref.
    Setting a coupling strength (omega_pe / omega_pm) to zero switches the
    corresponding response off (eps = 1 or mu = 1 identically).
    """

    omega_pe: float = 0.0
    omega_te: float = 1.0
    gamma_e: float = 0.0
    omega_pm: float = 0.0
    omega_tm: float = 1.0
    gamma_m: float = 0.0

    def __post_init__(self) -> None:
        for name in ("omega_pe", "omega_te", "gamma_e", "omega_pm", "omega_tm", "gamma_m"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and nonnegative, got {value!r}")
        if self.omega_te <= 0.0:
            raise ValueError("omega_te must be positive")
        if self.omega_tm <= 0.0:
            raise ValueError("omega_tm must be positive")

    @property
    def is_vacuum(self) -> bool:
        return self.omega_pe == 0.0 and self.omega_pm == 0.0


VACUUM = MaterialParams()


class RefractiveIndex(NamedTuple):
    """Branch-consistent refractive index together with the response phases."""

    n: complex
    phi_eps: float
    phi_mu: float


@dataclass(frozen=True)
class OpticalResponse:
    """Complex material response at one frequency (all dimensionless)."""

    omega: float
    eps: complex
    mu: complex
    n: complex
    phi_eps: float
    phi_mu: float


@dataclass(frozen=True)
class BandStructure:
    """Band-edge frequencies and the sampled left-handed window, if any."""

    omega_le: float
    omega_lm: float
    lh_window: Optional[Tuple[float, float]]


def _resonance(omega_p: float, omega_t: float, gamma: float, omega: float) -> complex:
    """Evaluate 1 + omega_p^2 / (omega_t^2 - omega^2 - i*omega*gamma)."""
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if omega_p == 0.0:
        return 1.0 + 0.0j
    den = complex(omega_t * omega_t - omega * omega, -omega * gamma)
    if den == 0.0:
        raise PoleError(
            f"lossless resonance evaluated at its pole (omega = omega_t = {omega_t})"
        )
    return 1.0 + omega_p * omega_p / den


def permittivity(p: MaterialParams, omega: float) -> complex:
    """Relative permittivity eps(omega) of the single-resonance model."""
    return _resonance(p.omega_pe, p.omega_te, p.gamma_e, omega)


def permeability(p: MaterialParams, omega: float) -> complex:
    """Relative permeability mu(omega) of the single-resonance model."""
    return _resonance(p.omega_pm, p.omega_tm, p.gamma_m, omega)


def _passive_phase(w: complex, label: str) -> float:
    """Phase of a passive response function, taken in [0, pi].

    Absorbing values (Im w > 0) land strictly inside (0, pi).  Lossless
    values are real: positive ones get phase 0, negative ones phase pi.
    """
    if w == 0.0:
        raise ValueError(f"{label} must be nonzero")
    if w.imag < 0.0:
        raise GainMediumError(f"Im {label} < 0 not supported (gain medium)")
    if w.imag == 0.0:
        return 0.0 if w.real > 0.0 else math.pi
    return cmath.phase(w)  # in (0, pi) for Im w > 0


def refractive_index(eps: complex, mu: complex) -> RefractiveIndex:
    """Refractive index from the phase half-sum rule.

    n = sqrt(|eps| |mu|) * exp(i (phi_eps + phi_mu) / 2) with each phase in
    [0, pi].  This is never the principal square root of eps*mu: when both
    phases exceed pi/2 the half-sum lies beyond pi/2 and Re n is negative,
    which the principal root would miss.
    """
    eps = complex(eps)
    mu = complex(mu)
    phi_eps = _passive_phase(eps, "eps")
    phi_mu = _passive_phase(mu, "mu")
    magnitude = math.sqrt(abs(eps) * abs(mu))
    n = magnitude * cmath.exp(0.5j * (phi_eps + phi_mu))
    return RefractiveIndex(n, phi_eps, phi_mu)


def optical_response(p: MaterialParams, omega: float) -> OpticalResponse:
    """Evaluate eps, mu, and n at one frequency."""
    eps = permittivity(p, omega)
    mu = permeability(p, omega)
    n, phi_eps, phi_mu = refractive_index(eps, mu)
    return OpticalResponse(omega=omega, eps=eps, mu=mu, n=n, phi_eps=phi_eps, phi_mu=phi_mu)


def is_left_handed(n: complex) -> bool:
    """A medium is classified left-handed iff Re n < 0 (strict)."""
    return complex(n).real < 0.0


def _contiguous_runs(mask: np.ndarray):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([0], breaks + 1))
    stops = np.concatenate((breaks, [idx.size - 1]))
    return [(int(idx[a]), int(idx[b])) for a, b in zip(starts, stops)]


def band_structure(p: MaterialParams, grid: Sequence[float]) -> BandStructure:
    """Band edges plus the left-handed window located by a sign scan.

    The longitudinal band-edge frequencies follow from the exact formulas
    omega_L = sqrt(omega_t^2 + omega_p^2).  The window is the contiguous
    run of grid samples where Re eps and Re mu are simultaneously negative
    (within it Re n < 0 is guaranteed by the phase half-sum); this is the
    overlap of the two band gaps.  The branch rule also produces weakly
    negative Re n outside that overlap whenever one response phase is large
    enough, so a bare Re n scan is used only as a fallback when the gaps do
    not overlap on the grid.  Endpoints are reported at grid resolution
    with no root polishing.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ValueError("grid must be a 1-d array with at least two samples")
    if not (np.all(np.diff(grid) > 0.0) and grid[0] > 0.0):
        raise ValueError("grid must be strictly increasing and positive")

    omega_le = math.hypot(p.omega_te, p.omega_pe)
    omega_lm = math.hypot(p.omega_tm, p.omega_pm)

    responses = [optical_response(p, w) for w in grid]
    re_n_neg = np.array([r.n.real < 0.0 for r in responses])
    both_neg = np.array([r.eps.real < 0.0 and r.mu.real < 0.0 for r in responses])

    window = None
    if re_n_neg.any():
        runs = _contiguous_runs(both_neg) or _contiguous_runs(re_n_neg)
        gap_lo = max(p.omega_te, p.omega_tm)
        gap_hi = min(omega_le, omega_lm)
        chosen = None
        if gap_lo < gap_hi:
            for a, b in runs:
                if grid[b] >= gap_lo and grid[a] <= gap_hi:
                    chosen = (a, b)
                    break
        if chosen is None:
            chosen = max(runs, key=lambda run: grid[run[1]] - grid[run[0]])
        window = (float(grid[chosen[0]]), float(grid[chosen[1]]))

    return BandStructure(omega_le=omega_le, omega_lm=omega_lm, lh_window=window)
