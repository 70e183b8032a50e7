"""Spontaneous-decay rates for an atom inside a spherical vacuum cavity.

The cavity (radius R, interior vacuum) sits in a homogeneous
magnetodielectric host.  The decay-rate ratio relative to free space is
built from reflection coefficients of outgoing M- and N-type spherical
waves at the vacuum/host interface: an outgoing wave h_n^(1) acquires a
regular admixture C * j_n inside, and the ratio follows from a multipole
series in the atom position.  At the cavity center only the first electric
multipole survives and an independent closed form is available; the two
routes cross-validate each other.

Geometry is expressed in reduced units: radii and positions in lambda_ref,
frequencies in omega_ref, so the interior size parameter is
x = 2*pi*omega*R and the exterior one is y = n(omega)*x.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from .materials import MaterialParams, optical_response
from .specfun import MAX_ORDER, riccati_h1_logderiv_all, sph_h1n_all, sph_jn_all

__all__ = [
    "CavityConfig",
    "RateResult",
    "MieCoefficients",
    "CenterExpansion",
    "SmallCavityRate",
    "MieResonanceError",
    "SeriesConvergenceError",
    "ExpansionPoleError",
    "mie_coefficients",
    "rate_radial",
    "rate_tangential",
    "rate_center",
    "rate_center_expansion",
    "rate_bulk_lossless",
    "rate_small_cavity_absorptive",
]

ORIENTATIONS = ("radial", "tangential")

# |mu - n^2| below this reroutes the center closed form to the multipole
# series; the closed form has a removable singularity as eps -> 1.
DEGENERATE_THRESHOLD = 1e-10


class MieResonanceError(ArithmeticError):
    """Boundary matching became singular (lossless host at a real resonance)."""


class ExpansionPoleError(ArithmeticError):
    """The small-radius expansion was evaluated at its 1 + 2*eps = 0 pole."""


class SeriesConvergenceError(ArithmeticError):
    """Multipole series failed to converge; carries the partial result."""

    def __init__(self, message: str, partial: "RateResult"):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class CavityConfig:
    """Spherical vacuum cavity with an atom strictly inside.

    radius and r_atom are in lambda_ref; orientation is the dipole
    direction relative to the radius vector at the atom.
    """

    radius: float
    r_atom: float
    orientation: str
    host: MaterialParams

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        if not (math.isfinite(self.r_atom) and self.r_atom >= 0.0):
            raise ValueError(f"r_atom must be nonnegative, got {self.r_atom!r}")
        if self.r_atom >= self.radius:
            raise ValueError(
                f"atom must sit strictly inside the cavity (r_atom={self.r_atom}, radius={self.radius})"
            )
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")


@dataclass(frozen=True)
class RateResult:
    """Decay-rate ratio Gamma/Gamma0 with series diagnostics."""

    ratio: float
    terms_used: int
    truncation_estimate: float
    method: str  # "series" | "closed_form" | "expansion"


@dataclass(frozen=True)
class MieCoefficients:
    """Reflection coefficients of outgoing M- and N-waves, one order."""

    order: int
    cm: complex
    cn: complex


class CenterExpansion(NamedTuple):
    """Small-radius expansion of the center rate (leading, R^-3, R^-1, sum)."""

    leading: float
    term_r3: float
    term_r1: float
    total: float


class SmallCavityRate(NamedTuple):
    """Near-field R^-3 rate and its dominance over the other expansion terms."""

    rate: float
    dominance: float


def _riccati(values: np.ndarray, z: complex) -> Tuple[np.ndarray, np.ndarray]:
    """Riccati functions z*f_n(z) and their derivatives from an f_n array."""
    psi = z * values
    dpsi = np.empty_like(psi)
    n = np.arange(1, values.size)
    dpsi[1:] = z * values[:-1] - n * values[1:]
    # d/dz [z f_0(z)] = z f_{-1}(z); never consumed (series starts at n = 1)
    dpsi[0] = np.nan
    return psi, dpsi


def _mie_arrays(
    nmax: int, omega: float, host: MaterialParams, radius: float
) -> Tuple[np.ndarray, np.ndarray]:
    """C^M_n and C^N_n for n = 0..nmax (index 0 is a nan placeholder).

    The exterior outgoing wave enters only through the logarithmic
    derivative of its Riccati function, so strongly absorbing hosts
    (|Im n| * x beyond exp range) stay representable.
    """
    resp = optical_response(host, omega)
    eps, mu, n_host = resp.eps, resp.mu, resp.n
    x = 2.0 * math.pi * omega * radius
    y = n_host * x

    psi_x, dpsi_x = _riccati(sph_jn_all(nmax, x), x)
    xi_x, dxi_x = _riccati(sph_h1n_all(nmax, x), x)
    q_y = riccati_h1_logderiv_all(nmax, y)

    def reflection(rho: complex) -> np.ndarray:
        num = rho * dxi_x - xi_x * q_y
        den = psi_x * q_y - rho * dpsi_x
        with np.errstate(invalid="ignore", divide="ignore"):
            out = num / den
        bad = (den == 0.0) & (num != 0.0)
        if bad[1:].any():
            raise MieResonanceError(
                f"singular boundary matching at omega={omega} (orders {np.flatnonzero(bad).tolist()})"
            )
        return out

    cm = reflection(mu / n_host)
    cn = reflection(eps / n_host)
    cm[0] = cn[0] = np.nan
    return cm, cn


def mie_coefficients(n: int, omega: float, cfg: CavityConfig) -> MieCoefficients:
    """Reflection coefficients at a single multipole order n >= 1."""
    if n < 1:
        raise ValueError(f"multipole order must be >= 1, got {n}")
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if cfg.host.is_vacuum:
        return MieCoefficients(order=n, cm=0.0 + 0.0j, cn=0.0 + 0.0j)
    cm, cn = _mie_arrays(n, omega, cfg.host, cfg.radius)
    return MieCoefficients(order=n, cm=complex(cm[n]), cn=complex(cn[n]))


def _center_series(omega_a: float, cfg: CavityConfig) -> RateResult:
    """n = 1 limit of the multipole series at the cavity center."""
    cn1 = mie_coefficients(1, omega_a, cfg).cn
    if not (math.isfinite(cn1.real) and math.isfinite(cn1.imag)):
        raise MieResonanceError(f"non-finite n=1 reflection coefficient at omega={omega_a}")
    return RateResult(
        ratio=1.0 + cn1.real, terms_used=1, truncation_estimate=0.0, method="series"
    )


def _series_nmax_guess(x: float) -> int:
    return min(MAX_ORDER, int(x + 4.0 * x ** (1.0 / 3.0) + 24.0))


def _sum_series(omega_a, cfg, tol, term_fn):
    """Shared truncation loop: stop after three consecutive small increments."""
    x = 2.0 * math.pi * omega_a * cfg.radius
    nmax = _series_nmax_guess(x)
    while True:
        increments = term_fn(nmax)
        partial = 1.0
        small_streak = 0
        for idx, inc in enumerate(increments, start=1):
            if not math.isfinite(inc):
                if small_streak > 0:
                    idx -= 1
                    break
                raise MieResonanceError(
                    f"non-finite series term at order {idx}, omega={omega_a}"
                )
            partial += inc
            small_streak = small_streak + 1 if abs(inc) <= tol * abs(partial) else 0
            if small_streak >= 3:
                break
        tail = increments[max(0, idx - 3) : idx]
        finite_tail = [t for t in tail if math.isfinite(t)]
        estimate = max(map(abs, finite_tail)) / max(abs(partial), 1e-300)
        result = RateResult(
            ratio=partial,
            terms_used=idx,
            truncation_estimate=estimate,
            method="series",
        )
        if small_streak >= 3:
            return result
        if nmax >= MAX_ORDER:
            raise SeriesConvergenceError(
                f"series not converged after {MAX_ORDER} orders (omega={omega_a})",
                result,
            )
        nmax = min(MAX_ORDER, 2 * nmax)


def rate_radial(omega_a: float, cfg: CavityConfig, tol: float = 1e-10) -> RateResult:
    """Gamma/Gamma0 for a radially oriented dipole at r_atom.

    Series 1 + (3/2) sum_n n(n+1)(2n+1) [j_n(k r)/(k r)]^2 Re C^N_n; at the
    center it collapses analytically to the n = 1 term.
    """
    _validate_rate_args(omega_a, tol)
    if cfg.orientation != "radial":
        raise ValueError("rate_radial requires orientation='radial'")
    if cfg.r_atom == 0.0:
        return _center_series(omega_a, cfg)
    rho = 2.0 * math.pi * omega_a * cfg.r_atom

    def terms(nmax: int) -> np.ndarray:
        _, cn = _mie_arrays(nmax, omega_a, cfg.host, cfg.radius)
        n = np.arange(1, nmax + 1)
        j = sph_jn_all(nmax, rho)[1:].real
        return 1.5 * n * (n + 1) * (2 * n + 1) * (j / rho) ** 2 * cn[1:].real

    return _sum_series(omega_a, cfg, tol, terms)


def rate_tangential(omega_a: float, cfg: CavityConfig, tol: float = 1e-10) -> RateResult:
    """Gamma/Gamma0 for a tangentially oriented dipole at r_atom.

    Series 1 + (3/4) sum_n (2n+1) [j_n^2 Re C^M_n + ((k r j_n)'/(k r))^2 Re C^N_n].
    """
    _validate_rate_args(omega_a, tol)
    if cfg.orientation != "tangential":
        raise ValueError("rate_tangential requires orientation='tangential'")
    if cfg.r_atom == 0.0:
        return _center_series(omega_a, cfg)
    rho = 2.0 * math.pi * omega_a * cfg.r_atom

    def terms(nmax: int) -> np.ndarray:
        cm, cn = _mie_arrays(nmax, omega_a, cfg.host, cfg.radius)
        n = np.arange(1, nmax + 1)
        j = sph_jn_all(nmax, rho).real
        dpsi = rho * j[:-1] - n * j[1:]  # d/dz [z j_n] at z = rho
        return 0.75 * (2 * n + 1) * (
            j[1:] ** 2 * cm[1:].real + (dpsi / rho) ** 2 * cn[1:].real
        )

    return _sum_series(omega_a, cfg, tol, terms)


def _validate_rate_args(omega_a: float, tol: float) -> None:
    if omega_a <= 0.0:
        raise ValueError(f"omega_a must be positive, got {omega_a!r}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol!r}")


def rate_center(omega_a: float, cfg: CavityConfig) -> RateResult:
    """Closed-form Gamma/Gamma0 for an atom at the cavity center.

    Dipole orientation is immaterial at the center.  Hosts with eps close
    to 1 (mu - n^2 -> 0) are rerouted to the multipole series, which stays
    regular across that removable singularity.
    """
    if cfg.r_atom != 0.0:
        raise ValueError("rate_center requires r_atom = 0")
    if omega_a <= 0.0:
        raise ValueError(f"omega_a must be positive, got {omega_a!r}")
    resp = optical_response(cfg.host, omega_a)
    eps, mu, n = resp.eps, resp.mu, resp.n
    if abs(mu - n * n) < DEGENERATE_THRESHOLD:
        return _center_series(omega_a, cfg)
    z = 2.0 * math.pi * omega_a * cfg.radius
    a = (mu - n) / (mu - n * n)
    sz, cz = math.sin(z), math.cos(z)
    numerator = (
        1.0
        - 1j * (n + 1.0) * z
        - n * (n + 1.0) * a * z * z
        + 1j * n * n * a * z ** 3
    ) * cmath.exp(1j * z)
    denominator = (
        -1j * sz
        - (n * sz - 1j * cz) * z
        + (cz - 1j * (1.0 - mu) / (mu - n * n) * n * sz) * n * z * z
        - (n * sz + 1j * mu * cz) * (n * n / (mu - n * n)) * z ** 3
    )
    ratio = 1.0 + (numerator / denominator).real
    return RateResult(ratio=ratio, terms_used=1, truncation_estimate=0.0, method="closed_form")


def rate_center_expansion(omega_a: float, cfg: CavityConfig) -> CenterExpansion:
    """Small-radius expansion of the center rate, valid for z = 2 pi w R < 1.

    Terms: local-field-corrected bulk rate Re[(3 eps/(1+2 eps))^2 mu n], the
    purely dielectric near-field R^-3 term, and the induction-field R^-1
    term.  The omitted remainder is O(R).
    """
    if cfg.r_atom != 0.0:
        raise ValueError("rate_center_expansion requires r_atom = 0")
    z = 2.0 * math.pi * omega_a * cfg.radius
    if not 0.0 < z < 1.0:
        raise ValueError(f"expansion needs 0 < 2*pi*omega*R < 1, got {z!r}")
    resp = optical_response(cfg.host, omega_a)
    eps, mu, n = resp.eps, resp.mu, resp.n
    one_plus = 1.0 + 2.0 * eps
    if abs(one_plus) < 1e-10:
        raise ExpansionPoleError("expansion pole: 1 + 2*eps vanished")
    leading = ((3.0 * eps / one_plus) ** 2 * mu * n).real
    term_r3 = 9.0 * eps.imag / abs(one_plus) ** 2 / z ** 3
    term_r1 = 1.8 * (eps * (1.0 + 3.0 * eps + 5.0 * mu * eps) / one_plus ** 2).imag / z
    return CenterExpansion(leading, term_r3, term_r1, leading + term_r3 + term_r1)


def rate_bulk_lossless(eps: float, mu: float) -> float:
    """Bulk decay-rate ratio Re[mu n] for real (lossless) eps and mu.

    Opposite signs of eps and mu make n purely imaginary, so only
    evanescent waves exist and the rate vanishes; equal negative signs give
    n < 0 but a positive ratio |mu| |n|.
    """
    eps = float(eps)
    mu = float(mu)
    if eps * mu <= 0.0:
        return 0.0
    from .materials import refractive_index

    n = refractive_index(eps, mu).n
    return (mu * n).real


def rate_small_cavity_absorptive(omega_a: float, cfg: CavityConfig) -> SmallCavityRate:
    """Radiationless near-field rate 9 Im eps / |1+2 eps|^2 * (c/(w R))^3.

    Purely dielectric: the magnetization enters the expansion only at order
    R^-1.  The dominance field reports term_r3 / (|leading| + |term_r1|) so
    callers can confirm the regime where this term alone is meaningful.
    """
    expansion = rate_center_expansion(omega_a, cfg)
    other = abs(expansion.leading) + abs(expansion.term_r1)
    dominance = math.inf if other == 0.0 else expansion.term_r3 / other
    return SmallCavityRate(rate=expansion.term_r3, dominance=dominance)
