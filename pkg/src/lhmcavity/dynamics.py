"""Decay dynamics of the upper atomic state.

The coupling of the atom to the medium-assisted field is summarized by a
band-limited spectral density gamma_tilde(omega): the decay rate the atom
would have at frequency omega, in units of the free-space rate at
omega_ref, including the omega^3 scaling of the free-space rate itself.
From it follow the Markovian rate and frequency shift (a principal-value
integral) and the memory kernel driving the non-Markovian Volterra
evolution of the amplitude C_u(t).

The frequency integrals formally extend to infinity; here the band
[omega_lo, omega_hi] is an explicit, reported truncation parameter chosen
by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .cavity import CavityConfig, rate_center, rate_radial, rate_tangential

__all__ = [
    "SpectralDensity",
    "DecayTrajectory",
    "VolterraInstabilityError",
    "spectral_density",
    "markov_rate_and_shift",
    "memory_kernel",
    "volterra_solve",
    "self_consistent_shift",
]


class VolterraInstabilityError(ArithmeticError):
    """The Volterra iteration left the physical range |C_u| <= 1."""


@dataclass(frozen=True)
class SpectralDensity:
    """Tabulated rate function gamma_tilde(omega) on a finite band.

    omegas are strictly increasing (units omega_ref); values are decay
    rates in units of Gamma0(omega_ref) and must be nonnegative.
    """

    omegas: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        omegas = np.asarray(self.omegas, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if omegas.ndim != 1 or omegas.size < 2 or omegas.shape != values.shape:
            raise ValueError("need matching 1-d arrays with at least two samples")
        if not np.all(np.diff(omegas) > 0.0):
            raise ValueError("omega grid must be strictly increasing")
        if omegas[0] <= 0.0:
            raise ValueError("omega grid must be positive")
        if np.any(values < 0.0):
            raise ValueError("gamma_tilde must be nonnegative")
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "values", values)

    @property
    def band(self) -> Tuple[float, float]:
        return float(self.omegas[0]), float(self.omegas[-1])


@dataclass(frozen=True)
class DecayTrajectory:
    """Sampled upper-state amplitude, times in units of 1/Gamma0(omega_ref)."""

    times: np.ndarray
    cu: np.ndarray
    gamma_markov: float
    delta_omega: float


def _cavity_ratio(cfg: CavityConfig, omega: float) -> float:
    if cfg.r_atom == 0.0:
        return rate_center(omega, cfg).ratio
    if cfg.orientation == "radial":
        return rate_radial(omega, cfg).ratio
    return rate_tangential(omega, cfg).ratio


def spectral_density(
    cfg: CavityConfig, band: Tuple[float, float], steps: int
) -> SpectralDensity:
    """Tabulate gamma_tilde(omega) = omega^3 * Gamma(omega)/Gamma0(omega).

    The cubic prefactor carries the frequency dependence of the free-space
    rate, so values are normalized to Gamma0 at omega_ref.
    """
    lo, hi = band
    if not 0.0 < lo < hi:
        raise ValueError(f"band must satisfy 0 < lo < hi, got {band!r}")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    omegas = np.linspace(lo, hi, steps)
    values = np.array([w ** 3 * _cavity_ratio(cfg, w) for w in omegas])
    # tiny negative ratios from roundoff would fail validation
    np.clip(values, 0.0, None, out=values)
    return SpectralDensity(omegas=omegas, values=values)


def markov_rate_and_shift(sd: SpectralDensity, omega_a: float) -> Tuple[float, float]:
    """Markovian decay rate and frequency shift at omega_a.

    gamma is gamma_tilde interpolated at omega_a; the shift is the
    principal-value integral (1/2 pi) PV int gamma_tilde(w)/(w - omega_a) dw
    over the band, computed by subtracting the value at omega_a (the
    regularized integrand is handled by the trapezoidal rule, the
    subtracted part integrates to a closed-form logarithm).  Both come out
    in units of Gamma0(omega_ref).
    """
    lo, hi = sd.band
    if not lo < omega_a < hi:
        raise ValueError(f"omega_a={omega_a!r} outside the band ({lo}, {hi})")
    gamma = float(np.interp(omega_a, sd.omegas, sd.values))

    diff = sd.omegas - omega_a
    integrand = np.empty_like(sd.values)
    regular = diff != 0.0
    integrand[regular] = (sd.values[regular] - gamma) / diff[regular]
    if not regular.all():
        # omega_a hit a grid node: use the local slope as the limit value
        (k,) = np.flatnonzero(~regular)
        k_lo = max(k - 1, 0)
        k_hi = min(k + 1, sd.omegas.size - 1)
        integrand[k] = (sd.values[k_hi] - sd.values[k_lo]) / (
            sd.omegas[k_hi] - sd.omegas[k_lo]
        )
    principal = np.trapezoid(integrand, sd.omegas)
    principal += gamma * math.log((hi - omega_a) / (omega_a - lo))
    delta = principal / (2.0 * math.pi)
    if not math.isfinite(delta):
        raise ArithmeticError("principal-value quadrature produced a non-finite shift")
    return gamma, delta


def memory_kernel(
    sd: SpectralDensity, omega_tilde: float, tau_grid: Sequence[float]
) -> np.ndarray:
    """Band-limited kernel K(tau) = -(1/2 pi) int gamma_tilde(w) e^{-i(w-wt)tau} dw.

    tau is conjugate to the omega grid (units 1/omega_ref); the result is a
    complex array over tau_grid, trapezoidal in omega.
    """
    tau = np.asarray(tau_grid, dtype=float)
    if tau.ndim != 1 or (tau.size > 1 and not np.all(np.diff(tau) > 0.0)):
        raise ValueError("tau_grid must be 1-d and increasing")
    if tau.size and tau[0] < 0.0:
        raise ValueError("tau_grid must be nonnegative")
    weights = np.empty_like(sd.omegas)
    weights[1:-1] = 0.5 * (sd.omegas[2:] - sd.omegas[:-2])
    weights[0] = 0.5 * (sd.omegas[1] - sd.omegas[0])
    weights[-1] = 0.5 * (sd.omegas[-1] - sd.omegas[-2])
    phases = np.exp(-1j * np.outer(tau, sd.omegas - omega_tilde))
    return -(phases @ (weights * sd.values)) / (2.0 * math.pi)


def volterra_solve(
    kernel: Sequence[complex],
    delta_omega: float,
    t_max: float,
    dt: float,
    gamma_markov: float = math.nan,
) -> DecayTrajectory:
    """Integrate dC/dt = -i*delta_omega*C + int_0^t K(t-s) C(s) ds.

    kernel must be sampled on the uniform time grid 0, dt, 2*dt, ... in the
    same reduced time units as t_max and dt (1/Gamma0).  The convolution
    uses the product trapezoidal rule and the time step is the trapezoidal
    (Crank-Nicolson) one, giving second-order convergence overall.
    """
    if dt <= 0.0 or t_max <= 0.0:
        raise ValueError("dt and t_max must be positive")
    steps = int(round(t_max / dt))
    times = np.arange(steps + 1) * dt
    kern = np.asarray(kernel, dtype=complex)
    if kern.ndim != 1 or kern.size < steps + 1:
        raise ValueError(f"kernel must provide at least {steps + 1} samples")

    cu = np.empty(steps + 1, dtype=complex)
    cu[0] = 1.0
    rhs = np.empty(steps + 1, dtype=complex)  # -i dw C_m + I_m at known nodes
    rhs[0] = -1j * delta_omega
    # implicit weight of C_{m+1}: (dt/2) * (-i dw + (dt/2) K_0)
    implicit = 1.0 - 0.5 * dt * (-1j * delta_omega + 0.5 * dt * kern[0])
    for m in range(steps):
        # trapezoidal convolution at t_{m+1}, C_{m+1} term split off
        conv = 0.5 * kern[m + 1] * cu[0]
        if m >= 1:
            conv += np.dot(kern[m:0:-1], cu[1 : m + 1])
        conv *= dt
        cu_next = (cu[m] + 0.5 * dt * (rhs[m] + conv)) / implicit
        cu[m + 1] = cu_next
        rhs[m + 1] = -1j * delta_omega * cu_next + conv + 0.5 * dt * kern[0] * cu_next
        magnitude = abs(cu_next)
        if not math.isfinite(magnitude) or magnitude > 2.0:
            raise VolterraInstabilityError(
                f"|C_u| = {magnitude:.3g} at t = {times[m + 1]:.6g}; "
                "reduce dt or check the kernel scaling"
            )
    return DecayTrajectory(
        times=times, cu=cu, gamma_markov=gamma_markov, delta_omega=delta_omega
    )


def self_consistent_shift(
    sd: SpectralDensity,
    omega_a: float,
    coupling: float,
    damping: float = 0.5,
    max_iter: int = 50,
    tol: float = 1e-12,
) -> Tuple[float, int]:
    """Solve omega_tilde = omega_a - coupling * delta(omega_tilde).

    coupling is Gamma0(omega_ref)/omega_ref, the scale converting the shift
    from rate units to frequency units.  Damped fixed-point iteration;
    returns the shifted frequency and the iteration count.
    """
    if coupling < 0.0:
        raise ValueError("coupling must be nonnegative")
    omega_tilde = omega_a
    for iteration in range(1, max_iter + 1):
        try:
            _, delta = markov_rate_and_shift(sd, omega_tilde)
        except ValueError as exc:
            # started inside the band, so leaving it means the iteration diverged
            raise ArithmeticError(
                f"self-consistent shift left the spectral band: {exc}"
            ) from exc
        target = omega_a - coupling * delta
        updated = (1.0 - damping) * omega_tilde + damping * target
        if abs(updated - omega_tilde) <= tol * max(abs(updated), 1.0):
            return updated, iteration
        omega_tilde = updated
    raise ArithmeticError(
        f"self-consistent shift did not settle within {max_iter} iterations"
    )
