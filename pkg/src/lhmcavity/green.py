"""Bulk Green tensor of a homogeneous magnetodielectric.

The dyadic is evaluated from the closed-form transverse/longitudinal
decomposition around the scalar outgoing wave exp(iq|r-r'|)/(4*pi*|r-r'|),
with q = n(omega)*omega/c and the branch-consistent refractive index.
Positions are measured in lambda_ref, frequencies in omega_ref, so the
reduced wavenumber is q = 2*pi*n*omega and tensor components carry units of
1/lambda_ref.  Coincident points are excluded by contract; the equal-point
imaginary part is provided separately through its closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .materials import MaterialParams, optical_response, refractive_index

__all__ = [
    "GreenTensorValue",
    "HighFrequencyReport",
    "bulk_green",
    "im_green_equal_bulk",
    "high_frequency_check",
]


@dataclass(frozen=True)
class GreenTensorValue:
    """Bulk Green tensor between two points at one frequency."""

    r: Tuple[float, float, float]
    r_prime: Tuple[float, float, float]
    omega: float
    components: np.ndarray  # 3x3 complex, units 1/lambda_ref


def _dyadic(q: complex, mu: complex, separation: np.ndarray) -> np.ndarray:
    s = float(np.linalg.norm(separation))
    rhat = separation / s
    qs = q * s
    scalar = cmath.exp(1j * qs) / (4.0 * math.pi * s)
    a = 1.0 + 1j / qs - 1.0 / (qs * qs)
    b = -1.0 - 3j / qs + 3.0 / (qs * qs)
    eye = np.eye(3, dtype=complex)
    outer = np.outer(rhat, rhat).astype(complex)
    return mu * scalar * (a * eye + b * outer)


def bulk_green(
    eps: complex,
    mu: complex,
    omega: float,
    r: Sequence[float],
    r_prime: Sequence[float],
) -> GreenTensorValue:
    """Closed-form bulk Green tensor; r and r_prime must differ."""
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    r = np.asarray(r, dtype=float)
    r_prime = np.asarray(r_prime, dtype=float)
    if r.shape != (3,) or r_prime.shape != (3,):
        raise ValueError("r and r_prime must be 3-vectors")
    separation = r - r_prime
    if not np.any(separation):
        raise ValueError("coincident points are excluded (equal-point part is singular)")
    n = refractive_index(eps, mu).n
    q = 2.0 * math.pi * n * omega
    if q == 0.0:
        raise ValueError("q = n*omega/c vanished; Green tensor undefined")
    components = _dyadic(q, complex(mu), separation)
    return GreenTensorValue(
        r=tuple(map(float, r)),
        r_prime=tuple(map(float, r_prime)),
        omega=float(omega),
        components=components,
    )


def im_green_equal_bulk(eps: complex, mu: complex, omega: float) -> float:
    """Scalar of the equal-point imaginary part for (near-)lossless bulk.

    Im G(r, r, omega) = (omega / 6 pi c) Re[mu n] * I; the reduced value of
    the scalar is omega * Re[mu n] / 3 per lambda_ref.
    """
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    n = refractive_index(eps, mu).n
    return omega * (complex(mu) * n).real / 3.0


@dataclass(frozen=True)
class HighFrequencyReport:
    """Decay of the material/vacuum Green-tensor difference at high frequency."""

    omegas: Tuple[float, ...]
    raw_norms: Tuple[float, ...]  # ||G - G_vacuum||_F
    scaled_norms: Tuple[float, ...]  # (2 pi omega)^2 * ||G - G_vacuum||_F
    raw_decreasing: bool
    scaled_decreasing: bool


def high_frequency_check(
    params: MaterialParams,
    r: Sequence[float],
    r_prime: Sequence[float],
    omegas: Sequence[float] = (10.0, 100.0, 1000.0),
) -> HighFrequencyReport:
    """Check that the bulk tensor collapses onto the vacuum one as omega grows.

    eps and mu approach unity at high frequency, so G - G_vacuum must vanish
    along any increasing frequency sequence.  Both the raw Frobenius norm of
    the difference and the (omega/c)^2-weighted one are reported; only their
    decrease is asserted here, thresholds are left to the caller.
    """
    raw = []
    scaled = []
    for w in omegas:
        resp = optical_response(params, w)
        g_mat = bulk_green(resp.eps, resp.mu, w, r, r_prime).components
        g_vac = bulk_green(1.0, 1.0, w, r, r_prime).components
        diff = float(np.linalg.norm(g_mat - g_vac))
        raw.append(diff)
        scaled.append((2.0 * math.pi * w) ** 2 * diff)
    raw_dec = all(b < a for a, b in zip(raw, raw[1:]))
    scaled_dec = all(b < a for a, b in zip(scaled, scaled[1:]))
    return HighFrequencyReport(
        omegas=tuple(float(w) for w in omegas),
        raw_norms=tuple(raw),
        scaled_norms=tuple(scaled),
        raw_decreasing=raw_dec,
        scaled_decreasing=scaled_dec,
    )
