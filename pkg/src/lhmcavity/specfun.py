"""Spherical Bessel and Hankel functions of complex argument.

The cavity series needs j_n(z) and h_n^(1)(z), plus the derivatives of the
Riccati functions z*j_n(z) and z*h_n^(1)(z), for complex z and orders up to
a few hundred.  h_n^(1) grows with order, so upward recurrence is stable.
j_n is the minimal solution once n exceeds |z|; there the upward recurrence
blows up and a downward (Miller) pass with end normalization is used
instead.
"""

from __future__ import annotations

import cmath
from typing import Tuple

import numpy as np

__all__ = [
    "MAX_ORDER",
    "sph_bessel_j",
    "sph_hankel1",
    "sph_jn_all",
    "sph_h1n_all",
    "riccati_derivatives",
    "riccati_h1_logderiv_all",
]

MAX_ORDER = 512

# exp(|Im z|) must stay inside double range
_IM_LIMIT = 700.0

_RESCALE_THRESHOLD = 1e250
_RESCALE_FACTOR = 1e-250


def _check_argument(z: complex) -> complex:
    z = complex(z)
    if abs(z.imag) > _IM_LIMIT:
        raise OverflowError(
            f"|Im z| = {abs(z.imag):g} exceeds {_IM_LIMIT:g}; exp(|Im z|) overflows"
        )
    return z


def _check_order(n: int) -> int:
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds supported maximum {MAX_ORDER}")
    return int(n)


def _j0_j1(z: complex) -> Tuple[complex, complex]:
    j0 = cmath.sin(z) / z
    j1 = j0 / z - cmath.cos(z) / z
    return j0, j1


def _jn_upward(nmax: int, z: complex) -> np.ndarray:
    out = np.empty(nmax + 1, dtype=complex)
    j0, j1 = _j0_j1(z)
    out[0] = j0
    if nmax >= 1:
        out[1] = j1
    for k in range(1, nmax):
        out[k + 1] = (2 * k + 1) / z * out[k] - out[k - 1]
    return out


def _jn_miller(nmax: int, z: complex) -> np.ndarray:
    # Start far enough above both nmax and |z| that the minimal solution
    # dominates by the time the recursion reaches nmax.
    start = nmax + 20 + int(2.0 * np.sqrt(nmax + 1))
    fk1 = 0.0 + 0.0j  # f_{start+1}
    fk = 1e-30 + 0.0j  # f_{start}
    out = np.zeros(nmax + 1, dtype=complex)
    if start <= nmax:  # pragma: no cover - start always exceeds nmax
        out[start] = fk
    for k in range(start, 0, -1):
        fkm1 = (2 * k + 1) / z * fk - fk1
        fk1 = fk
        fk = fkm1
        if k - 1 <= nmax:
            out[k - 1] = fk
        if abs(fk.real) > _RESCALE_THRESHOLD or abs(fk.imag) > _RESCALE_THRESHOLD:
            fk *= _RESCALE_FACTOR
            fk1 *= _RESCALE_FACTOR
            if k - 1 <= nmax:
                out[k - 1 :] *= _RESCALE_FACTOR
            else:
                out *= _RESCALE_FACTOR
    j0, j1 = _j0_j1(z)
    # Normalize against whichever closed form is farther from a zero.
    if abs(j0) >= abs(j1):
        scale = j0 / out[0]
    else:
        scale = j1 / out[1]
    return out * scale


def sph_jn_all(nmax: int, z: complex) -> np.ndarray:
    """j_0(z) ... j_nmax(z) as one array."""
    nmax = _check_order(nmax)
    z = _check_argument(z)
    if z == 0.0:
        out = np.zeros(nmax + 1, dtype=complex)
        out[0] = 1.0
        return out
    if nmax <= abs(z):
        return _jn_upward(nmax, z)
    return _jn_miller(nmax, z)


def sph_h1n_all(nmax: int, z: complex) -> np.ndarray:
    """h_0^(1)(z) ... h_nmax^(1)(z) as one array (z must be nonzero)."""
    nmax = _check_order(nmax)
    z = _check_argument(z)
    if z == 0.0:
        raise ValueError("h_n^(1) is singular at z = 0")
    out = np.empty(nmax + 1, dtype=complex)
    expz = cmath.exp(1j * z)
    out[0] = -1j * expz / z
    if nmax >= 1:
        out[1] = -expz * (1.0 + 1j / z) / z
    for k in range(1, nmax):
        out[k + 1] = (2 * k + 1) / z * out[k] - out[k - 1]
    return out


def sph_bessel_j(n: int, z: complex) -> complex:
    """Spherical Bessel function j_n(z); regular at z = 0."""
    return complex(sph_jn_all(n, z)[n])


def sph_hankel1(n: int, z: complex) -> complex:
    """Spherical Hankel function of the first kind h_n^(1)(z)."""
    return complex(sph_h1n_all(n, z)[n])


def riccati_h1_logderiv_all(nmax: int, z: complex) -> np.ndarray:
    """[z h_n(z)]' / [z h_n(z)] for n = 0..nmax, free of exponentials.

    h_n^(1) carries exp(iz), which under- or overflows double range once
    |Im z| grows past ~700 even though the logarithmic derivative stays
    O(1).  The ratio h_n/h_{n-1} obeys the stable upward recurrence
    r_n = (2n-1)/z - 1/r_{n-1} with r_1 = 1/z - i, and the Riccati
    logarithmic derivative follows as 1/r_n - n/z.  For passive media the
    argument satisfies Im z >= 0, which keeps z away from the zeros of
    h_n^(1) (all located in the lower half-plane).
    """
    nmax = _check_order(nmax)
    z = complex(z)
    if z == 0.0:
        raise ValueError("h_n^(1) is singular at z = 0")
    out = np.empty(nmax + 1, dtype=complex)
    out[0] = 1j  # [z h_0]' / [z h_0] = i exactly
    ratio = 1.0 / z - 1j
    for k in range(1, nmax + 1):
        if k > 1:
            ratio = (2 * k - 1) / z - 1.0 / ratio
        out[k] = 1.0 / ratio - k / z
    return out


def riccati_derivatives(n: int, z: complex) -> Tuple[complex, complex]:
    """Derivatives d/dz of z*j_n(z) and z*h_n^(1)(z).

    Uses [z f_n(z)]' = z f_{n-1}(z) - n f_n(z), with f_{-1} supplied by the
    closed forms cos(z)/z and exp(iz)/z for the n = 0 case.
    """
    n = _check_order(n)
    z = _check_argument(z)
    if z == 0.0:
        raise ValueError("Riccati derivatives need z != 0")
    j = sph_jn_all(n, z)
    h = sph_h1n_all(n, z)
    if n == 0:
        dj = cmath.cos(z)
        dh = cmath.exp(1j * z)
    else:
        dj = z * j[n - 1] - n * j[n]
        dh = z * h[n - 1] - n * h[n]
    return complex(dj), complex(dh)
