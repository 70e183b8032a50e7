"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import math

import pytest

from lhmcavity.materials import MaterialParams


def overlap_params(gamma: float = 0.001) -> MaterialParams:
    """Canonical overlapping-gap magnetodielectric (the bundled config set)."""
    return MaterialParams(
        omega_pe=0.75, omega_te=1.03, gamma_e=gamma,
        omega_pm=0.43, omega_tm=1.0, gamma_m=gamma,
    )


def dielectric_params(gamma: float = 0.001) -> MaterialParams:
    return MaterialParams(omega_pe=0.75, omega_te=1.03, gamma_e=gamma)


def magnetic_params(gamma: float = 0.001) -> MaterialParams:
    return MaterialParams(omega_pm=0.43, omega_tm=1.0, gamma_m=gamma)


def _section_for(target: complex) -> tuple[float, float, float]:
    """Resonance parameters whose response at omega = 1 equals `target`."""
    target = complex(target)
    if target == 1.0:
        return 0.0, 1.0, 0.0
    shift = target - 1.0
    wp_sq = 1.0
    if shift.real < 0.0:
        # keep omega_t^2 = 1 + Re d positive
        wp_sq = min(1.0, 0.5 * abs(shift) ** 2 / (-shift.real))
    d = wp_sq / shift
    omega_t = math.sqrt(1.0 + d.real)
    gamma = -d.imag
    assert gamma >= -1e-15
    return math.sqrt(wp_sq), omega_t, max(gamma, 0.0)


def host_with(eps: complex, mu: complex) -> MaterialParams:
    """Single-resonance host hitting the given eps and mu exactly at omega = 1."""
    wpe, wte, ge = _section_for(eps)
    wpm, wtm, gm = _section_for(mu)
    return MaterialParams(
        omega_pe=wpe, omega_te=wte, gamma_e=ge,
        omega_pm=wpm, omega_tm=wtm, gamma_m=gm,
    )


@pytest.fixture
def canonical():
    return overlap_params()
