import math

import numpy as np
import pytest

from lhmcavity.cavity import CavityConfig, rate_center
from lhmcavity.dynamics import (
    SpectralDensity,
    VolterraInstabilityError,
    markov_rate_and_shift,
    memory_kernel,
    self_consistent_shift,
    spectral_density,
    volterra_solve,
)
from lhmcavity.materials import VACUUM

from conftest import host_with, overlap_params


def flat_density(center: float, half_width: float, level: float, steps: int = 4001):
    omegas = np.linspace(center - half_width, center + half_width, steps)
    return SpectralDensity(omegas=omegas, values=np.full(steps, level))


class TestSpectralDensity:
    def test_vacuum_is_cubic(self):
        cfg = CavityConfig(radius=1.0, r_atom=0.0, orientation="radial", host=VACUUM)
        sd = spectral_density(cfg, (0.5, 2.0), 31)
        assert np.allclose(sd.values, sd.omegas ** 3, rtol=1e-12)

    def test_maxima_align_with_rate_peaks(self):
        cfg = CavityConfig(radius=10.0, r_atom=0.0, orientation="radial",
                           host=overlap_params())
        sd = spectral_density(cfg, (1.03, 1.09), 240)
        rates = np.array([rate_center(w, cfg).ratio for w in sd.omegas])
        sd_peaks = [i for i in range(1, sd.omegas.size - 1)
                    if sd.values[i] > sd.values[i - 1] and sd.values[i] > sd.values[i + 1]]
        rate_peaks = [i for i in range(1, sd.omegas.size - 1)
                      if rates[i] > rates[i - 1] and rates[i] > rates[i + 1]]
        assert sd_peaks
        for i in sd_peaks:
            assert min(abs(i - j) for j in rate_peaks) <= 2

    def test_off_center_config_uses_orientation(self):
        cfg = CavityConfig(radius=1.0, r_atom=0.3, orientation="tangential", host=VACUUM)
        sd = spectral_density(cfg, (0.8, 1.2), 9)
        assert np.allclose(sd.values, sd.omegas ** 3, rtol=1e-12)

    def test_nonnegative_for_random_absorbing_hosts(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            host = host_with(
                complex(rng.uniform(-6, 6), rng.uniform(0.05, 2.0)),
                complex(rng.uniform(-2, 2), rng.uniform(0.05, 0.8)),
            )
            cfg = CavityConfig(radius=rng.uniform(0.1, 5.0), r_atom=0.0,
                               orientation="radial", host=host)
            sd = spectral_density(cfg, (0.7, 1.4), 25)
            assert np.all(sd.values >= 0.0)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            SpectralDensity(omegas=np.array([1.0, 0.9]), values=np.array([1.0, 1.0]))
        with pytest.raises(ValueError):
            SpectralDensity(omegas=np.array([1.0, 1.1]), values=np.array([1.0, -0.1]))


class TestMarkovRateAndShift:
    def test_constant_density_symmetric_band(self):
        sd = flat_density(1.0, 0.2, 0.7)
        gamma, delta = markov_rate_and_shift(sd, 1.0)
        assert gamma == pytest.approx(0.7, rel=1e-12)
        assert delta == pytest.approx(0.0, abs=1e-12)

    def test_linear_density_analytic_shift(self):
        slope, level, width = 0.4, 1.0, 0.15
        omegas = np.linspace(1.0 - width, 1.0 + width, 3001)
        sd = SpectralDensity(omegas=omegas, values=level + slope * (omegas - 1.0))
        gamma, delta = markov_rate_and_shift(sd, 1.0)
        assert gamma == pytest.approx(level, rel=1e-12)
        assert delta == pytest.approx(slope * 2.0 * width / (2.0 * math.pi), rel=1e-10)

    def test_quadratic_density_analytic_value(self):
        # PV integral of a quadratic about an off-center point, closed form
        a, b, c = 0.3, -0.1, 1.2
        lo, hi, wa = 0.6, 1.5, 1.0
        omegas = np.linspace(lo, hi, 2251)
        u = omegas - wa
        sd = SpectralDensity(omegas=omegas, values=a * u * u + b * u + c)
        _, delta = markov_rate_and_shift(sd, wa)
        expected = (
            a * ((hi - wa) ** 2 - (lo - wa) ** 2) / 2.0
            + b * (hi - lo)
            + c * math.log((hi - wa) / (wa - lo))
        ) / (2.0 * math.pi)
        assert delta == pytest.approx(expected, rel=1e-12)

    def test_subtraction_point_on_grid_node(self):
        sd = flat_density(1.0, 0.2, 0.5, steps=401)  # 1.0 is a node
        gamma, delta = markov_rate_and_shift(sd, 1.0)
        assert gamma == pytest.approx(0.5)
        assert delta == pytest.approx(0.0, abs=1e-12)

    def test_outside_band_rejected(self):
        sd = flat_density(1.0, 0.1, 1.0)
        with pytest.raises(ValueError):
            markov_rate_and_shift(sd, 1.2)


class TestMemoryKernel:
    def test_boxcar_closed_form(self):
        level, half = 0.8, 0.3
        sd = flat_density(1.0, half, level, steps=6001)
        taus = np.array([0.0, 1.0, 3.7, 12.0])
        kernel = memory_kernel(sd, 1.0, taus)
        width = 2.0 * half
        assert kernel[0] == pytest.approx(-level * width / (2.0 * math.pi), rel=1e-10)
        for k, tau in zip(kernel[1:], taus[1:]):
            expected = -(level / math.pi) * math.sin(width * tau / 2.0) / tau
            assert k == pytest.approx(expected, rel=1e-6, abs=1e-12)

    def test_zero_lag_is_negative_real(self):
        sd = flat_density(1.0, 0.25, 1.3)
        k0 = memory_kernel(sd, 1.1, np.array([0.0]))[0]
        assert k0.imag == pytest.approx(0.0, abs=1e-14)
        assert k0.real < 0.0

    def test_symmetric_density_gives_real_kernel(self):
        sd = flat_density(1.0, 0.2, 0.9)
        kernel = memory_kernel(sd, 1.0, np.linspace(0.0, 20.0, 57))
        assert np.max(np.abs(kernel.imag)) <= 1e-12


class TestVolterraSolve:
    def test_zero_kernel_is_constant(self):
        steps = 200
        kernel = np.zeros(steps + 1, dtype=complex)
        trajectory = volterra_solve(kernel, 0.0, 2.0, 0.01)
        assert np.allclose(trajectory.cu, 1.0)

    def test_markov_regime_matches_exponential(self):
        coupling = 1e-3
        level = 1.0
        half = 100.0 * level * coupling
        sd = flat_density(1.0, half, level)
        gamma, delta = markov_rate_and_shift(sd, 1.0)
        dt, t_max = 0.002, 5.0
        taus = np.arange(int(round(t_max / dt)) + 1) * dt
        kernel = memory_kernel(sd, 1.0, taus / coupling) / coupling
        trajectory = volterra_solve(kernel, delta, t_max, dt, gamma_markov=gamma)
        amplitude = np.abs(trajectory.cu)
        reference = np.exp(-0.5 * gamma * trajectory.times)
        assert np.max(np.abs(amplitude - reference) / reference) <= 0.01

    def test_probability_never_exceeds_one(self):
        coupling = 2e-3
        sd = flat_density(1.0, 0.3, 1.5)
        gamma, delta = markov_rate_and_shift(sd, 1.0)
        dt, t_max = 0.002, 3.0
        taus = np.arange(int(round(t_max / dt)) + 1) * dt
        kernel = memory_kernel(sd, 1.0, taus / coupling) / coupling
        trajectory = volterra_solve(kernel, delta, t_max, dt)
        assert np.max(np.abs(trajectory.cu)) <= 1.0 + 1e-9

    def test_second_order_convergence(self):
        coupling = 1e-3
        sd = flat_density(1.0, 0.1, 1.0)
        _, delta = markov_rate_and_shift(sd, 1.0)
        t_max = 2.0

        def terminal(dt):
            taus = np.arange(int(round(t_max / dt)) + 1) * dt
            kernel = memory_kernel(sd, 1.0, taus / coupling) / coupling
            return abs(volterra_solve(kernel, delta, t_max, dt).cu[-1])

        reference = terminal(0.0005)
        err_coarse = abs(terminal(0.008) - reference)
        err_fine = abs(terminal(0.004) - reference)
        assert err_coarse / err_fine > 3.0  # ~4 for a second-order rule

    def test_instability_detected(self):
        # a gain-like (positive) kernel drives |C_u| beyond the guard
        steps = 4000
        kernel = np.full(steps + 1, 5.0, dtype=complex)
        with pytest.raises(VolterraInstabilityError):
            volterra_solve(kernel, 0.0, 40.0, 0.01)

    def test_kernel_length_checked(self):
        with pytest.raises(ValueError):
            volterra_solve(np.zeros(3, dtype=complex), 0.0, 1.0, 0.01)


class TestSelfConsistentShift:
    def test_converges_for_small_cavity(self):
        cfg = CavityConfig(radius=0.05, r_atom=0.0, orientation="radial",
                           host=overlap_params())
        sd = spectral_density(cfg, (0.8, 1.4), 1200)
        omega_tilde, iterations = self_consistent_shift(sd, 1.1, coupling=1e-3)
        assert iterations < 50
        gamma, delta = markov_rate_and_shift(sd, omega_tilde)
        assert omega_tilde == pytest.approx(1.1 - 1e-3 * delta, rel=1e-9)

    def test_zero_coupling_is_identity(self):
        sd = flat_density(1.0, 0.2, 1.0)
        omega_tilde, _ = self_consistent_shift(sd, 1.05, coupling=0.0)
        assert omega_tilde == 1.05
