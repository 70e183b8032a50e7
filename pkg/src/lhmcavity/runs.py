"""Sweep drivers behind the service endpoints.

Each driver turns validated inputs into the column arrays of one output
table.  Rows are produced in ascending frequency (or time) order and all
numeric work is delegated to the physics modules.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np

from .cavity import (
    CavityConfig,
    ExpansionPoleError,
    SeriesConvergenceError,
    rate_center,
    rate_center_expansion,
    rate_radial,
    rate_tangential,
)
from .dynamics import (
    markov_rate_and_shift,
    memory_kernel,
    self_consistent_shift,
    spectral_density,
    volterra_solve,
)
from .materials import MaterialParams, is_left_handed, optical_response

__all__ = ["index_sweep", "cavity_sweep", "expansion_sweep", "dynamics_run"]


def _grid(omega_min: float, omega_max: float, steps: int) -> np.ndarray:
    return np.linspace(omega_min, omega_max, steps + 1)


def index_sweep(
    material: MaterialParams, omega_min: float, omega_max: float, steps: int
) -> Dict[str, List]:
    """Material response table: eps, mu, n, and the left-handed flag."""
    omegas = _grid(omega_min, omega_max, steps)
    rows: Dict[str, List] = {
        key: []
        for key in ("omega", "re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n", "left_handed")
    }
    for w in omegas:
        resp = optical_response(material, float(w))
        rows["omega"].append(float(w))
        rows["re_eps"].append(resp.eps.real)
        rows["im_eps"].append(resp.eps.imag)
        rows["re_mu"].append(resp.mu.real)
        rows["im_mu"].append(resp.mu.imag)
        rows["re_n"].append(resp.n.real)
        rows["im_n"].append(resp.n.imag)
        rows["left_handed"].append(int(is_left_handed(resp.n)))
    return rows


def cavity_sweep(
    material: MaterialParams,
    radius: float,
    position: float,
    orientation: str,
    omega_min: float,
    omega_max: float,
    steps: int,
    tol: float,
) -> Dict[str, List]:
    """Decay-rate sweep; non-converged rows keep their partial result and are
    recognizable by truncation_estimate > tol."""
    cfg = CavityConfig(radius=radius, r_atom=position, orientation=orientation, host=material)
    omegas = _grid(omega_min, omega_max, steps)
    rows: Dict[str, List] = {
        key: [] for key in ("omega", "gamma_ratio", "terms_used", "truncation_estimate")
    }
    for w in omegas:
        w = float(w)
        try:
            if position == 0.0:
                result = rate_center(w, cfg)
            elif orientation == "radial":
                result = rate_radial(w, cfg, tol)
            else:
                result = rate_tangential(w, cfg, tol)
        except SeriesConvergenceError as exc:
            result = exc.partial
        rows["omega"].append(w)
        rows["gamma_ratio"].append(float(result.ratio))
        rows["terms_used"].append(int(result.terms_used))
        rows["truncation_estimate"].append(float(result.truncation_estimate))
    return rows


def expansion_sweep(
    material: MaterialParams,
    radius: float,
    omega_min: float,
    omega_max: float,
    steps: int,
) -> Dict[str, List]:
    """Small-radius expansion vs the exact center rate.

    Rows sitting on the 1 + 2*eps = 0 pole of the expansion keep the exact
    value and carry null (NaN in the CSV) in the expansion columns as an
    in-band flag.
    """
    cfg = CavityConfig(radius=radius, r_atom=0.0, orientation="radial", host=material)
    omegas = _grid(omega_min, omega_max, steps)
    rows: Dict[str, List] = {
        key: [] for key in ("omega", "exact", "leading", "term_r3", "term_r1", "sum3", "abs_err")
    }
    for w in omegas:
        w = float(w)
        exact = rate_center(w, cfg).ratio
        try:
            leading, term_r3, term_r1, total = rate_center_expansion(w, cfg)
            abs_err = abs(total - exact)
        except ExpansionPoleError:
            leading = term_r3 = term_r1 = total = abs_err = None
        rows["omega"].append(w)
        rows["exact"].append(float(exact))
        rows["leading"].append(leading)
        rows["term_r3"].append(term_r3)
        rows["term_r1"].append(term_r1)
        rows["sum3"].append(total)
        rows["abs_err"].append(abs_err)
    return rows


def dynamics_run(
    material: MaterialParams,
    radius: float,
    omega_a: float,
    band: Tuple[float, float],
    band_steps: int,
    t_max: float,
    dt: float,
    coupling: float,
) -> Dict[str, object]:
    """Non-Markovian decay of an atom at the cavity center.

    coupling = Gamma0(omega_ref)/omega_ref converts between the frequency
    units of the spectral density and the rate units of the time axis; the
    kernel is sampled accordingly at tau/coupling.
    """
    if coupling <= 0.0:
        raise ValueError("coupling must be positive")
    cfg = CavityConfig(radius=radius, r_atom=0.0, orientation="radial", host=material)
    sd = spectral_density(cfg, band, band_steps)
    omega_tilde, iterations = self_consistent_shift(sd, omega_a, coupling)
    gamma, delta = markov_rate_and_shift(sd, omega_tilde)

    steps = int(round(t_max / dt))
    tau = np.arange(steps + 1) * dt
    kernel = memory_kernel(sd, omega_tilde, tau / coupling) / coupling
    trajectory = volterra_solve(kernel, delta, t_max, dt, gamma_markov=gamma)
    prob = np.abs(trajectory.cu) ** 2
    return {
        "t": trajectory.times.tolist(),
        "re_cu": trajectory.cu.real.tolist(),
        "im_cu": trajectory.cu.imag.tolist(),
        "prob": prob.tolist(),
        "gamma_markov": float(gamma),
        "delta_omega": float(delta),
        "omega_tilde": float(omega_tilde),
        "shift_iterations": int(iterations),
    }
