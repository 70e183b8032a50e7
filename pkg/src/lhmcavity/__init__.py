"""Decay rates of a two-level atom in a spherical vacuum cavity embedded in
a dispersing, absorbing magnetodielectric (including left-handed) medium.

Reduced units throughout: frequencies in omega_ref, lengths in
lambda_ref = 2*pi*c/omega_ref, decay rates as ratios to the free-space rate
at the transition frequency.
"""

from .materials import (
    BandStructure,
    GainMediumError,
    MaterialParams,
    OpticalResponse,
    PoleError,
    VACUUM,
    band_structure,
    is_left_handed,
    optical_response,
    permeability,
    permittivity,
    refractive_index,
)
from .green import GreenTensorValue, bulk_green, high_frequency_check, im_green_equal_bulk
from .cavity import (
    CavityConfig,
    MieCoefficients,
    RateResult,
    SeriesConvergenceError,
    mie_coefficients,
    rate_bulk_lossless,
    rate_center,
    rate_center_expansion,
    rate_radial,
    rate_small_cavity_absorptive,
    rate_tangential,
)
from .dynamics import (
    DecayTrajectory,
    SpectralDensity,
    VolterraInstabilityError,
    markov_rate_and_shift,
    memory_kernel,
    spectral_density,
    volterra_solve,
)

__version__ = "0.1.0"
