"""Request/response schemas of the sweep service."""

from __future__ import annotations

import math
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .materials import MaterialParams

__all__ = [
    "ResonanceSection",
    "MaterialSpec",
    "IndexRequest",
    "IndexResponse",
    "CavityRequest",
    "CavityResponse",
    "ExpansionRequest",
    "ExpansionResponse",
    "DynamicsRequest",
    "DynamicsResponse",
]


class ResonanceSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    omega_p: float = Field(ge=0.0, description="coupling strength, units omega_ref")
    omega_t: float = Field(gt=0.0, description="transverse resonance frequency")
    gamma: float = Field(ge=0.0, description="absorption parameter")


class MaterialSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    electric: ResonanceSection
    magnetic: ResonanceSection

    def to_params(self) -> MaterialParams:
        return MaterialParams(
            omega_pe=self.electric.omega_p,
            omega_te=self.electric.omega_t,
            gamma_e=self.electric.gamma,
            omega_pm=self.magnetic.omega_p,
            omega_tm=self.magnetic.omega_t,
            gamma_m=self.magnetic.gamma,
        )


class _SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    material: MaterialSpec
    omega_min: float = Field(gt=0.0)
    omega_max: float = Field(gt=0.0)
    steps: int = Field(ge=1, le=100_000)

    @model_validator(mode="after")
    def _check_range(self):
        if not self.omega_min < self.omega_max:
            raise ValueError("omega_min must be smaller than omega_max")
        return self


class IndexRequest(_SweepRequest):
    pass


class IndexResponse(BaseModel):
    omega: List[float]
    re_eps: List[float]
    im_eps: List[float]
    re_mu: List[float]
    im_mu: List[float]
    re_n: List[float]
    im_n: List[float]
    left_handed: List[int]


class CavityRequest(_SweepRequest):
    radius: float = Field(gt=0.0, description="cavity radius, units lambda_ref")
    position: float = Field(default=0.0, ge=0.0, description="atom radial position")
    orientation: Literal["radial", "tangential"] = "radial"
    tol: float = Field(default=1e-10, gt=0.0)

    @model_validator(mode="after")
    def _check_geometry(self):
        if self.position >= self.radius:
            raise ValueError("position must be strictly smaller than radius")
        return self


class CavityResponse(BaseModel):
    omega: List[float]
    gamma_ratio: List[float]
    terms_used: List[int]
    truncation_estimate: List[float]


class ExpansionRequest(_SweepRequest):
    radius: float = Field(gt=0.0)

    @model_validator(mode="after")
    def _check_expansion_domain(self):
        if 2.0 * math.pi * self.radius * self.omega_max >= 1.0:
            raise ValueError("expansion requires 2*pi*radius*omega_max < 1")
        return self


class ExpansionResponse(BaseModel):
    """Expansion columns are null on rows flagged at the 1+2*eps pole."""

    omega: List[float]
    exact: List[float]
    leading: List[Optional[float]]
    term_r3: List[Optional[float]]
    term_r1: List[Optional[float]]
    sum3: List[Optional[float]]
    abs_err: List[Optional[float]]


class DynamicsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    material: MaterialSpec
    radius: float = Field(gt=0.0)
    omega_a: float = Field(gt=0.0)
    band_lo: float = Field(gt=0.0)
    band_hi: float = Field(gt=0.0)
    band_steps: int = Field(default=1500, ge=2, le=100_000)
    t_max: float = Field(gt=0.0)
    dt: float = Field(gt=0.0)
    coupling: float = Field(
        default=1e-3,
        gt=0.0,
        description="Gamma0(omega_ref)/omega_ref, the rate/frequency unit ratio",
    )

    @model_validator(mode="after")
    def _check_band(self):
        if not self.band_lo < self.omega_a < self.band_hi:
            raise ValueError("omega_a must lie strictly inside (band_lo, band_hi)")
        if self.dt > self.t_max:
            raise ValueError("dt must not exceed t_max")
        # the convolution is quadratic in the step count
        if self.t_max / self.dt > 200_000:
            raise ValueError("t_max/dt must not exceed 200000 time steps")
        return self


class DynamicsResponse(BaseModel):
    t: List[float]
    re_cu: List[float]
    im_cu: List[float]
    prob: List[float]
    gamma_markov: float
    delta_omega: float
    omega_tilde: float
    shift_iterations: int
