"""HTTP service exposing the sweep drivers.

Run with: uvicorn lhmcavity.service:app

Request validation errors surface as 422 responses; numerical failures
(series breakdown, singular boundary matching, unstable time stepping) as
500 responses with a human-readable detail string.
"""

from __future__ import annotations

import functools

from fastapi import FastAPI, HTTPException

from . import __version__
from .models import (
    CavityRequest,
    CavityResponse,
    DynamicsRequest,
    DynamicsResponse,
    ExpansionRequest,
    ExpansionResponse,
    IndexRequest,
    IndexResponse,
)
from .runs import cavity_sweep, dynamics_run, expansion_sweep, index_sweep

app = FastAPI(
    title="lhmcavity",
    version=__version__,
    description=(
        "Material response and spontaneous-decay sweeps for an atom in a "
        "spherical vacuum cavity inside a magnetodielectric host"
    ),
)


def _numerics_guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ArithmeticError, OverflowError) as exc:
            raise HTTPException(status_code=500, detail=f"numerical failure: {exc}") from exc
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    return wrapper


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/index", response_model=IndexResponse)
@_numerics_guarded
def index_endpoint(request: IndexRequest) -> IndexResponse:
    columns = index_sweep(
        request.material.to_params(), request.omega_min, request.omega_max, request.steps
    )
    return IndexResponse(**columns)


@app.post("/cavity", response_model=CavityResponse)
@_numerics_guarded
def cavity_endpoint(request: CavityRequest) -> CavityResponse:
    columns = cavity_sweep(
        request.material.to_params(),
        request.radius,
        request.position,
        request.orientation,
        request.omega_min,
        request.omega_max,
        request.steps,
        request.tol,
    )
    return CavityResponse(**columns)


@app.post("/expansion", response_model=ExpansionResponse)
@_numerics_guarded
def expansion_endpoint(request: ExpansionRequest) -> ExpansionResponse:
    columns = expansion_sweep(
        request.material.to_params(),
        request.radius,
        request.omega_min,
        request.omega_max,
        request.steps,
    )
    return ExpansionResponse(**columns)


@app.post("/dynamics", response_model=DynamicsResponse)
@_numerics_guarded
def dynamics_endpoint(request: DynamicsRequest) -> DynamicsResponse:
    payload = dynamics_run(
        request.material.to_params(),
        request.radius,
        request.omega_a,
        (request.band_lo, request.band_hi),
        request.band_steps,
        request.t_max,
        request.dt,
        request.coupling,
    )
    return DynamicsResponse(**payload)
