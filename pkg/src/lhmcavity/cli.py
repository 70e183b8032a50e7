"""Command-line client of the sweep service.

The CLI only reads config files, builds service requests, and writes the
responses as CSV; all physics runs behind the HTTP interface.  By default
requests are dispatched to an in-process instance of the app, so no server
needs to be running; --server-url switches to a remote instance.

Exit codes: 0 success, 2 config/usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from typing import Dict, List, Optional, Sequence, Tuple

import httpx

from .config import ConfigError, load_material_config

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# CSV column order per command; integer-valued columns stay plain integers,
# everything else is written as 17-significant-digit scientific notation so
# doubles round-trip exactly.
COLUMNS: Dict[str, Tuple[str, ...]] = {
    "index": ("omega", "re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n", "left_handed"),
    "cavity": ("omega", "gamma_ratio", "terms_used", "truncation_estimate"),
    "expansion": ("omega", "exact", "leading", "term_r3", "term_r1", "sum3", "abs_err"),
    "dynamics": ("t", "re_cu", "im_cu", "prob", "gamma_markov", "delta_omega"),
}
INTEGER_COLUMNS = {"left_handed", "terms_used"}


class CliError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _format_value(name: str, value) -> str:
    if name in INTEGER_COLUMNS:
        return str(int(value))
    if value is None:
        return "nan"
    return format(float(value), ".16e")


def format_csv(command: str, payload: dict) -> str:
    names = COLUMNS[command]
    columns: List[List] = []
    length = None
    for name in names:
        values = payload[name]
        if not isinstance(values, list):  # per-run scalar repeated on each row
            values = [values] * len(columns[0])
        if length is None:
            length = len(values)
        elif len(values) != length:
            raise CliError(f"service returned ragged column {name!r}", EXIT_NUMERICAL)
        columns.append(values)
    lines = [",".join(names)]
    for row in zip(*columns):
        lines.append(",".join(_format_value(n, v) for n, v in zip(names, row)))
    return "\n".join(lines) + "\n"


async def _post_in_process(path: str, payload: dict) -> httpx.Response:
    from .service import app

    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://lhmcavity.internal", timeout=None
    ) as client:
        return await client.post(path, json=payload)


def post_request(path: str, payload: dict, server_url: Optional[str]) -> dict:
    try:
        if server_url is None:
            response = asyncio.run(_post_in_process(path, payload))
        else:
            with httpx.Client(base_url=server_url, timeout=600.0) as client:
                response = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        raise CliError(f"request failed: {exc}", EXIT_CONFIG) from exc
    if response.status_code >= 500:
        raise CliError(_error_detail(response), EXIT_NUMERICAL)
    if response.status_code >= 400:
        raise CliError(_error_detail(response), EXIT_CONFIG)
    return response.json()


def _error_detail(response: httpx.Response) -> str:
    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = None
    return f"service error ({response.status_code}): {detail or response.text}"


def _material_payload(config_path: str) -> dict:
    try:
        return load_material_config(config_path)
    except OSError as exc:
        raise CliError(f"cannot read config: {exc}", EXIT_CONFIG) from exc
    except ConfigError as exc:
        raise CliError(str(exc), EXIT_CONFIG) from exc


def _write_output(path: str, text: str) -> None:
    # Build first, write once: a failed run never leaves a partial file.
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise CliError(f"cannot write output: {exc}", EXIT_CONFIG) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lhmcavity",
        description="Sweeps of material response and cavity decay rates, written as CSV.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, sweep: bool = True) -> None:
        p.add_argument("--config", required=True, help="material config file")
        p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--server-url", default=None, help="remote service URL (default: in-process)")
        if sweep:
            p.add_argument("--omega-min", type=float, required=True)
            p.add_argument("--omega-max", type=float, required=True)
            p.add_argument("--steps", type=int, required=True)

    p_index = sub.add_parser("index", help="eps, mu, refractive index, left-handed flag vs frequency")
    common(p_index)

    p_cavity = sub.add_parser("cavity", help="decay-rate ratio vs frequency")
    common(p_cavity)
    p_cavity.add_argument("--radius", type=float, required=True, help="cavity radius, lambda_ref")
    p_cavity.add_argument("--position", type=float, default=0.0, help="atom radial position")
    p_cavity.add_argument("--orientation", choices=("radial", "tangential"), default="radial")
    p_cavity.add_argument("--tol", type=float, default=1e-10, help="series truncation tolerance")

    p_exp = sub.add_parser("expansion", help="small-radius expansion vs the exact center rate")
    common(p_exp)
    p_exp.add_argument("--radius", type=float, required=True)

    p_dyn = sub.add_parser("dynamics", help="non-Markovian decay of the upper-state amplitude")
    common(p_dyn, sweep=False)
    p_dyn.add_argument("--radius", type=float, required=True)
    p_dyn.add_argument("--omega-a", type=float, required=True, help="bare transition frequency")
    p_dyn.add_argument("--band-lo", type=float, required=True)
    p_dyn.add_argument("--band-hi", type=float, required=True)
    p_dyn.add_argument("--band-steps", type=int, default=1500)
    p_dyn.add_argument("--tmax", type=float, required=True, help="units 1/Gamma0")
    p_dyn.add_argument("--dt", type=float, required=True)
    p_dyn.add_argument(
        "--gamma0",
        type=float,
        default=1e-3,
        help="Gamma0(omega_ref)/omega_ref coupling scale",
    )
    return parser


def _request_payload(args: argparse.Namespace) -> dict:
    material = _material_payload(args.config)
    if args.command == "index":
        return {
            "material": material,
            "omega_min": args.omega_min,
            "omega_max": args.omega_max,
            "steps": args.steps,
        }
    if args.command == "cavity":
        return {
            "material": material,
            "omega_min": args.omega_min,
            "omega_max": args.omega_max,
            "steps": args.steps,
            "radius": args.radius,
            "position": args.position,
            "orientation": args.orientation,
            "tol": args.tol,
        }
    if args.command == "expansion":
        return {
            "material": material,
            "omega_min": args.omega_min,
            "omega_max": args.omega_max,
            "steps": args.steps,
            "radius": args.radius,
        }
    return {
        "material": material,
        "radius": args.radius,
        "omega_a": args.omega_a,
        "band_lo": args.band_lo,
        "band_hi": args.band_hi,
        "band_steps": args.band_steps,
        "t_max": args.tmax,
        "dt": args.dt,
        "coupling": args.gamma0,
    }


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = _request_payload(args)
        body = post_request(f"/{args.command}", payload, args.server_url)
        csv_text = format_csv(args.command, body)
        _write_output(args.out, csv_text)
    except CliError as exc:
        print(f"lhmcavity: error: {exc}", file=sys.stderr)
        return exc.exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
