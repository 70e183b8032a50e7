"""Flat key-value material config files.

Two sections, [electric] and [magnetic], each with exactly the keys
omega_p, omega_t, gamma (frequencies in omega_ref).  Blank lines and
'#' comments are ignored; anything else unknown is an error, so a typo
never silently falls back to a default.
"""

from __future__ import annotations

from typing import Dict

__all__ = ["ConfigError", "parse_material_config", "load_material_config"]

_SECTIONS = ("electric", "magnetic")
_KEYS = ("omega_p", "omega_t", "gamma")


class ConfigError(ValueError):
    """Malformed material config file."""


def parse_material_config(text: str, source: str = "<config>") -> Dict[str, Dict[str, float]]:
    """Parse config text into {'electric': {...}, 'magnetic': {...}}."""
    sections: Dict[str, Dict[str, float]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise ConfigError(f"{source}:{lineno}: unknown section [{name}]")
            if name in sections:
                raise ConfigError(f"{source}:{lineno}: duplicate section [{name}]")
            sections[name] = {}
            current = name
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        if current is None:
            raise ConfigError(f"{source}:{lineno}: key outside any section")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in sections[current]:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r} in [{current}]")
        try:
            sections[current][key] = float(value.strip())
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: invalid number {value.strip()!r}") from None
    for name in _SECTIONS:
        if name not in sections:
            raise ConfigError(f"{source}: missing section [{name}]")
        for key in _KEYS:
            if key not in sections[name]:
                raise ConfigError(f"{source}: missing key {key!r} in [{name}]")
    return sections


def load_material_config(path: str) -> Dict[str, Dict[str, float]]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_material_config(handle.read(), source=path)
