"""Plain-text ``key = value`` parameter files.

Power-like quantities must carry a unit suffix (``omega_s_db = 30`` or
``omega_s_lin = 1000``); dimensionless ones use the bare field name
(``rho_s = 0.8``). ``#`` starts a comment. Unknown keys are rejected.

Keys that are not given keep the ``table1`` preset value, except that an
average SNR left unset follows its link power (unit-mean fading).
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Iterable, Mapping

from .channel import TABLE1, SystemParams, db_to_lin

__all__ = [
    "ConfigError",
    "POWER_FIELDS",
    "SCALAR_FIELDS",
    "PRESETS",
    "parse_key",
    "parse_text",
    "build_params",
    "load_params",
    "dump_config",
]

POWER_FIELDS = ("omega_s", "omega_e", "gbar_s", "gbar_e", "n0", "sigma2_s", "sigma2_e")
SCALAR_FIELDS = (
    "rho_s", "rho_e", "delta_s", "delta_e", "m_s", "m_e", "n_eves", "r_s", "zeta_s", "zeta_e",
)
PRESETS = {"table1": TABLE1}


class ConfigError(ValueError):
    """Malformed configuration or unknown key."""


def parse_key(key: str, raw: str) -> tuple[str, float]:
    """Map one ``key``/``value`` pair to ``(field, linear value)``."""
    key = key.strip()
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"value for {key!r} is not a number: {raw!r}") from None
    for sfx in ("_db", "_lin"):
        if key.endswith(sfx) and key[: -len(sfx)] in POWER_FIELDS:
            name = key[: -len(sfx)]
            return name, db_to_lin(value) if sfx == "_db" else value
    if key in SCALAR_FIELDS:
        if key == "n_eves":
            if value != int(value):
                raise ConfigError(f"n_eves must be an integer, got {raw!r}")
            return key, int(value)
        return key, value
    if key in POWER_FIELDS:
        raise ConfigError(f"key {key!r} needs a unit suffix: {key}_db or {key}_lin")
    raise ConfigError(f"unknown configuration key {key!r}")


def parse_text(text: str, source: str = "<config>") -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        name, value = parse_key(key, raw.strip())
        values[name] = value
    return values


def build_params(values: Mapping, base: SystemParams = TABLE1) -> SystemParams:
    merged = dataclasses.asdict(base)
    for side in ("s", "e"):
        omega, gbar = f"omega_{side}", f"gbar_{side}"
        if omega in values and gbar not in values:
            merged[gbar] = values[omega] * base.__getattribute__(gbar) / base.__getattribute__(omega)
    merged.update(values)
    try:
        return SystemParams(**merged)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_params(config: str = "table1", overrides: Iterable[str] = ()) -> SystemParams:
    """Resolve a preset name or config path plus ``key=value`` overrides."""
    if config in PRESETS:
        values = {}
        base = PRESETS[config]
    else:
        path = Path(config)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {config!r}: {exc.strerror}") from None
        values = parse_text(text, str(path))
        base = TABLE1
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        name, value = parse_key(key, raw.strip())
        values[name] = value
    return build_params(values, base)


def dump_config(p: SystemParams) -> str:
    """Exact round-trippable text form (linear units, repr precision)."""
    lines = ["# swipt-secrecy parameters (linear units)"]
    for name in POWER_FIELDS:
        lines.append(f"{name}_lin = {getattr(p, name)!r}")
    for name in SCALAR_FIELDS:
        lines.append(f"{name} = {getattr(p, name)!r}")
    return "\n".join(lines) + "\n"
