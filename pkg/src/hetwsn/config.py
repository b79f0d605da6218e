"""Flat ``key = value`` configuration files.

Keys are dotted with a section prefix::

    # paper topology, canonical radio constants
    sim.strategy = BEENISH
    het.m = 0.5
    radio.eps_mp = 1.3e-15

Blank lines and ``#`` comments are ignored.  Overrides use the same keys.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Iterable

from .election import HeterogeneityParams, Strategy
from .energy import RadioParams
from .simulator import SimConfig


class ConfigError(ValueError):
    """Invalid, unknown or inconsistent configuration."""


_RADIO = {f.name: f.type for f in dataclasses.fields(RadioParams)}
_HET = {f.name: f.type for f in dataclasses.fields(HeterogeneityParams)}
_SIM = ("n_nodes", "field_side", "bs_x", "bs_y", "strategy", "seed", "max_rounds")
_INT_KEYS = {"radio.packet_bits", "sim.n_nodes", "sim.seed", "sim.max_rounds"}

VALID_KEYS = tuple(
    [f"sim.{k}" for k in _SIM] + [f"het.{k}" for k in _HET] + [f"radio.{k}" for k in _RADIO]
)


def _convert(key: str, text: str):
    text = text.strip()
    if key == "sim.strategy":
        try:
            return Strategy.parse(text)
        except ValueError as e:
            raise ConfigError(f"{key}: {e}") from None
    if key in ("sim.bs_x", "sim.bs_y") and text.lower() in ("", "center", "centre"):
        return None
    try:
        if key in _INT_KEYS:
            return int(text, 0)
        return float(text)
    except ValueError:
        kind = "an integer" if key in _INT_KEYS else "a number"
        raise ConfigError(f"{key}: expected {kind}, got {text!r}") from None


def parse_assignments(lines: Iterable[str], source: str = "<overrides>") -> dict[str, object]:
    """Parse ``key=value`` lines into converted values; unknown keys are rejected."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        if key not in VALID_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}; valid keys: {', '.join(VALID_KEYS)}")
        values[key] = _convert(key, value)
    return values


def _build(section: str, cls, kwargs):
    try:
        return cls(**kwargs)
    except ValueError as e:
        msg = str(e)
        name = msg.split(" ", 1)[0]
        if name in kwargs or name in {f.name for f in dataclasses.fields(cls)}:
            raise ConfigError(f"{section}.{msg}") from None
        raise ConfigError(f"{section}: {msg}") from None


def build_config(values: dict[str, object]) -> SimConfig:
    """Assemble a validated :class:`SimConfig` from dotted-key values."""
    radio = _build("radio", RadioParams, {k[6:]: v for k, v in values.items() if k.startswith("radio.")})
    het = _build("het", HeterogeneityParams, {k[4:]: v for k, v in values.items() if k.startswith("het.")})
    sim = {k[4:]: v for k, v in values.items() if k.startswith("sim.")}
    return _build("sim", SimConfig, dict(sim, radio=radio, het=het))


def load_config(path: str | Path | None = None, overrides: Iterable[str] = ()) -> SimConfig:
    """Read a config file (or none, for all defaults) and apply ``key=value`` overrides."""
    values: dict[str, object] = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e.strerror}") from None
        values.update(parse_assignments(text.splitlines(), source=str(path)))
    values.update(parse_assignments(overrides))
    return build_config(values)


def config_items(config: SimConfig) -> list[tuple[str, str]]:
    """The config as dotted ``(key, value)`` pairs, in ``VALID_KEYS`` order."""
    items = []
    for key in VALID_KEYS:
        section, name = key.split(".")
        obj = {"sim": config, "het": config.het, "radio": config.radio}[section]
        value = getattr(obj, name)
        if isinstance(value, Strategy):
            value = value.value
        items.append((key, repr(value) if isinstance(value, float) else str(value)))
    return items


def config_text(config: SimConfig) -> str:
    return "".join(f"{k}={v}\n" for k, v in config_items(config))
