"""Tunable settings for synthesis and emission, plus the ``key = value`` file reader."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path
from typing import Mapping

from latinkeys.unicode_base import load_fallback_table


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisConfig:
    language_tag: str = "und"
    base_layout: str | None = None
    min_count: int = 1
    # Share of all letters at which ñ earns its own visible key.
    special_letter_threshold: float = 0.005
    currency_symbol: str | None = None
    punctuation_limit: int = 8
    long_press_warn: int = 9
    fallback_table: Mapping[str, str] | None = None

    def __post_init__(self):
        if not 0 <= self.special_letter_threshold <= 1:
            raise ConfigError("special_letter_threshold must lie in [0, 1]")
        if self.min_count < 0:
            raise ConfigError("min_count must be nonnegative")
        if self.punctuation_limit < 0:
            raise ConfigError("punctuation_limit must be nonnegative")
        if self.currency_symbol is not None and len(self.currency_symbol) != 1:
            raise ConfigError("currency_symbol must be a single character")


@dataclass(frozen=True)
class EmitConfig:
    ime_name: str | None = None
    ascii_capable: bool = True
    auto_capital: bool = True
    view_class: str = "com.example.inputmethod.framework.keyboard.SoftKeyView"


_BOOL = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _convert(key: str, raw: str, base: Path | None):
    if key in ("min_count", "punctuation_limit", "long_press_warn"):
        return int(raw)
    if key == "special_letter_threshold":
        return float(raw)
    if key in ("ascii_capable", "auto_capital"):
        try:
            return _BOOL[raw.lower()]
        except KeyError:
            raise ValueError(f"expected a boolean, got {raw!r}") from None
    if key == "fallback_table":
        path = Path(raw)
        if base is not None and not path.is_absolute():
            path = base / path
        return load_fallback_table(path)
    return raw or None


_SYNTH_KEYS = {f.name for f in fields(SynthesisConfig)}
_EMIT_KEYS = {f.name for f in fields(EmitConfig)}


def read_config_file(path: str | Path) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment line."""
    path = Path(path)
    values = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if key not in _SYNTH_KEYS | _EMIT_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def build_configs(values: Mapping[str, object],
                  base_dir: Path | None = None) -> tuple[SynthesisConfig, EmitConfig]:
    """Build both configs from raw values; strings are converted per field."""
    synth, emit = {}, {}
    for key, value in values.items():
        if value is None:
            continue
        if isinstance(value, str):
            try:
                value = _convert(key, value, base_dir)
            except ValueError as e:
                raise ConfigError(f"{key}: {e}") from None
        if key in _SYNTH_KEYS:
            synth[key] = value
        elif key in _EMIT_KEYS:
            emit[key] = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    return SynthesisConfig(**synth), EmitConfig(**emit)


def load_config(path: str | Path | None = None,
                overrides: Mapping[str, object] | None = None) -> tuple[SynthesisConfig, EmitConfig]:
    values: dict[str, object] = {}
    base_dir = None
    if path is not None:
        values.update(read_config_file(path))
        base_dir = Path(path).parent
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return build_configs(values, base_dir)
