"""Tiny `key = value` config files with environment-variable overrides.

Used for the service config, the experiment config, and the inventory /
tagset label maps.  Values are plain strings; callers coerce.
"""

from __future__ import annotations

import os

from .errors import FormatError


def parse_kv_text(text: str, source: str = "<config>") -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise FormatError(
                f"{source}: expected 'key = value' at line {lineno}", line=lineno)
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def parse_kv_file(path: str) -> dict[str, str]:
    with open(path, encoding="utf-8") as fh:
        return parse_kv_text(fh.read(), source=path)


def env_override(values: dict[str, str], keys: list[str],
                 prefix: str = "SENSELEX_") -> dict[str, str]:
    """Overlay environment variables (PREFIX + upper-cased key) onto values."""
    merged = dict(values)
    for key in keys:
        env_value = os.environ.get(prefix + key.upper())
        if env_value is not None:
            merged[key] = env_value
    return merged


def as_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise FormatError(f"not a boolean: {value!r}")


def as_int_list(value: str) -> list[int]:
    return [int(part) for part in value.replace(",", " ").split()]
