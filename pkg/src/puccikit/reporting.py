"""Canonical report serialization and flat config parsing.

Reports are JSON with sorted keys and 17-significant-digit floats so that
identical runs produce identical bytes; fields go to CSV. Configs are flat
`key = value` text with a strict schema (unknown keys rejected).
"""

import math

from .linalg import InputError


class ConfigError(ValueError):
    """Malformed or out-of-schema configuration input."""


def fmt_float(x):
    if math.isnan(x) or math.isinf(x):
        raise InputError("canonical reports carry finite numbers only")
    return format(x, ".17g")


def canonical_json(obj):
    """Deterministic JSON text: sorted keys, .17g floats, newline-terminated."""
    parts = []
    _write(obj, parts)
    return "".join(parts) + "\n"


def _write(obj, parts):
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(fmt_float(obj))
    elif isinstance(obj, str):
        parts.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        parts.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise InputError("report keys must be strings")
            if i:
                parts.append(",")
            _write(key, parts)
            parts.append(":")
            _write(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _write(item, parts)
        parts.append("]")
    else:
        try:
            parts.append(fmt_float(float(obj)))
        except (TypeError, ValueError) as exc:
            raise InputError(f"cannot serialize {type(obj).__name__}") from exc


# Schema: key -> (type, default); REQUIRED means no default.
REQUIRED = object()

SOLVE_SCHEMA = {
    "lambda": (float, REQUIRED),
    "Lambda": (float, REQUIRED),
    "p": (int, REQUIRED),
    "b": (float, 0.0),
    "c": (float, 0.0),
    "delta": (float, None),
    "h": (float, REQUIRED),
    "stencil_width": (int, 1),
    "tol": (float, 1e-8),
    "max_iter": (int, 500_000),
    "domain": (str, "disk"),
    "f_const": (float, 0.0),
    "boundary": (str, "zero"),
    "mode": (str, "solve"),
    "eps": (float, None),
    "r_in": (float, None),
    "allow_unstable": (bool, False),
}


def parse_config(text, schema=SOLVE_SCHEMA):
    """Parse flat `key = value` lines against a schema.

    Unknown keys, duplicate keys, bad values and missing required keys all
    raise ConfigError naming the offender.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, raw_val = line.partition("=")
        key = key.strip()
        raw_val = raw_val.strip()
        if key not in schema:
            raise ConfigError(f"unknown config key {key!r}")
        if key in values:
            raise ConfigError(f"duplicate config key {key!r}")
        typ, _ = schema[key]
        try:
            if typ is bool:
                lowered = raw_val.lower()
                if lowered not in ("true", "false", "0", "1"):
                    raise ValueError(raw_val)
                values[key] = lowered in ("true", "1")
            elif typ is int:
                values[key] = int(raw_val)
            else:
                values[key] = typ(raw_val)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {raw_val!r}") from exc
    for key, (_, default) in schema.items():
        if key not in values:
            if default is REQUIRED:
                raise ConfigError(f"missing required config key {key!r}")
            values[key] = default
    return values
