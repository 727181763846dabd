"""Flat ``key=value`` run documents.

One assignment per line; ``#`` starts a comment; commas may also separate
assignments on a line. Example::

    # three-site chain with a graded z coupling
    N=3
    alpha=1, Delta=1, delta=0.7, B=0.1
    profile=z_graded
    grid=0.05:1.0:0.05
"""

import numpy as np

from .analysis import SWEEP_AXES
from .model import BOUNDARY_KINDS, COUPLING_KINDS, FIELD_KINDS, make_config
from .steady import METHODS

FLOAT_KEYS = ("alpha", "Delta", "delta", "B", "B_slope", "gamma", "f", "f_L", "f_R", "kappa", "tol")
CHOICE_KEYS = {
    "profile": COUPLING_KINDS,
    "boundary": BOUNDARY_KINDS,
    "field_profile": FIELD_KINDS,
    "solver": METHODS,
    "axis": SWEEP_AXES,
}
KNOWN_KEYS = ("N", "grid", *FLOAT_KEYS, *CHOICE_KEYS)
DEFAULTS = {"gamma": 1.0, "B": 0.0, "boundary": "z_target", "f": 0.0}
CHAIN_KEYS = ("N", "alpha", "Delta", "delta", "B", "B_slope", "gamma", "f", "f_L", "f_R", "kappa",
              "profile", "boundary", "field_profile")


class ConfigError(ValueError):
    def __init__(self, message, line=None, key=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line, self.key = line, key


def parse_grid(text):
    """``start:stop:step`` (stop inclusive) or a comma/space separated list."""
    text = text.strip()
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        if step == 0 or (stop - start) / step < 0:
            raise ValueError(f"bad range {text!r}")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return tuple(float(np.round(start + k * step, 12)) for k in range(count))
    values = tuple(float(x) for x in text.replace(",", " ").split())
    if not values:
        raise ValueError("empty grid")
    return values


def _parse_value(key, raw, line):
    try:
        if key == "N":
            return int(raw)
        if key == "grid":
            return parse_grid(raw)
        if key in FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise ConfigError(f"cannot parse {raw!r}", line, key) from None
    choices = CHOICE_KEYS[key]
    if raw not in choices:
        raise ConfigError(f"{raw!r} is not one of {', '.join(choices)}", line, key)
    return raw


def parse_document(text):
    """Parse a run document into a dict of typed values (no defaults applied)."""
    values, seen = {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        # a grid list may itself contain commas, so it must sit on its own line
        parts = [line] if line.startswith("grid") else [p for p in line.split(",") if p.strip()]
        for part in parts:
            if "=" not in part:
                raise ConfigError(f"expected key=value, got {part.strip()!r}", lineno)
            key, raw = (s.strip() for s in part.split("=", 1))
            if key not in KNOWN_KEYS:
                raise ConfigError(f"unknown key (known: {', '.join(KNOWN_KEYS)})", lineno, key)
            if key in seen:
                raise ConfigError(f"duplicate key (first set on line {seen[key]})", lineno, key)
            seen[key] = lineno
            values[key] = _parse_value(key, raw, lineno)
    values["_lines"] = seen
    return values


def config_from_values(values):
    lines = values.get("_lines", {})
    if "N" not in values:
        raise ConfigError("missing required key", key="N")
    kwargs = {**DEFAULTS, **{k: v for k, v in values.items() if k in CHAIN_KEYS}}
    for name in ("f", "f_L", "f_R", "kappa"):
        if name in kwargs and not -1.0 <= kwargs[name] <= 1.0:
            raise ConfigError(f"{kwargs[name]} outside [-1, 1] (bath rate would be negative)",
                              lines.get(name), name)
    try:
        return make_config(**kwargs)
    except ValueError as exc:
        key = "profile" if "profile" in str(exc) else None
        raise ConfigError(str(exc), lines.get(key), key) from None


def parse_config(text):
    """Validated :class:`ChainConfig` from a run document.

    Omitted keys default to gamma=1, B=0, z_target baths and f=0.
    """
    return config_from_values(parse_document(text))
