"""
src/core/run_config.py

Run configuration for batch suites: a flat, documented key set read from an
INI file (single [run] section) or a JSON object, with command-line overrides.
"""

import configparser
import json
import math
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from config import (
    DEFAULT_SEED,
    DEFAULT_SPIN_MAX,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
    GRID_HALF_LENGTH,
    GRID_RESOLUTION,
    IDENTITY_MAX_DEGREE,
    OUTPUT_DIR,
    QUAD_PHI,
    QUAD_THETA,
    ROUND_TRIP_TOLERANCE,
    SLOPE_TOLERANCE,
)
from src.core.errors import ConfigError

COMMANDS = (
    "verify-identities",
    "verify-symbols",
    "verify-splitting",
    "wave-check",
    "hertz-roundtrip",
    "peel",
)

ALLOWED_SPINS = tuple(Fraction(n, 2) for n in range(1, 9))


def parse_spin(value):
    """Parse '1/2', '1.5' or 2 into an exact half-integer spin."""
    try:
        spin = Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"spin {value!r} is not a number")
    if spin not in ALLOWED_SPINS:
        raise ConfigError(f"spin {value!r} must be one of 1/2, 1, ..., 4")
    return spin


def _as_list(value):
    if isinstance(value, (list, tuple)):
        return list(value)
    return [item for item in str(value).replace(";", ",").split(",") if item.strip()]


@dataclass
class RunConfig:
    """Validated parameters of one suite run."""

    command: str = "verify-identities"
    spins: list = field(default_factory=lambda: [Fraction(1)])
    deltas: list = field(default_factory=lambda: [-2.5])
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    degree: int = IDENTITY_MAX_DEGREE
    spin_max: Fraction = Fraction(DEFAULT_SPIN_MAX)
    grid_half_length: float = GRID_HALF_LENGTH
    grid_resolution: int = GRID_RESOLUTION
    quad_theta: int = QUAD_THETA
    quad_phi: int = QUAD_PHI
    tolerance: float = ROUND_TRIP_TOLERANCE
    slope_tolerance: float = SLOPE_TOLERANCE
    out_dir: str = OUTPUT_DIR
    workers: int = DEFAULT_WORKERS

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def from_mapping(cls, mapping):
        """
        Build a config from a flat mapping of raw values.

        Raises:
            ConfigError: on unknown keys or unparsable values
        """
        known = set(cls.keys())
        for key in mapping:
            if key not in known:
                raise ConfigError(f"unknown config key '{key}'")
        cfg = cls()
        for key, raw in mapping.items():
            if raw is None:
                continue
            setattr(cfg, key, _coerce(key, raw))
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path, overrides=None):
        """
        Read an INI or JSON file and apply command-line overrides.

        Args:
            path: Config file path, or None for defaults only
            overrides: Mapping of keys set on the command line (None values skipped)
        """
        mapping = {}
        if path is not None:
            path = Path(path)
            if not path.exists():
                raise ConfigError(f"config file {path} does not exist")
            if path.suffix.lower() == ".json":
                try:
                    mapping = json.loads(path.read_text())
                except json.JSONDecodeError as exc:
                    raise ConfigError(f"config file {path} is not valid JSON: {exc}")
                if not isinstance(mapping, dict):
                    raise ConfigError("JSON config must be an object")
            else:
                parser = configparser.ConfigParser()
                try:
                    parser.read(path)
                except configparser.Error as exc:
                    raise ConfigError(f"config file {path} is not valid INI: {exc}")
                if not parser.has_section("run"):
                    raise ConfigError("INI config needs a [run] section")
                mapping = dict(parser.items("run"))
        if overrides:
            mapping.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_mapping(mapping)

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command '{self.command}'")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if self.degree < 0:
            raise ConfigError("degree must be non-negative")
        if self.grid_resolution < 8 or self.grid_resolution % 2:
            raise ConfigError("grid_resolution must be an even integer >= 8")
        if self.quad_theta < 2 or self.quad_phi < 2:
            raise ConfigError("quadrature orders must be at least 2")
        if self.spin_max not in ALLOWED_SPINS:
            raise ConfigError("spin_max must be one of 1/2, 1, ..., 4")
        if self.command == "peel":
            for delta in self.deltas:
                if float(delta).is_integer():
                    raise ConfigError(
                        f"weight delta={delta} is an integer; the decay theorem "
                        "requires a non-integer weight"
                    )


def _coerce(key, raw):
    try:
        if key == "spins":
            return [parse_spin(item) for item in _as_list(raw)]
        if key == "spin_max":
            return parse_spin(raw)
        if key == "deltas":
            return [float(Fraction(str(item).strip())) for item in _as_list(raw)]
        if key in ("trials", "seed", "degree", "grid_resolution", "quad_theta", "quad_phi", "workers"):
            value = int(raw)
            return value
        if key in ("grid_half_length", "tolerance", "slope_tolerance"):
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError(raw)
            return value
        return str(raw)
    except ConfigError:
        raise
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"invalid value {raw!r} for config key '{key}'")
