"""Runtime configuration: one JSON file, overridable via environment variables.

Precedence: built-in defaults < config file < SCORELENS_* environment
variables.  Relative data paths are resolved against the config file's
directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ValidationError

_ENV_PREFIX = "SCORELENS_"

_COERCERS = {int: int, float: float, str: str}


@dataclass
class Config:
    data_dir: str = "."
    group_file: str = ""
    tables_file: str = ""
    out_dir: str = "out"
    host: str = "127.0.0.1"
    port: int = 8000
    tau: float = 0.5
    C: float = 1.0
    seed: int = 0
    perplexity: float = 10.0
    session_token: str = ""  # empty disables token checking
    static_dir: str = ""  # built web-client assets; served at / when set


def load_config(path: str | Path | None = None, env: dict | None = None) -> Config:
    env = os.environ if env is None else env
    values: dict = {}
    base = Path(".")
    if path is not None:
        base = Path(path).parent
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValidationError("config file must contain a JSON object")
        unknown = set(raw) - {f.name for f in fields(Config)}
        if unknown:
            raise ValidationError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(raw)
    for f in fields(Config):
        key = _ENV_PREFIX + f.name.upper()
        if key in env:
            values[f.name] = env[key]

    cfg = Config()
    for f in fields(Config):
        if f.name not in values:
            continue
        coerce = _COERCERS[type(getattr(cfg, f.name))]
        try:
            setattr(cfg, f.name, coerce(values[f.name]))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad config value for {f.name}: {values[f.name]!r} ({exc})")

    for name in ("group_file", "tables_file", "static_dir"):
        value = getattr(cfg, name)
        if value and not os.path.isabs(value):
            setattr(cfg, name, str((base / value).resolve()))
    return cfg
