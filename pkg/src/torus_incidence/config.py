"""Runtime settings: pattern cache location and size-guard overrides.

Precedence is command-line flags, then the config file, then the environment.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

CACHE_ENV = "TORUS_INCIDENCE_CACHE"
CONFIG_ENV = "TORUS_INCIDENCE_CONFIG"
ALLOW_LARGE_ENV = "TORUS_INCIDENCE_ALLOW_LARGE"


@dataclass(frozen=True)
class Settings:
    cache_dir: Path | None
    allow_large: bool = False


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "torus_incidence"


def _truthy(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in {"1", "true", "yes", "on"}


def load_settings(
    config_path: str | os.PathLike | None = None,
    cache_dir: str | os.PathLike | None = None,
    allow_large: bool | None = None,
) -> Settings:
    file_values: dict = {}
    path = config_path or os.environ.get(CONFIG_ENV)
    if path:
        with open(path, "rb") as fh:
            file_values = tomllib.load(fh)
    env_cache = os.environ.get(CACHE_ENV)
    resolved_cache = cache_dir or file_values.get("cache_dir") or env_cache
    if allow_large is None:
        if "allow_large" in file_values:
            allow_large = _truthy(file_values["allow_large"])
        else:
            allow_large = _truthy(os.environ.get(ALLOW_LARGE_ENV, "0"))
    cache = Path(resolved_cache).expanduser() if resolved_cache else default_cache_dir()
    return Settings(cache_dir=cache, allow_large=bool(allow_large))
