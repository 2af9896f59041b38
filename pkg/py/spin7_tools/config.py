# py/spin7_tools/config.py
"""
Run configuration.

Precedence, highest first: command-line flag, --config YAML file,
environment (SPIN7_JOBS, SPIN7_CONFIG), built-in default.
"""

from __future__ import annotations

import argparse
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .common import load_yaml_file, rational_from_json
from .errors import ConfigError

ENV_JOBS = "SPIN7_JOBS"
ENV_CONFIG = "SPIN7_CONFIG"

FORMATS = ("json", "csv")
MIN_GROUP = 2
MAX_GROUP = 12

_GROUP_RE = re.compile(r"^\s*so\s*\(?\s*(\d+)\s*\)?\s*$", re.IGNORECASE)

_FILE_KEYS = {"group", "out", "format", "jobs", "include_reducible", "default_charge"}


def parse_group_tag(text: str) -> int:
    """'so3', 'SO(3)' -> 3. Used as an argparse type."""
    m = _GROUP_RE.match(str(text))
    if not m:
        raise argparse.ArgumentTypeError(f"invalid group tag {text!r}; expected so2..so{MAX_GROUP}")
    n = int(m.group(1))
    if not MIN_GROUP <= n <= MAX_GROUP:
        raise argparse.ArgumentTypeError(f"group SO({n}) out of range so{MIN_GROUP}..so{MAX_GROUP}")
    return n


def group_tag(n: int) -> str:
    return f"so{n}"


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def jobs_from_env(environ: Mapping[str, str]) -> int | None:
    raw = environ.get(ENV_JOBS)
    if raw is None or raw.strip() == "":
        return None
    try:
        v = int(raw)
    except ValueError:
        raise ConfigError(f"{ENV_JOBS} must be a positive integer, got {raw!r}") from None
    if v < 1:
        raise ConfigError(f"{ENV_JOBS} must be a positive integer, got {raw!r}")
    return v


def load_config_file(path: str) -> dict[str, Any]:
    data = load_yaml_file(path)
    unknown = sorted(set(data) - _FILE_KEYS)
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {', '.join(unknown)}")

    out: dict[str, Any] = {}
    if "group" in data:
        try:
            out["group"] = parse_group_tag(str(data["group"]))
        except argparse.ArgumentTypeError as e:
            raise ConfigError(f"{path}: {e}") from None
    if "out" in data:
        out["out"] = str(data["out"])
    if "format" in data:
        if data["format"] not in FORMATS:
            raise ConfigError(f"{path}: format must be one of {', '.join(FORMATS)}")
        out["format"] = data["format"]
    if "jobs" in data:
        jobs = data["jobs"]
        if not isinstance(jobs, int) or isinstance(jobs, bool) or jobs < 1:
            raise ConfigError(f"{path}: jobs must be a positive integer")
        out["jobs"] = jobs
    if "include_reducible" in data:
        if not isinstance(data["include_reducible"], bool):
            raise ConfigError(f"{path}: include_reducible must be true or false")
        out["include_reducible"] = data["include_reducible"]
    if "default_charge" in data:
        out["default_charge"] = rational_from_json(data["default_charge"], where=f"{path}: default_charge")
    return out


@dataclass(frozen=True)
class RunConfig:
    command: str
    group: int | None = None
    input: str | None = None
    out: str = "-"
    format: str = "json"
    jobs: int = 1
    include_reducible: bool = False
    default_charge: Fraction = Fraction(0)


def resolve(args: argparse.Namespace, environ: Mapping[str, str] | None = None) -> RunConfig:
    env = os.environ if environ is None else environ

    merged: dict[str, Any] = {}
    jobs = jobs_from_env(env)
    if jobs is not None:
        merged["jobs"] = jobs

    path = getattr(args, "config", None) or env.get(ENV_CONFIG) or None
    if path:
        merged.update(load_config_file(path))

    for key in ("group", "input", "out", "format", "jobs", "include_reducible", "default_charge"):
        v = getattr(args, key, None)
        if v is None:
            continue
        merged[key] = v

    if "default_charge" in merged:
        merged["default_charge"] = Fraction(merged["default_charge"])
    return RunConfig(command=getattr(args, "cmd", None) or "", **merged)
