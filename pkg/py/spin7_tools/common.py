# py/spin7_tools/common.py
"""
Common utility functions shared across spin7_tools modules.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import ConfigError, ParseError

try:
    import yaml  # PyYAML
except ImportError:  # pragma: no cover - exercised only on broken installs
    yaml = None  # type: ignore[assignment]

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2


def configure_logging(verbose: bool = False, debug: bool = False) -> None:
    """Root logger on stderr; WARNING by default, -v for INFO, -d for DEBUG."""
    level = logging.WARNING
    if verbose:
        level = logging.INFO
    if debug:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def progress_enabled() -> bool:
    return logging.getLogger().isEnabledFor(logging.INFO)


def rational_to_json(x: Fraction | int) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(obj: Any, *, where: str = "value") -> Fraction:
    """
    Accept {"num": p, "den": q}, a bare int, or a "p/q" string.
    """
    if isinstance(obj, bool):
        raise ParseError(f"{where}: expected a rational, got bool")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"{where}: bad rational {obj!r}") from e
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        num, den = obj["num"], obj["den"]
        if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool) or isinstance(den, bool):
            raise ParseError(f"{where}: num/den must be integers")
        if den == 0:
            raise ParseError(f"{where}: zero denominator")
        return Fraction(num, den)
    raise ParseError(f"{where}: expected {{num, den}}, int or 'p/q', got {obj!r}")


def matrix_to_json(m: Sequence[Sequence[Fraction]]) -> list[list[dict[str, int]]]:
    return [[rational_to_json(x) for x in row] for row in m]


def vector_to_json(v: Iterable[Fraction]) -> list[dict[str, int]]:
    return [rational_to_json(x) for x in v]


def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_text(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_json(obj: Any, out: str | None) -> None:
    write_text(dumps_json(obj), out)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def load_json_file(path: str | Path) -> Any:
    p = Path(path)
    if not p.is_file():
        raise ParseError("file not found", path=p)
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", path=p, line_no=e.lineno) from e


def load_yaml_file(path: str | Path) -> dict[str, Any]:
    """Load a YAML (or JSON) file whose top level must be a mapping."""
    if yaml is None:
        raise ConfigError(
            "Missing dependency: PyYAML\n"
            "Install with:\n"
            "  python -m pip install PyYAML\n"
        )
    p = Path(path)
    if not p.is_file():
        raise ParseError("file not found", path=p)
    try:
        data = yaml.safe_load(p.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line_no = mark.line + 1 if mark is not None else None
        raise ParseError(f"invalid YAML: {e}", path=p, line_no=line_no) from e
    if not isinstance(data, dict):
        raise ParseError("top-level must be a mapping (dict)", path=p)
    return data
