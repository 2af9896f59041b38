# py/spin7_tools/errors.py
"""
Exception types raised by spin7_tools.

Everything derives from ValueError so callers that only care about "bad input"
can keep catching that.
"""

from __future__ import annotations

from pathlib import Path


class Spin7Error(ValueError):
    pass


class DegreeError(Spin7Error):
    """Form degree outside 0..8, or the wrong degree for an operation."""


class NotOrthogonalError(Spin7Error):
    """Matrix is not orthogonal, or has determinant -1 where SO(n) is required."""


class NotInSpanError(Spin7Error):
    """An induced action leaves the subspace it is supposed to preserve."""


class InvalidRepresentationError(Spin7Error):
    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        shown = ", ".join(self.violations[:4])
        more = "" if len(self.violations) <= 4 else f" (+{len(self.violations) - 4} more)"
        super().__init__(f"representation violates relations: {shown}{more}")


class PreconditionError(Spin7Error):
    pass


class ConfigError(Spin7Error):
    pass


class ParseError(Spin7Error):
    def __init__(self, reason: str, *, path: str | Path | None = None, line_no: int | None = None) -> None:
        self.reason = reason
        self.path = str(path) if path is not None else None
        self.line_no = line_no
        where = self.path or "<input>"
        if line_no is not None:
            where = f"{where}:{line_no}"
        super().__init__(f"{where}: {reason}")
