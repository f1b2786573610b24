"""Error codes and validity reporting shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field


class GridweaveError(Exception):
    """Base error. `code` is a stable machine-readable name, `line` is the
    1-based source line for file-parse errors (None otherwise)."""

    def __init__(self, code: str, message: str = "", line: int | None = None):
        self.code = code
        self.line = line
        text = code if not message else f"{code}: {message}"
        if line is not None:
            text += f" line={line}"
        super().__init__(text)


# validation
NON_PLANAR = "NON_PLANAR"
DISCONNECTED = "DISCONNECTED"
CLOSED_COMPONENT = "CLOSED_COMPONENT"
BAD_HEIGHTS = "BAD_HEIGHTS"
BAD_ROUTING = "BAD_ROUTING"
WIDTH_MISMATCH = "WIDTH_MISMATCH"
NOT_CLOSED = "NOT_CLOSED"
SPLIT = "SPLIT"
# resolution / invariants
DEGENERATE_PERTURBATION = "DEGENERATE_PERTURBATION"
TOO_LARGE = "TOO_LARGE"
ZERO_POLY = "ZERO_POLY"
BAD_ORIENTATION = "BAD_ORIENTATION"
# slicer
NORMALIZATION_FAILED = "NORMALIZATION_FAILED"
SPLIT_INPUT = "SPLIT_INPUT"
SEARCH_EXHAUSTED = "SEARCH_EXHAUSTED"
NOT_TYPE_ZERO = "NOT_TYPE_ZERO"
NO_PEELABLE_ARC = "NO_PEELABLE_ARC"
# weaver
TYPE_ZERO_INPUT = "TYPE_ZERO_INPUT"
BOUND_EXCEEDED = "BOUND_EXCEEDED"
NOT_NORMALIZED = "NOT_NORMALIZED"
MIXED_VERTICAL = "MIXED_VERTICAL"
# rectifier
INVALID_ARC_PRESENTATION = "INVALID_ARC_PRESENTATION"
INVALID_INPUT = "INVALID_INPUT"
# io
PARSE_ERROR = "PARSE_ERROR"


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    location: str = ""

    def __str__(self):
        loc = f" [{self.location}]" if self.location else ""
        return f"{self.code}: {self.message}{loc}"


@dataclass
class ValidityReport:
    issues: list[Issue] = field(default_factory=list)
    # extra facts gathered during validation (e.g. crossing census)
    facts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, code: str, message: str, location: str = ""):
        self.issues.append(Issue(code, message, location))

    def codes(self) -> set[str]:
        return {i.code for i in self.issues}

    def raise_if_failed(self):
        if self.issues:
            first = self.issues[0]
            raise GridweaveError(first.code, first.message)

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(str(i) for i in self.issues)
