"""Sliced diagrams: a left-to-right sequence of elementary tangles.

Each slice holds one elementary tangle with `above` strands passing over
the top of it and `below` strands passing under, so the strand count on
its left is above + p + below and on its right above + q + below where
(p, q) is the tangle's boundary profile. Adjacent slices must agree on
the strand count across their shared gap, and the whole diagram must be
closed (no strands sticking out at either end).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    NOT_CLOSED,
    SPLIT,
    WIDTH_MISMATCH,
    ValidityReport,
)
from .tangle import ElementaryTangle, boundary_profile, is_type_zero, validate_tangle


@dataclass(frozen=True)
class Slice:
    above: int
    below: int
    tangle: ElementaryTangle

    @property
    def left_width(self):
        p, _ = boundary_profile(self.tangle)
        return self.above + p + self.below

    @property
    def right_width(self):
        _, q = boundary_profile(self.tangle)
        return self.above + q + self.below


@dataclass(frozen=True)
class SlicedDiagram:
    slices: tuple
    orientation_hint: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))

    @property
    def nslices(self):
        return len(self.slices)


def census(d: SlicedDiagram) -> dict:
    """Multiplicity -> count of crossings of that multiplicity."""
    out = {}
    for s in d.slices:
        out[s.tangle.n] = out.get(s.tangle.n, 0) + 1
    return dict(sorted(out.items()))


def crossing_weight(n: int) -> int:
    """Vertical-segment budget one n-fold crossing contributes to the
    arc-index bound: 1 for a double crossing, 2n-4 beyond that."""
    return 1 if n == 2 else 2 * n - 4


def bound_value(cen: dict) -> int:
    """2 + sum of per-crossing weights: the arc-index upper bound."""
    return 2 + sum(crossing_weight(n) * c for n, c in cen.items())


def interior_type_zero_indices(d: SlicedDiagram) -> list:
    """Positions (0-based) of type-0 tangles that are neither the first
    nor the last slice."""
    out = []
    for i, s in enumerate(d.slices):
        if 0 < i < len(d.slices) - 1 and is_type_zero(s.tangle):
            out.append(i)
    return out


def validate_sliced(d: SlicedDiagram) -> ValidityReport:
    report = ValidityReport()
    c = len(d.slices)
    if c == 0:
        report.add(NOT_CLOSED, "diagram has no slices")
        return report

    widths = []
    for i, s in enumerate(d.slices):
        sub = validate_tangle(s.tangle, allow_closed=True)
        for issue in sub.issues:
            report.add(issue.code, f"slice {i}: {issue.message}", location=i)
        if s.above < 0 or s.below < 0:
            report.add(WIDTH_MISMATCH, f"slice {i}: negative pass-through count", location=i)
            return report
        widths.append((s.left_width, s.right_width))

    if report.issues:
        return report

    for i in range(c - 1):
        if widths[i][1] != widths[i + 1][0]:
            report.add(
                WIDTH_MISMATCH,
                f"slice {i} ends with {widths[i][1]} strands but slice {i + 1} starts with {widths[i + 1][0]}",
                location=i,
            )
    if widths[0][0] != 0:
        report.add(NOT_CLOSED, f"diagram starts with {widths[0][0]} open strands")
    if widths[-1][1] != 0:
        report.add(NOT_CLOSED, f"diagram ends with {widths[-1][1]} open strands")
    if report.issues:
        return report

    # connectivity: tangles are lumps, pass-through strands are wires
    nodes = {}

    def node(key):
        if key not in nodes:
            nodes[key] = len(nodes)
        return nodes[key]

    parent = []

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ia, ib = node(a), node(b)
        while len(parent) < len(nodes):
            parent.append(len(parent))
        ra, rb = find(ia), find(ib)
        parent[ra] = rb

    for i, s in enumerate(d.slices):
        p, q = boundary_profile(s.tangle)
        union(("t", i), ("t", i))
        for j in range(1, s.above + 1):
            union(("g", i, j), ("g", i + 1, j))
        for t in range(1, p + 1):
            union(("g", i, s.above + t), ("t", i))
        for t in range(1, q + 1):
            union(("g", i + 1, s.above + t), ("t", i))
        for j in range(1, s.below + 1):
            union(("g", i, s.above + p + j), ("g", i + 1, s.above + q + j))

    while len(parent) < len(nodes):
        parent.append(len(parent))
    roots = {find(v) for v in nodes.values()}
    if len(roots) > 1:
        report.add(SPLIT, f"diagram falls apart into {len(roots)} pieces")

    report.facts["census"] = census(d)
    report.facts["widths"] = widths
    report.facts["interior_type_zero"] = interior_type_zero_indices(d)
    return report
