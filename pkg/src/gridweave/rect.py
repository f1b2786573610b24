"""Weak rectangular tangles: axis-parallel strand drawings.

Strands are built from horizontal segments at integer levels and vertical
segments at integer slots. Segments meet only at shared endpoints
(corners) or in transverse interior crossings, where the vertical passes
entirely over or entirely under the horizontal according to its kind.
Horizontal ends not matched by a corner are boundary points and must sit
on the leftmost or rightmost occupied slot; boundary points are numbered
top to bottom on each side (level decreasing).
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass

from .errors import (
    CLOSED_COMPONENT,
    DISCONNECTED,
    INVALID_INPUT,
    MIXED_VERTICAL,
    ValidityReport,
)

V = namedtuple("V", "x ylo yhi kind")
H = namedtuple("H", "y xlo xhi")


@dataclass(frozen=True)
class WeakRectTangle:
    verticals: tuple
    horizontals: tuple

    def __post_init__(self):
        object.__setattr__(self, "verticals", tuple(V(*v) for v in self.verticals))
        object.__setattr__(self, "horizontals", tuple(H(*h) for h in self.horizontals))

    @property
    def xmin(self):
        xs = [h.xlo for h in self.horizontals] + [v.x for v in self.verticals]
        return min(xs)

    @property
    def xmax(self):
        xs = [h.xhi for h in self.horizontals] + [v.x for v in self.verticals]
        return max(xs)

    def boundary_sides(self):
        """([left points], [right points]) as (y, h-index), top to bottom."""
        corners = set()
        for v in self.verticals:
            corners.add((v.x, v.ylo))
            corners.add((v.x, v.yhi))
        left, right = [], []
        xmin, xmax = self.xmin, self.xmax
        for hi, h in enumerate(self.horizontals):
            if (h.xlo, h.y) not in corners and h.xlo == xmin:
                left.append((h.y, hi))
            if (h.xhi, h.y) not in corners and h.xhi == xmax:
                right.append((h.y, hi))
        left.sort(key=lambda t: -t[0])
        right.sort(key=lambda t: -t[0])
        return left, right

    def profile(self):
        left, right = self.boundary_sides()
        return len(left), len(right)

    def crossings(self):
        """(vertical index, horizontal index) pairs of interior crossings."""
        out = []
        for vi, v in enumerate(self.verticals):
            for hi, h in enumerate(self.horizontals):
                if v.ylo < h.y < v.yhi and h.xlo < v.x < h.xhi:
                    out.append((vi, hi))
        return out


def validate_weak_rect(rt: WeakRectTangle, allow_closed: bool = False) -> ValidityReport:
    report = ValidityReport()
    for h in rt.horizontals:
        if not h.xlo < h.xhi:
            report.add(INVALID_INPUT, f"horizontal at level {h.y} has empty span")
    for v in rt.verticals:
        if not v.ylo < v.yhi:
            report.add(INVALID_INPUT, f"vertical at slot {v.x} has empty span")
        if v.kind not in ("over", "under"):
            report.add(INVALID_INPUT, f"vertical at slot {v.x} has kind {v.kind!r}")
    if not rt.horizontals:
        report.add(INVALID_INPUT, "no horizontal segments")
    if report.issues:
        return report

    for i, a in enumerate(rt.horizontals):
        for b in rt.horizontals[i + 1 :]:
            if a.y == b.y and a.xlo <= b.xhi and b.xlo <= a.xhi:
                report.add(INVALID_INPUT, f"overlapping horizontals at level {a.y}")
    for i, a in enumerate(rt.verticals):
        for b in rt.verticals[i + 1 :]:
            if a.x == b.x and a.ylo <= b.yhi and b.ylo <= a.yhi:
                if a.ylo == b.yhi or b.ylo == a.yhi:
                    code = INVALID_INPUT if a.kind == b.kind else MIXED_VERTICAL
                    report.add(code, f"verticals touching at slot {a.x}")
                else:
                    report.add(INVALID_INPUT, f"overlapping verticals at slot {a.x}")
    if report.issues:
        return report

    h_ends = {}
    for hi, h in enumerate(rt.horizontals):
        for pt in ((h.xlo, h.y), (h.xhi, h.y)):
            if pt in h_ends:
                report.add(INVALID_INPUT, f"two horizontal ends at {pt}")
            h_ends[pt] = hi
    v_ends = {}
    for vi, v in enumerate(rt.verticals):
        for pt in ((v.x, v.ylo), (v.x, v.yhi)):
            if pt in v_ends:
                report.add(INVALID_INPUT, f"two vertical ends at {pt}")
            v_ends[pt] = vi
    if report.issues:
        return report

    for pt, vi in v_ends.items():
        if pt not in h_ends:
            report.add(INVALID_INPUT, f"vertical end at {pt} meets no horizontal")
    # T-junctions and corner-grazing crossings
    for pt in v_ends:
        x, y = pt
        for h in rt.horizontals:
            if h.y == y and h.xlo < x < h.xhi:
                report.add(INVALID_INPUT, f"vertical end inside a horizontal at {pt}")
    for pt in h_ends:
        x, y = pt
        for v in rt.verticals:
            if v.x == x and v.ylo < y < v.yhi:
                report.add(INVALID_INPUT, f"horizontal end inside a vertical at {pt}")
    if report.issues:
        return report

    xmin, xmax = rt.xmin, rt.xmax
    loose = [pt for pt in h_ends if pt not in v_ends]
    for pt in loose:
        if pt[0] not in (xmin, xmax):
            report.add(INVALID_INPUT, f"loose horizontal end at {pt} is not on a wall")
    if report.issues:
        return report

    # strand walk over segments; corners join, loose ends terminate
    nseg = len(rt.horizontals) + len(rt.verticals)
    parent = list(range(nseg))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    degree = [0] * nseg
    for pt, vi in v_ends.items():
        hi = h_ends[pt]
        parent[find(hi)] = find(len(rt.horizontals) + vi)
        degree[hi] += 1
        degree[len(rt.horizontals) + vi] += 1
    for hi in range(len(rt.horizontals)):
        if degree[hi] > 2:
            report.add(INVALID_INPUT, "horizontal joined at more than two corners")
    if report.issues:
        return report

    comps = {}
    for i in range(nseg):
        comps.setdefault(find(i), []).append(i)
    closed = 0
    for members in comps.values():
        ends = sum(2 - degree[i] for i in members)
        if ends == 0:
            closed += 1
    if closed and not allow_closed:
        report.add(CLOSED_COMPONENT, f"{closed} closed strand components")

    left, right = rt.boundary_sides()
    report.facts["p"] = len(left)
    report.facts["q"] = len(right)
    report.facts["verticals"] = len(rt.verticals)
    report.facts["crossings"] = len(rt.crossings())
    report.facts["components"] = len(comps)
    return report


def to_tanglepd(rt: WeakRectTangle):
    """Chop segments at corners and crossings into a TanglePD with the
    standard port convention."""
    from .tanglepd import TanglePD

    crossings = rt.crossings()
    cross_at = {}
    for ci, (vi, hi) in enumerate(crossings):
        cross_at[ci] = (rt.verticals[vi].x, rt.horizontals[hi].y)

    # ports ccw; directions at a crossing: +x, +y, -x, -y
    # under diagonal must be ports (0, 2)
    port_of = {}
    for ci, (vi, hi) in enumerate(crossings):
        if rt.verticals[vi].kind == "under":
            # port0 along +y, then ccw: -x, -y, +x
            port_of[ci] = {"+y": 0, "-x": 1, "-y": 2, "+x": 3}
        else:
            port_of[ci] = {"+x": 0, "+y": 1, "-x": 2, "-y": 3}

    raw = []  # edge: [end, end]; end = ('pt', (x, y)) | ('c', ci, port)

    for hi, h in enumerate(rt.horizontals):
        stops = [("pt", (h.xlo, h.y))]
        inner = sorted(
            (cross_at[ci][0], ci)
            for ci, (vi, hj) in enumerate(crossings)
            if hj == hi
        )
        for x, ci in inner:
            stops.append(("c", ci))
        stops.append(("pt", (h.xhi, h.y)))
        for a, b in zip(stops, stops[1:]):
            e1 = a if a[0] == "pt" else ("c", a[1], port_of[a[1]]["+x"])
            e2 = b if b[0] == "pt" else ("c", b[1], port_of[b[1]]["-x"])
            raw.append([e1, e2])

    for vi, v in enumerate(rt.verticals):
        stops = [("pt", (v.x, v.ylo))]
        inner = sorted(
            (cross_at[ci][1], ci)
            for ci, (vj, hi) in enumerate(crossings)
            if vj == vi
        )
        for y, ci in inner:
            stops.append(("c", ci))
        stops.append(("pt", (v.x, v.yhi)))
        for a, b in zip(stops, stops[1:]):
            e1 = a if a[0] == "pt" else ("c", a[1], port_of[a[1]]["+y"])
            e2 = b if b[0] == "pt" else ("c", b[1], port_of[b[1]]["-y"])
            raw.append([e1, e2])

    # fuse edges sharing a corner point; leftover points are boundary
    by_point = {}
    for eid, (e1, e2) in enumerate(raw):
        for end in (e1, e2):
            if end[0] == "pt":
                by_point.setdefault(end[1], []).append(eid)

    parent = list(range(len(raw)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    boundary_pts = {}
    for pt, eids in by_point.items():
        if len(eids) == 2:
            parent[find(eids[0])] = find(eids[1])
        elif len(eids) == 1:
            boundary_pts[pt] = eids[0]
        else:
            raise AssertionError(f"point {pt} on {len(eids)} segment pieces")

    left, right = rt.boundary_sides()
    p, q = len(left), len(right)
    order = []
    for y, hi in left:  # L1..Lp at positions 0..p-1
        h = rt.horizontals[hi]
        order.append((h.xlo, h.y))
    for y, hi in reversed(right):  # then Rq..R1
        h = rt.horizontals[hi]
        order.append((h.xhi, h.y))

    rep_ids = {}

    def final(eid):
        r = find(eid)
        if r not in rep_ids:
            rep_ids[r] = len(rep_ids)
        return rep_ids[r]

    cr = [[None] * 4 for _ in crossings]
    for eid, (e1, e2) in enumerate(raw):
        for end in (e1, e2):
            if end[0] == "c":
                cr[end[1]][end[2]] = final(eid)
    boundary = tuple(final(boundary_pts[pt]) for pt in order)
    if len(rep_ids) != len({find(e) for e in range(len(raw))}):
        raise AssertionError("crossing-free loop would be dropped")
    return TanglePD(
        m=p + q,
        crossings=tuple(tuple(c) for c in cr),
        boundary=boundary,
        chords=tuple((-1, -1) for _ in crossings),
    )
