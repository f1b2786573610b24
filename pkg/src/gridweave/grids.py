"""Grid diagrams and their conversions back into the pipeline's forms.

A grid is an n-by-n board with one X and one O marker per row and per
column. Rows join their two markers with a horizontal segment, columns
with a vertical segment, and verticals always cross in front, which
makes the drawing an honest rectangular diagram. From there the grid
can be read as a closed planar diagram code, and a planar diagram code
can be swept back into sliced position for round-trip checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    GridweaveError,
    INVALID_INPUT,
    SEARCH_EXHAUSTED,
    SPLIT_INPUT,
    ValidityReport,
)
from .pd import PDCode
from .rect import WeakRectTangle
from .sliced import Slice, SlicedDiagram
from .tangle import ElementaryTangle, validate_tangle


@dataclass(frozen=True)
class GridDiagram:
    """X[r] and O[r] give the marked columns of row r; row 0 is the top
    row and columns count from 0 at the left."""

    n: int
    X: tuple
    O: tuple

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(self.X))
        object.__setattr__(self, "O", tuple(self.O))


def validate_grid(g: GridDiagram) -> ValidityReport:
    report = ValidityReport()
    want = set(range(g.n))
    if g.n < 2:
        report.add(INVALID_INPUT, f"grid size {g.n} is below the minimum 2")
    if len(g.X) != g.n or set(g.X) != want:
        report.add(INVALID_INPUT, "X columns are not a permutation of the rows")
    if len(g.O) != g.n or set(g.O) != want:
        report.add(INVALID_INPUT, "O columns are not a permutation of the rows")
    if not report.issues:
        for r in range(g.n):
            if g.X[r] == g.O[r]:
                report.add(INVALID_INPUT, f"row {r} has X and O in one square")
    report.facts["n"] = g.n
    return report


def unknot_grid() -> GridDiagram:
    """The smallest grid: one crossing-free rectangle."""
    return GridDiagram(2, (0, 1), (1, 0))


def grid_rect(g: GridDiagram) -> WeakRectTangle:
    """The rectangular diagram a grid encodes: row r becomes the
    horizontal at level n - r joining its markers, column c the vertical
    at slot c joining its markers, drawn in front of everything."""
    n = g.n
    horizontals = []
    for r in range(n):
        lo, hi = sorted((g.X[r], g.O[r]))
        horizontals.append((n - r, lo, hi))
    rows_of = {}
    for r in range(n):
        rows_of.setdefault(g.X[r], []).append(r)
        rows_of.setdefault(g.O[r], []).append(r)
    verticals = []
    for c in range(n):
        r1, r2 = sorted(rows_of[c])
        verticals.append((c, n - r2, n - r1, "over"))
    return WeakRectTangle(tuple(verticals), tuple(horizontals))


def closed_rect_to_pd(rt: WeakRectTangle) -> PDCode:
    """Chop a closed weak rectangular diagram at corners and crossings
    into a planar diagram code, counting crossing-free components as
    free loops."""
    crossings = rt.crossings()
    cross_at = {}
    for ci, (vi, hi) in enumerate(crossings):
        cross_at[ci] = (rt.verticals[vi].x, rt.horizontals[hi].y)

    # ports ccw with the under strand on the (0, 2) diagonal
    port_of = {}
    for ci, (vi, hi) in enumerate(crossings):
        if rt.verticals[vi].kind == "under":
            port_of[ci] = {"+y": 0, "-x": 1, "-y": 2, "+x": 3}
        else:
            port_of[ci] = {"+x": 0, "+y": 1, "-x": 2, "-y": 3}

    raw = []  # piece: [end, end]; end = ("pt", (x, y)) | ("c", ci, port)

    for hi, h in enumerate(rt.horizontals):
        stops = [("pt", (h.xlo, h.y))]
        inner = sorted(
            (cross_at[ci][0], ci) for ci, (vi, hj) in enumerate(crossings) if hj == hi
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
            (cross_at[ci][1], ci) for ci, (vj, hi) in enumerate(crossings) if vj == vi
        )
        for y, ci in inner:
            stops.append(("c", ci))
        stops.append(("pt", (v.x, v.yhi)))
        for a, b in zip(stops, stops[1:]):
            e1 = a if a[0] == "pt" else ("c", a[1], port_of[a[1]]["+y"])
            e2 = b if b[0] == "pt" else ("c", b[1], port_of[b[1]]["-y"])
            raw.append([e1, e2])

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

    for pt, eids in by_point.items():
        if len(eids) != 2:
            raise GridweaveError(
                INVALID_INPUT, f"corner {pt} joins {len(eids)} segment ends"
            )
        parent[find(eids[0])] = find(eids[1])

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
    used = set(rep_ids)
    loops = len({find(e) for e in range(len(raw))} - used)
    return PDCode(tuple(tuple(c) for c in cr), free_loops=loops)


def grid_to_pd(g: GridDiagram) -> PDCode:
    report = validate_grid(g)
    if not report.ok:
        raise GridweaveError(INVALID_INPUT, report.issues[0].message)
    return closed_rect_to_pd(grid_rect(g))


# ---------------------------------------------------------------------------
# sweeping a planar diagram code into sliced position

def _edge_ends(pd: PDCode):
    ends = {}
    for ci, c in enumerate(pd.crossings):
        for port, e in enumerate(c):
            ends.setdefault(e, []).append((ci, port))
    return ends


def _placements(pd, ends, state, placed, ci):
    """All ways to place crossing ci against the current state: yields
    (tangle, above, new_right_entries). The consumed open ends must sit
    in one contiguous run; right-bound edges enumerate their boundary
    order and validate_tangle arbitrates planarity."""
    from itertools import permutations

    consumed_ports = []
    self_ports = {}
    right_ports = []
    for port, e in enumerate(pd.crossings[ci]):
        a, b = ends[e]
        other = b if a == (ci, port) else a
        if other[0] == ci and other != (ci, port):
            self_ports[port] = other[1]
        elif other[0] in placed:
            consumed_ports.append(port)
        else:
            right_ports.append((port, e, other))
    # a port may also carry a doubled edge back to ci counted once above
    block = [i for i, entry in enumerate(state) if entry[1] == ci]
    if len(block) != len(consumed_ports):
        return
    if block and block != list(range(block[0], block[0] + len(block))):
        return

    p, q = len(block), len(right_ports)
    routing = [None] * 4
    for t1, t2 in self_ports.items():
        routing[t1] = ("RAY", t2)
    for b, i in enumerate(block):
        entry = state[i]  # (edge, ci, port)
        routing[entry[2]] = ("L", b + 1)

    if p:
        positions = [block[0]]
    else:
        positions = range(len(state) + 1)

    for order in permutations(range(q)):
        r = list(routing)
        entries = [None] * q
        for j, oi in enumerate(order):
            port, e, other = right_ports[oi]
            r[port] = ("R", j + 1)
            entries[j] = (e, other[0], other[1])
        t = ElementaryTangle(2, (1, 2), tuple(r))
        whole = len(pd.crossings) == 1
        if not validate_tangle(t, allow_closed=whole).ok:
            continue
        for pos in positions:
            yield t, pos, entries


def pd_to_sliced(pd: PDCode) -> SlicedDiagram:
    """Sweep a connected planar diagram code left to right into sliced
    position, one crossing per slice, backtracking over crossing order
    and boundary placement."""
    if pd.free_loops:
        raise GridweaveError(
            SPLIT_INPUT, "crossing-free components cannot enter sliced position"
        )
    if not pd.crossings:
        raise GridweaveError(INVALID_INPUT, "no crossings to sweep")
    ends = _edge_ends(pd)
    c = len(pd.crossings)
    seen = set()

    def dfs(state, placed, slices):
        if len(placed) == c:
            return slices if not state else None
        key = (tuple(e[1:] for e in state), frozenset(placed))
        if key in seen:
            return None
        seen.add(key)
        targets = {entry[1] for entry in state}
        order = sorted(set(range(c)) - placed, key=lambda x: (x not in targets, x))
        for ci in order:
            for t, pos, entries in _placements(pd, ends, state, placed, ci):
                p = sum(1 for term in t.routing if term[0] == "L")
                above = pos
                below = len(state) - above - p
                new_state = state[:above] + entries + state[above + p :]
                got = dfs(
                    new_state,
                    placed | {ci},
                    slices + [Slice(above, below, t)],
                )
                if got is not None:
                    return got
        return None

    got = dfs([], frozenset(), [])
    if got is None:
        raise GridweaveError(SEARCH_EXHAUSTED, "no sliced position found")
    return SlicedDiagram(tuple(got))


def grid_to_sliced(g: GridDiagram) -> SlicedDiagram:
    """Read a grid as a sliced diagram of plain double crossings. Grids
    without any crossing (unknot rectangles) have no sliced form; the
    pipeline special-cases them before calling this."""
    pd = grid_to_pd(g)
    if not pd.crossings:
        raise GridweaveError(
            INVALID_INPUT, "crossing-free grid has no sliced position"
        )
    return pd_to_sliced(pd)
