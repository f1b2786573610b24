"""Elementary tangles: one n-fold crossing plus planar routing to the square
boundary.

Conventions, fixed once for the whole package:
  - Rays are numbered 0..2n-1 counterclockwise around the crossing; the
    through-strand k (0-based) occupies rays k and k+n.
  - heights[k] is the stacking level of strand k, 1 = bottom, n = top.
  - Boundary points are 1-based, top to bottom, on each of the left and
    right edges of the slice square.
  - The outer boundary traversed counterclockwise from the top-left corner
    visits L1..Lp down the left edge, then Rq..R1 up the right edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import (
    BAD_HEIGHTS,
    BAD_ROUTING,
    CLOSED_COMPONENT,
    DISCONNECTED,
    NON_PLANAR,
    ValidityReport,
)

# terminals: ('L', i) / ('R', j) boundary points, ('RAY', r) an outer arc
# returning to another ray.


def L(i):
    return ("L", i)


def R(j):
    return ("R", j)


def RAY(r):
    return ("RAY", r)


@dataclass(frozen=True)
class ElementaryTangle:
    n: int
    heights: tuple
    routing: tuple
    strand_ids: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(self.heights))
        object.__setattr__(self, "routing", tuple(tuple(t) for t in self.routing))
        if self.strand_ids is not None:
            object.__setattr__(self, "strand_ids", tuple(self.strand_ids))

    def partner_ray(self, r):
        return (r + self.n) % (2 * self.n)

    def strand_of_ray(self, r):
        return r % self.n


def boundary_profile(t: ElementaryTangle):
    """(p, q): counts of left and right boundary terminals."""
    p = sum(1 for term in t.routing if term[0] == "L")
    q = sum(1 for term in t.routing if term[0] == "R")
    return p, q


def is_type_zero(t: ElementaryTangle) -> bool:
    p, q = boundary_profile(t)
    return p == 0 or q == 0


def boundary_cycle(t: ElementaryTangle):
    """Boundary terminals in ccw order: L1..Lp then Rq..R1."""
    p, q = boundary_profile(t)
    return tuple([("L", i) for i in range(1, p + 1)] + [("R", j) for j in range(q, 0, -1)])


def outer_position(term, p, q):
    """Index of a direct terminal in the ccw boundary cycle."""
    side, i = term
    if side == "L":
        return i - 1
    return p + (q - i)


def tangle_arcs(t: ElementaryTangle):
    """Outer RAY-RAY arcs as (r, r') pairs with r < r'."""
    out = []
    for r, term in enumerate(t.routing):
        if term[0] == "RAY" and r < term[1]:
            out.append((r, term[1]))
    return out


def strand_pieces(t: ElementaryTangle):
    """Trace maximal strand paths through chords and outer arcs.

    Returns (pieces, cycles). A piece is a dict with:
      start/end: the two boundary terminals,
      start_ray/end_ray: the rays where it enters and leaves,
      chords: list of (strand k, forward) in traversal order, forward
              meaning the chord is traversed from ray k toward ray k+n.
    A cycle is just its list of (strand, forward) entries.
    """
    n, n2 = t.n, 2 * t.n
    entered = set()  # rays at which a chord traversal began
    pieces = []

    def walk(start_ray):
        chords = []
        r = start_ray
        while True:
            entered.add(r)
            k = r % n
            forward = r < n
            chords.append((k, forward))
            exit_ray = r + n if forward else r - n
            entered.add(exit_ray)
            term = t.routing[exit_ray]
            if term[0] != "RAY":
                return chords, exit_ray
            r = term[1]

    for r0 in range(n2):
        if r0 in entered or t.routing[r0][0] == "RAY":
            continue
        chords, end_ray = walk(r0)
        pieces.append(
            {
                "start": t.routing[r0],
                "end": t.routing[end_ray],
                "start_ray": r0,
                "end_ray": end_ray,
                "chords": chords,
            }
        )

    cycles = []
    for r0 in range(n2):
        if r0 in entered:
            continue
        # remaining rays are all arc-routed: walk the closed loop
        chords = []
        r = r0
        while True:
            entered.add(r)
            k = r % n
            forward = r < n
            chords.append((k, forward))
            exit_ray = r + n if forward else r - n
            entered.add(exit_ray)
            r = t.routing[exit_ray][1]
            if r == r0:
                break
        cycles.append(chords)
    return pieces, cycles


def _interleaved(a, b, c, d):
    # pairs {a,b}, {c,d} on a circle of integer positions, a<b, c<d
    return (a < c < b) != (a < d < b)


def planarity_ok(t: ElementaryTangle) -> bool:
    """Cut-algorithm planarity check for the annulus between the crossing
    and the square boundary."""
    n2 = 2 * t.n
    p, q = boundary_profile(t)
    m = p + q
    arcs = tangle_arcs(t)
    direct = []
    for r, term in enumerate(t.routing):
        if term[0] != "RAY":
            direct.append((r, outer_position(term, p, q)))

    if not direct:
        # closed object: arcs live in the annulus; realizable iff no two
        # arcs interleave cyclically around the inner circle
        for i in range(len(arcs)):
            a, b = arcs[i]
            for j in range(i + 1, len(arcs)):
                c, d = arcs[j]
                if _interleaved(a, b, c, d):
                    return False
        return True

    # cut along the first direct arc: inner circle clockwise from the cut
    # ray, then outer circle counterclockwise from the cut point, form one
    # word on the disk boundary; the rest must nest like parentheses
    r0, b0 = direct[0]
    index = {}
    pos = 0
    for k in range(1, n2):
        index[("r", (r0 - k) % n2)] = pos
        pos += 1
    for k in range(1, m):
        index[("b", (b0 + k) % m)] = pos
        pos += 1

    owner = {}
    for pid, (a, b) in enumerate(arcs):
        owner[index[("r", a)]] = pid
        owner[index[("r", b)]] = pid
    base = len(arcs)
    for off, (r, bp) in enumerate(direct[1:]):
        owner[index[("r", r)]] = base + off
        owner[index[("b", bp)]] = base + off

    stack = []
    open_ids = set()
    for w in range(pos):
        pid = owner[w]
        if pid in open_ids:
            if not stack or stack[-1] != pid:
                return False
            stack.pop()
            open_ids.discard(pid)
        else:
            stack.append(pid)
            open_ids.add(pid)
    return not stack


def validate_tangle(t: ElementaryTangle, allow_closed: bool = False) -> ValidityReport:
    """Check heights, routing shape, planarity and the no-closed-piece rule.

    allow_closed permits closed strands only for the degenerate (0,0)
    object that forms a whole single-slice diagram.
    """
    rep = ValidityReport()
    n = t.n
    if n < 2:
        rep.add(BAD_HEIGHTS, f"multiplicity {n} < 2")
        return rep
    if len(t.heights) != n or sorted(t.heights) != list(range(1, n + 1)):
        rep.add(BAD_HEIGHTS, f"heights {t.heights!r} is not a permutation of 1..{n}")
        return rep

    n2 = 2 * n
    if len(t.routing) != n2:
        rep.add(BAD_ROUTING, f"routing has {len(t.routing)} entries, expected {n2}")
        return rep
    lefts, rights = [], []
    for r, term in enumerate(t.routing):
        if term[0] == "L":
            lefts.append(term[1])
        elif term[0] == "R":
            rights.append(term[1])
        elif term[0] == "RAY":
            r2 = term[1]
            if not (0 <= r2 < n2) or r2 == r:
                rep.add(BAD_ROUTING, f"ray {r} has bad arc target {r2}")
                return rep
            if t.routing[r2] != ("RAY", r):
                rep.add(BAD_ROUTING, f"arc {r}->{r2} is not involutive")
                return rep
        else:
            rep.add(BAD_ROUTING, f"ray {r} has unknown terminal {term!r}")
            return rep
    p, q = len(lefts), len(rights)
    if sorted(lefts) != list(range(1, p + 1)):
        rep.add(BAD_ROUTING, f"left points {sorted(lefts)} not exactly 1..{p}")
        return rep
    if sorted(rights) != list(range(1, q + 1)):
        rep.add(BAD_ROUTING, f"right points {sorted(rights)} not exactly 1..{q}")
        return rep
    if t.strand_ids is not None and len(t.strand_ids) != n:
        rep.add(BAD_ROUTING, f"strand_ids has {len(t.strand_ids)} entries, expected {n}")
        return rep

    if not planarity_ok(t):
        rep.add(NON_PLANAR, "routing admits no noncrossing annular realization")
        return rep

    pieces, cycles = strand_pieces(t)
    if cycles and not (allow_closed and p + q == 0):
        rep.add(CLOSED_COMPONENT, f"{len(cycles)} closed strand(s) inside a tangle")
        return rep

    # every strand passes through the single crossing, so the union of
    # chords and arcs is connected whenever the shape checks pass; verify
    # the traversal really covered all rays as a guard
    covered = sum(2 * len(pc["chords"]) for pc in pieces) + sum(2 * len(cy) for cy in cycles)
    if covered != n2:
        rep.add(DISCONNECTED, "strand traversal did not cover all rays")
        return rep

    rep.facts.update(p=p, q=q, pieces=len(pieces), closed=len(cycles))
    return rep


def rotated(t: ElementaryTangle, s: int) -> ElementaryTangle:
    """Relabel rays by r -> r+s (mod 2n): the same drawn tangle with the
    inner disk's reference direction rotated."""
    n, n2 = t.n, 2 * t.n
    s = s % n2
    routing = [None] * n2
    for r, term in enumerate(t.routing):
        nt = ("RAY", (term[1] + s) % n2) if term[0] == "RAY" else term
        routing[(r + s) % n2] = nt
    heights = [0] * n
    ids = [None] * n if t.strand_ids is not None else None
    for k in range(n):
        heights[(k + s) % n] = t.heights[k]
        if ids is not None:
            ids[(k + s) % n] = t.strand_ids[k]
    return ElementaryTangle(n, tuple(heights), tuple(routing), tuple(ids) if ids else None)


def canonical(t: ElementaryTangle) -> ElementaryTangle:
    """Lexicographically least ray rotation; catalog and dedup identity."""
    best = None
    best_key = None
    for s in range(2 * t.n):
        cand = rotated(t, s)
        key = (cand.heights, cand.routing)
        if best_key is None or key < best_key:
            best_key, best = key, cand
    return best


def enumerate_routings(n):
    """All structurally well-formed routings for 2n rays (not necessarily
    planar or free of closed strands)."""
    n2 = 2 * n

    def splits(avail):
        if not avail:
            yield [], []
            return
        r = avail[0]
        rest = avail[1:]
        for pairs, direct in splits(rest):
            yield pairs, [r] + direct
        for i in range(len(rest)):
            r2 = rest[i]
            rest2 = rest[:i] + rest[i + 1 :]
            for pairs, direct in splits(rest2):
                yield [(r, r2)] + pairs, direct

    for pairs, direct in splits(list(range(n2))):
        d = len(direct)
        for mask in range(1 << d):
            lrays = [direct[i] for i in range(d) if mask >> i & 1]
            rrays = [direct[i] for i in range(d) if not mask >> i & 1]
            p, q = len(lrays), len(rrays)
            for lperm in permutations(range(1, p + 1)):
                for rperm in permutations(range(1, q + 1)):
                    routing = [None] * n2
                    for a, b in pairs:
                        routing[a] = ("RAY", b)
                        routing[b] = ("RAY", a)
                    for ray, i in zip(lrays, lperm):
                        routing[ray] = ("L", i)
                    for ray, j in zip(rrays, rperm):
                        routing[ray] = ("R", j)
                    yield tuple(routing)


def enumerate_tangles(n, allow_closed=False, all_heights=True):
    """All valid tangles of multiplicity n, deduplicated by ray rotation."""
    heights_list = list(permutations(range(1, n + 1))) if all_heights else [tuple(range(1, n + 1))]
    seen = set()
    for routing in enumerate_routings(n):
        probe = ElementaryTangle(n, tuple(range(1, n + 1)), routing)
        if not validate_tangle(probe, allow_closed=allow_closed).ok:
            continue
        for heights in heights_list:
            t = ElementaryTangle(n, heights, routing)
            c = canonical(t)
            key = (c.heights, c.routing)
            if key in seen:
                continue
            seen.add(key)
            yield c
