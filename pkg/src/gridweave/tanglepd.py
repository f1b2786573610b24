"""Resolve an elementary tangle into its 2-crossing planar tangle diagram.

Strand k of an n-fold crossing is realized as the straight chord between the
circle points of rays k and k+n, with each chord's endpoints nudged along
the circle by k*delta (exact rationals) to reach general position. Any two
chords have interleaved endpoints, so every pair crosses exactly once and
the result has n(n-1)/2 double crossings.

Crossing records use a fixed local convention: the four edge ports are
numbered counterclockwise with the UNDER strand always on the (0,2)
diagonal. With ports labeled that way, the bracket's A-smoothing joins
ports {0,3} and {1,2}, the B-smoothing joins {0,1} and {2,3}, and an
oriented crossing is positive exactly when (over_in - under_in) mod 4 == 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DEGENERATE_PERTURBATION, GridweaveError
from .poly import LaurentPoly
from .tangle import ElementaryTangle, boundary_profile, outer_position

DELTA_POLY = LaurentPoly({2: -1, -2: -1})  # loop value -A^2 - A^-2


@dataclass(frozen=True)
class TanglePD:
    """A 2-crossing tangle diagram in a disk.

    m boundary points sit counterclockwise at positions 0..m-1. Each
    crossing is a 4-tuple of edge ids at ports 0..3 (ccw, under=(0,2));
    boundary[i] is the edge id incident to boundary position i. chords[ci]
    records the (under strand, over strand) indices of the source tangle.
    """

    m: int
    crossings: tuple
    boundary: tuple
    chords: tuple = ()

    @property
    def ncrossings(self):
        return len(self.crossings)


def _point(t: Fraction):
    den = 1 + t * t
    return (Fraction(1 - t * t, 1) / den, Fraction(2 * t, 1) / den)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _angle_key(v):
    # ccw order starting just above the positive x-axis
    half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    return half


def _ccw_sorted(vectors):
    def cmp_key(i):
        return _angle_key(vectors[i])

    idx = sorted(range(len(vectors)), key=cmp_key)
    # refine within halves by pairwise cross products (insertion sort is
    # fine for 4 items)
    for i in range(1, len(idx)):
        j = i
        while j > 0:
            a, b = vectors[idx[j - 1]], vectors[idx[j]]
            if _angle_key(a) == _angle_key(b) and _cross(a, b) < 0:
                idx[j - 1], idx[j] = idx[j], idx[j - 1]
                j -= 1
            else:
                break
    return idx


def from_elementary(t: ElementaryTangle, attempt: int = 0) -> TanglePD:
    """Chord-resolve a valid tangle; retries internally on degenerate
    perturbations before giving up."""
    last = None
    for a in range(attempt, attempt + 8):
        try:
            return _resolve_once(t, a)
        except GridweaveError as e:
            if e.code != DEGENERATE_PERTURBATION:
                raise
            last = e
    raise last


def _resolve_once(t: ElementaryTangle, attempt: int) -> TanglePD:
    n = t.n
    n2 = 2 * n
    p, q = boundary_profile(t)
    m = p + q
    delta = Fraction(1, 4 * n * n + attempt)

    ends = []
    dirs = []
    for k in range(n):
        u = Fraction(2 * k + 1 - n2, 2) + k * delta
        v = Fraction(2 * (k + n) + 1 - n2, 2) + k * delta
        A, B = _point(u), _point(v)
        ends.append((A, B))
        dirs.append(_sub(B, A))

    # exact pairwise intersections; interleaved circle chords always meet
    hits = {k: [] for k in range(n)}  # chord -> list of (param s, crossing id)
    cross_meta = []  # per crossing: dict with chords, point, port map
    points_seen = {}
    for i, j in combinations(range(n), 2):
        Ai, _ = ends[i]
        Aj, _ = ends[j]
        di, dj = dirs[i], dirs[j]
        den = _cross(di, dj)
        if den == 0:
            raise GridweaveError(DEGENERATE_PERTURBATION, f"parallel chords {i},{j}")
        s = _cross(_sub(Aj, Ai), dj) / den
        u = _cross(_sub(Aj, Ai), di) / den
        if not (0 < s < 1 and 0 < u < 1):
            raise GridweaveError(DEGENERATE_PERTURBATION, f"chords {i},{j} missed")
        pt = (Ai[0] + s * di[0], Ai[1] + s * di[1])
        if pt in points_seen:
            raise GridweaveError(DEGENERATE_PERTURBATION, f"concurrent chords at {pt}")
        ci = len(cross_meta)
        points_seen[pt] = ci
        under, over = (i, j) if t.heights[i] < t.heights[j] else (j, i)
        du, do = dirs[under], dirs[over]
        vecs = [(-du[0], -du[1]), du, (-do[0], -do[1]), do]
        order = _ccw_sorted(vecs)
        start = order.index(0)  # port 0 faces back along the under chord
        ports = {}
        names = ["uA", "uB", "oA", "oB"]
        for slot in range(4):
            ports[names[order[(start + slot) % 4]]] = slot
        if ports["uB"] != 2:
            raise GridweaveError(DEGENERATE_PERTURBATION, "port geometry broke")
        cross_meta.append({"under": under, "over": over, "ports": ports})
        hits[i].append((s, ci))
        hits[j].append((u, ci))

    # edges along each chord, then fuse ray stubs through the outer routing
    def port_of(ci, chord, side):
        meta = cross_meta[ci]
        tag = ("u" if chord == meta["under"] else "o") + side
        return meta["ports"][tag]

    raw_edges = []  # (end1, end2), end = ('ray', r) | ('c', ci, port)
    ray_stub = {}
    for k in range(n):
        stops = [("ray", k)]
        for s, ci in sorted(hits[k]):
            stops.append(("c", ci))
        stops.append(("ray", k + n))
        for a, b in zip(stops, stops[1:]):
            e1 = a if a[0] == "ray" else ("c", a[1], port_of(a[1], k, "B"))
            e2 = b if b[0] == "ray" else ("c", b[1], port_of(b[1], k, "A"))
            eid = len(raw_edges)
            raw_edges.append([e1, e2])
            for end in (e1, e2):
                if end[0] == "ray":
                    ray_stub[end[1]] = eid

    parent = list(range(len(raw_edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    boundary_end = {}  # edge id -> list of boundary positions
    for r, term in enumerate(t.routing):
        eid = ray_stub[r]
        if term[0] == "RAY":
            parent[find(eid)] = find(ray_stub[term[1]])
        else:
            boundary_end.setdefault(eid, []).append(outer_position(term, p, q))

    # renumber fused edges densely
    rep_ids = {}
    for e in range(len(raw_edges)):
        rep = find(e)
        if rep not in rep_ids:
            rep_ids[rep] = len(rep_ids)

    crossings = [[None] * 4 for _ in cross_meta]
    for eid, (e1, e2) in enumerate(raw_edges):
        final = rep_ids[find(eid)]
        for end in (e1, e2):
            if end[0] == "c":
                crossings[end[1]][end[2]] = final
    boundary = [None] * m
    for eid, positions in boundary_end.items():
        for pos in positions:
            boundary[pos] = rep_ids[find(eid)]

    if m and any(b is None for b in boundary):
        raise GridweaveError(DEGENERATE_PERTURBATION, "boundary wiring incomplete")
    return TanglePD(
        m=m,
        crossings=tuple(tuple(c) for c in crossings),
        boundary=tuple(boundary),
        chords=tuple((cm["under"], cm["over"]) for cm in cross_meta),
    )


# ---------------------------------------------------------------------------
# state sums over a TanglePD

A_SMOOTH = ((0, 3), (1, 2))
B_SMOOTH = ((0, 1), (2, 3))


def _state_components(tp: TanglePD, state):
    """Union edges under the given smoothing state. Returns (loops,
    pairing) where pairing is a sorted tuple of boundary-position pairs."""
    nedges = 0
    for c in tp.crossings:
        nedges = max(nedges, max(c) + 1)
    for b in tp.boundary:
        nedges = max(nedges, b + 1)
    parent = list(range(nedges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for ci, c in enumerate(tp.crossings):
        pairs = A_SMOOTH if state >> ci & 1 == 0 else B_SMOOTH
        for a, b in pairs:
            union(c[a], c[b])

    # each edge end contributes; a component is a loop iff no boundary
    # position lands in it
    comp_bpoints = {}
    for pos, eid in enumerate(tp.boundary):
        comp_bpoints.setdefault(find(eid), []).append(pos)

    comp_all = set()
    for c in tp.crossings:
        for e in c:
            comp_all.add(find(e))
    for b in tp.boundary:
        comp_all.add(find(b))

    loops = 0
    pairing = []
    for comp in comp_all:
        pts = comp_bpoints.get(comp, [])
        if not pts:
            loops += 1
        else:
            assert len(pts) == 2, "boundary chain must have two endpoints"
            pairing.append(tuple(sorted(pts)))
    return loops, tuple(sorted(pairing))


def tl_element(tp: TanglePD) -> dict:
    """Raw Temperley-Lieb element: map noncrossing boundary pairing ->
    LaurentPoly coefficient, with each closed loop contributing a factor
    of -A^2-A^-2. Tangles only (m > 0)."""
    assert tp.m > 0
    out = {}
    nc = tp.ncrossings
    for state in range(1 << nc):
        a_count = nc - bin(state).count("1")
        loops, pairing = _state_components(tp, state)
        coeff = LaurentPoly.monomial(2 * a_count - nc)  # A^(a-b)
        term = coeff * DELTA_POLY**loops
        cur = out.get(pairing)
        out[pairing] = term if cur is None else cur + term
    return {k: v for k, v in out.items() if not v.is_zero()}


OTHER_PORT = {0: 2, 1: 3, 2: 0, 3: 1}


def trace_strands(tp: TanglePD):
    """Walk boundary-to-boundary strands. Returns a list of strand dicts:
    endpoints (pair of boundary positions), and steps: (crossing, in_port)
    along the walk. Closed circles are returned in the second list."""
    end_map = {}  # edge -> [end, end], end = ('c', ci, port) | ('b', pos)
    for ci, c in enumerate(tp.crossings):
        for port, eid in enumerate(c):
            end_map.setdefault(eid, []).append(("c", ci, port))
    for pos, eid in enumerate(tp.boundary):
        end_map.setdefault(eid, []).append(("b", pos))

    def edge_at(end):
        if end[0] == "b":
            return tp.boundary[end[1]]
        return tp.crossings[end[1]][end[2]]

    def across(end):
        a, b = end_map[edge_at(end)]
        return b if a == end else a

    visited = set()
    strands = []
    for pos in range(tp.m):
        start = ("b", pos)
        if start in visited:
            continue
        visited.add(start)
        steps = []
        end = start
        while True:
            nxt = across(end)
            visited.add(nxt)
            if nxt[0] == "b":
                strands.append({"ends": (pos, nxt[1]), "steps": steps})
                break
            ci, port = nxt[1], nxt[2]
            steps.append((ci, port))
            end = ("c", ci, OTHER_PORT[port])
            visited.add(end)

    circles = []
    for ci in range(len(tp.crossings)):
        for port in range(4):
            start = ("c", ci, port)
            if start in visited:
                continue
            steps = []
            end = start
            # leave via the partner port, as if we just entered at `port`
            end = ("c", ci, OTHER_PORT[port])
            visited.add(start)
            visited.add(end)
            steps.append((ci, port))
            while True:
                nxt = across(end)
                if nxt == start:
                    break
                visited.add(nxt)
                steps.append((nxt[1], nxt[2]))
                end = ("c", nxt[1], OTHER_PORT[nxt[2]])
                visited.add(end)
            circles.append(steps)
    return strands, circles


def boundary_pairing(tp: TanglePD):
    strands, _ = trace_strands(tp)
    return tuple(sorted(tuple(sorted(s["ends"])) for s in strands))


# sign of a curl whose loop edge occupies ports (i, i+1 mod 4); derived by
# directing the strand through both passes and applying the
# (over_in - under_in) mod 4 == 1 rule
_CURL_SIGN = {0: -1, 1: 1, 2: -1, 3: 1}


def reduce_curls(tp: TanglePD):
    """Splice out every crossing one strand enters twice in a row (a curl:
    one edge on two cyclically adjacent ports). Each removal is a twist
    untwisted, so the underlying link is unchanged while the writhe drops
    by the curl's sign. Returns (reduced diagram, curl count, erased
    writhe). Inputs must have no closed components."""
    crossings = [list(c) for c in tp.crossings]
    boundary = list(tp.boundary)
    chords = list(tp.chords) if tp.chords else [None] * len(crossings)
    alive = [True] * len(crossings)
    count = 0
    writhe = 0

    def relabel(old, new):
        for c in crossings:
            for i in range(4):
                if c[i] == old:
                    c[i] = new
        for i in range(len(boundary)):
            if boundary[i] == old:
                boundary[i] = new

    changed = True
    while changed:
        changed = False
        for ci, c in enumerate(crossings):
            if not alive[ci]:
                continue
            for i in range(4):
                if c[i] == c[(i + 1) % 4]:
                    e1, e2 = c[(i + 2) % 4], c[(i + 3) % 4]
                    if e1 == e2:
                        raise AssertionError("curl closes a free loop")
                    alive[ci] = False
                    count += 1
                    writhe += _CURL_SIGN[i]
                    relabel(e2, e1)
                    changed = True
                    break

    reduced = TanglePD(
        m=tp.m,
        crossings=tuple(tuple(c) for ci, c in enumerate(crossings) if alive[ci]),
        boundary=tuple(boundary),
        chords=tuple(ch for ci, ch in enumerate(chords) if alive[ci] and ch is not None),
    )
    return reduced, count, writhe


def writhe_vector(tp: TanglePD):
    """Writhes under all 2^s strand orientations, strands ordered by their
    least boundary position, bit=1 meaning 'directed away from the least
    position'... bit=0 is the reverse. Also returns the strand order."""
    strands, circles = trace_strands(tp)
    assert not circles, "writhe vector is defined for strand tangles only"
    strands = sorted(strands, key=lambda s: min(s["ends"]))

    # per crossing, note which strand passes under / over and the in-port
    # for the default (bit=1) direction of that strand
    under_info = {}
    over_info = {}
    for si, s in enumerate(strands):
        lo = min(s["ends"])
        steps = s["steps"] if s["ends"][0] == lo else None
        if steps is None:
            # walked from the other end: reverse, flipping in-ports
            other = {0: 2, 1: 3, 2: 0, 3: 1}
            steps = [(ci, other[port]) for ci, port in reversed(s["steps"])]
        for ci, in_port in steps:
            if in_port in (0, 2):
                under_info[ci] = (si, in_port)
            else:
                over_info[ci] = (si, in_port)

    flip = {0: 2, 1: 3, 2: 0, 3: 1}
    n_str = len(strands)
    vec = []
    for bits in range(1 << n_str):
        w = 0
        for ci in range(len(tp.crossings)):
            su, u_in = under_info[ci]
            so, o_in = over_info[ci]
            if not (bits >> su & 1):
                u_in = flip[u_in]
            if not (bits >> so & 1):
                o_in = flip[o_in]
            w += 1 if (o_in - u_in) % 4 == 1 else -1
        vec.append(w)
    ends_order = tuple(tuple(sorted(s["ends"])) for s in strands)
    return tuple(vec), ends_order
