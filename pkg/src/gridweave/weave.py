"""Weave elementary tangles into weak rectangular tangles.

Multiplicities 2 and 3 are served by exhaustive catalogs keyed by the
reduced certificate. Higher multiplicities strip the heights-maximal
strand, weave the remaining tangle recursively, and re-attach the strand
with at most two fresh verticals routed outside the sub-diagram's
occupied band; since the strand sits on top, its verticals pass over
whatever they cross. If the stripped remainder has all its boundary on
one side, outer arcs are first cut and re-closed as cap verticals (one
each) so the remainder becomes weavable. Every level of the recursion is
accepted only when the candidate's reduced certificate equals the target
tangle's, so a returned diagram is certified, not assumed.

Vertical budget: u(2) = 1, u(n) = 2n - 4 for n >= 3. The recursion
spends u(n-1) + 2 in every branch: +2 re-attachment verticals when the
remainder keeps boundary on both sides, or caps + a cheaper re-attachment
(the strand then has the deficient side to itself) when it does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from itertools import product

from .errors import (
    BOUND_EXCEEDED,
    GridweaveError,
    INVALID_INPUT,
    SEARCH_EXHAUSTED,
    TYPE_ZERO_INPUT,
)
from .rect import H, V, WeakRectTangle, to_tanglepd, validate_weak_rect
from .signature import elementary_reduced_key, rect_reduced_key
from .tangle import (
    ElementaryTangle,
    boundary_profile,
    is_type_zero,
    validate_tangle,
)
from .tanglepd import boundary_pairing, writhe_vector
from .weavecat import lookup, search_rect


def u_bound(multiplicity: int) -> int:
    return 1 if multiplicity == 2 else 2 * multiplicity - 4


@dataclass(frozen=True)
class WeaveResult:
    tangle_rect: WeakRectTangle
    vertical_count: int
    construction_trace: tuple

    def __post_init__(self):
        assert self.vertical_count == len(self.tangle_rect.verticals)


# ---------------------------------------------------------------------------
# strand removal (tangle level)


def _removal_info(t: ElementaryTangle, strands, end_rays):
    """Everything about deleting a set of strands that does not depend on
    where dangling arc stubs get their new terminals. end_rays carry the
    removed part's outward connections (terminals or arcs onto survivors)."""
    n = t.n
    gone = {r for k in strands for r in (k, k + n)}
    old_rays = [r for r in range(2 * n) if r not in gone]
    new_of = {old: new for new, old in enumerate(old_rays)}
    kept = sorted(set(range(n)) - set(strands))
    order = sorted(t.heights[k] for k in kept)
    heights2 = tuple(order.index(t.heights[k]) + 1 for k in kept)

    ends = tuple(t.routing[r] for r in end_rays)
    for kind, val in ends:
        assert kind != "RAY" or val not in gone, "removed part is closed"
    dangles = []
    base = [None] * len(old_rays)
    lefts = []  # (original index, new ray)
    rights = []
    for new, old in enumerate(old_rays):
        kind, val = t.routing[old]
        if kind == "L":
            lefts.append((val, new))
        elif kind == "R":
            rights.append((val, new))
        elif val in gone:
            dangles.append(new)
        else:
            base[new] = ("RAY", new_of[val])
    lefts.sort()
    rights.sort()
    return {
        "strands": tuple(strands),
        "rays": tuple(end_rays),
        "old_rays": tuple(old_rays),
        "heights": heights2,
        "ends": ends,
        "base": base,
        "dangles": tuple(dangles),
        "lefts": [ray for _, ray in lefts],
        "rights": [ray for _, ray in rights],
    }


def _finish_candidate(t, info, left_seq, right_seq):
    routing = list(info["base"])
    for i, ray in enumerate(left_seq):
        routing[ray] = ("L", i + 1)
    for j, ray in enumerate(right_seq):
        routing[ray] = ("R", j + 1)
    t2 = ElementaryTangle(t.n - len(info["strands"]), info["heights"], tuple(routing))
    if not validate_tangle(t2).ok:
        return None
    placed = {}
    for d in info["dangles"]:
        if d in left_seq:
            placed[d] = ("L", left_seq.index(d) + 1)
        else:
            placed[d] = ("R", right_seq.index(d) + 1)
    attachment = {
        "strands": info["strands"],
        "rays": info["rays"],
        "old_rays": info["old_rays"],
        "ends": info["ends"],
        "dangles": placed,
    }
    return t2, attachment


def _removal_candidates(t, strands, end_rays):
    """All valid (T2, attachment) results of deleting the given strands,
    one per planar placement of the dangling arc stubs."""
    info = _removal_info(t, strands, end_rays)
    dangles = info["dangles"]
    out = []

    def insertions(seq, ray):
        return [seq[:i] + [ray] + seq[i:] for i in range(len(seq) + 1)]

    if not dangles:
        cand = _finish_candidate(t, info, info["lefts"], info["rights"])
        out = [cand] if cand else []
    elif len(dangles) == 1:
        d = dangles[0]
        for side in "LR":
            ls, rs = info["lefts"], info["rights"]
            options = insertions(ls, d) if side == "L" else insertions(rs, d)
            for seq in options:
                cand = (
                    _finish_candidate(t, info, seq, rs)
                    if side == "L"
                    else _finish_candidate(t, info, ls, seq)
                )
                if cand:
                    out.append(cand)
    else:
        d1, d2 = dangles
        for side1, side2 in product("LR", repeat=2):
            ls1 = insertions(info["lefts"], d1) if side1 == "L" else [info["lefts"]]
            rs1 = insertions(info["rights"], d1) if side1 == "R" else [info["rights"]]
            for ls, rs in product(ls1, rs1):
                ls2 = insertions(ls, d2) if side2 == "L" else [ls]
                rs2 = insertions(rs, d2) if side2 == "R" else [rs]
                for ls_f, rs_f in product(ls2, rs2):
                    cand = _finish_candidate(t, info, ls_f, rs_f)
                    if cand:
                        out.append(cand)

    # stable preference: remainders keeping boundary on both sides first
    out.sort(key=lambda cand: is_type_zero(cand[0]))
    return out


def strip_candidates(t: ElementaryTangle):
    """All valid (T', attachment) results of deleting the heights-maximal
    strand, one per planar placement of the dangling arc stubs."""
    n = t.n
    k = t.heights.index(n)
    return _removal_candidates(t, (k,), (k, k + n))


def free_pair_candidates(t: ElementaryTangle, any_shape=False):
    """Reductions that extract a pair: two strands joined by an outer arc,
    forming a composite curve that doubles back through the crossing
    region. By default only free pairs are kept, ones that retract out of
    the region cleanly, which needs both crossings with each remaining
    strand to cancel - two conditions per interior strand k:

    - heights: k does not pass between the pair's heights, else the
      composite goes under k once and over it once (a clasp);
    - signs: k's chord does not separate the arc's end rays, else the
      composite's two passes cross k in the same direction (a spiral
      around the center) and the crossings carry equal signs.

    With any_shape, clasping and spiralling pairs are kept too; their
    re-attachment then has to recreate the crossings, which only the
    wrap-around router can draw."""
    n = t.n
    out = []
    seen = set()
    for r, (kind, val) in enumerate(t.routing):
        if kind != "RAY":
            continue
        a, b = r % n, val % n
        if a == b:
            continue
        pair = tuple(sorted((a, b)))
        if pair in seen:
            continue
        seen.add(pair)
        if not any_shape:
            lo, hi = sorted((t.heights[a], t.heights[b]))
            if any(lo < t.heights[k] < hi for k in range(n) if k not in pair):
                continue
            span = {(r + d) % (2 * n) for d in range(1, (val - r) % (2 * n))}
            if any((k in span) != ((k + n) in span) for k in range(n) if k not in pair):
                continue
        end_rays = ((r + n) % (2 * n), (val + n) % (2 * n))
        out.extend(_removal_candidates(t, pair, end_rays))
    return out


def strip_top_strand(t: ElementaryTangle):
    """Delete the heights-maximal strand. Returns (T', attachment), taking
    the first planar placement for any dangling arc stubs (placements that
    keep T' two-sided are preferred).

    Raises SEARCH_EXHAUSTED when no placement is planar: an outer arc can
    pin a freed stub against the crossing region from every side, in which
    case the tangle minus its top strand is not an elementary tangle at
    all. Such tangles are woven by free-pair extraction instead."""
    if t.n < 3:
        raise GridweaveError(INVALID_INPUT, "stripping needs multiplicity >= 3")
    cands = strip_candidates(t)
    if not cands:
        raise GridweaveError(
            SEARCH_EXHAUSTED,
            "every stub placement for the top strand breaks planarity",
        )
    return cands[0]


def readd_strand(tprime: ElementaryTangle, attachment) -> ElementaryTangle:
    """Inverse of strip_top_strand: reinstall the strand as the new
    heights-maximal one."""
    n = tprime.n + 1
    (k,) = attachment["strands"]
    r1, r2 = attachment["rays"]
    old_rays = attachment["old_rays"]
    ends = attachment["ends"]
    dangles = attachment["dangles"]

    # final boundary order per side: the remainder's terminals with the
    # stub points removed (they fuse onto the strand and leave the
    # boundary), then the strand's own ends inserted at their ranks
    def side_order(side, marker):
        seq = [
            new
            for new, (kind, _) in sorted(
                ((new, term) for new, term in enumerate(tprime.routing) if term[0] == side),
                key=lambda item: item[1][1],
            )
            if new not in dangles
        ]
        for rank in sorted(val for kind, val in ends if kind == side):
            seq.insert(rank - 1, marker)
        return seq

    final_rank = {}
    for side in "LR":
        for pos, new in enumerate(side_order(side, marker=None)):
            if new is not None:
                final_rank[new] = (side, pos + 1)

    routing = [None] * (2 * n)
    routing[r1], routing[r2] = ends
    for new, term in enumerate(tprime.routing):
        old = old_rays[new]
        if new in dangles:
            partner = r1 if ends[0] == ("RAY", old) else r2
            routing[old] = ("RAY", partner)
        elif term[0] in "LR":
            routing[old] = final_rank[new]
        else:
            routing[old] = ("RAY", old_rays[term[1]])

    heights = list(tprime.heights)
    heights.insert(k, n)
    return ElementaryTangle(n, tuple(heights), tuple(routing))


# ---------------------------------------------------------------------------
# rect-level surgery


def _remap(rt: WeakRectTangle, fx, fy):
    return WeakRectTangle(
        tuple(V(fx(v.x), fy(v.ylo), fy(v.yhi), v.kind) for v in rt.verticals),
        tuple(H(fy(h.y), fx(h.xlo), fx(h.xhi)) for h in rt.horizontals),
    )


def canon_coords(rt: WeakRectTangle) -> WeakRectTangle:
    """Compress coordinates to dense ranks: walls 0..K, levels 1..H."""
    xs = sorted({v.x for v in rt.verticals} | {h.xlo for h in rt.horizontals} | {h.xhi for h in rt.horizontals})
    ys = sorted({h.y for h in rt.horizontals})
    fx = {x: i for i, x in enumerate(xs)}
    fy = {y: i + 1 for i, y in enumerate(ys)}
    return _remap(rt, fx.__getitem__, fy.__getitem__)


class _Frame:
    """A woven remainder re-coordinatized with room for additions: spare
    slots outside each side of the band, stretched levels, and the
    remainder's boundary horizontals extended to the new walls (stub
    points excepted: those are where the strand fuses on and they leave
    the boundary)."""

    def __init__(self, rt: WeakRectTangle, dangle_points):
        rt = canon_coords(rt)
        k = rt.xmax

        # doubling x leaves an unoccupied slot between adjacent columns,
        # so added verticals can also descend into the box interior
        def fx(x):
            return 2 * x + 6

        rt = _remap(rt, fx, lambda y: 8 * y)
        self.wall_l, self.wall_r = 0, 2 * k + 12
        self.slots_l = [1, 2, 3, 4, 5]               # outermost first
        self.slots_r = [2 * k + 11, 2 * k + 10, 2 * k + 9, 2 * k + 8, 2 * k + 7]
        self.interior = [2 * x + 7 for x in range(k)]
        left, right = rt.boundary_sides()
        self.dangle_at = {}
        for side, rank in dangle_points:
            y, hi = (left if side == "L" else right)[rank - 1]
            self.dangle_at[(side, rank)] = hi
        # a through horizontal can be a stub on one side and an honest
        # boundary point on the other, so exclusion is per side
        stub_l = {hi for (side, _), hi in self.dangle_at.items() if side == "L"}
        stub_r = {hi for (side, _), hi in self.dangle_at.items() if side == "R"}
        # ranks of the strand's wall ends count only points that stay on
        # the boundary, so stub levels are dropped here
        self.left_levels = [y for y, hi in left if hi not in stub_l]
        self.right_levels = [y for y, hi in right if hi not in stub_r]
        horizontals = list(rt.horizontals)
        for y, hi in left:
            if hi not in stub_l:
                h = horizontals[hi]
                horizontals[hi] = H(h.y, self.wall_l, h.xhi)
        for y, hi in right:
            if hi not in stub_r:
                h = horizontals[hi]
                horizontals[hi] = H(h.y, h.xlo, self.wall_r)
        self.verticals = list(rt.verticals)
        self.horizontals = horizontals
        ys = [h.y for h in horizontals]
        self.y_top = max(ys) + 4
        self.used_levels = set(ys)

    def fresh_level(self, y, floor=None):
        while y in self.used_levels:
            y -= 1
        if floor is not None and y <= floor:
            return None
        self.used_levels.add(y)
        return y

    def gap(self, side, t_rank, s_above):
        """Exclusive (lo, hi) level interval placing a new wall point at
        final rank t_rank on its side, given s_above strand ends above."""
        levels = self.left_levels if side == "L" else self.right_levels
        need = t_rank - 1 - s_above
        if need < 0 or need > len(levels):
            return None
        hi = levels[need - 1] if need > 0 else self.y_top + 2
        lo = levels[need] if need < len(levels) else 0
        return lo, hi

    def rank_level(self, side, t_rank, s_above):
        """A fresh level landing a new wall point at rank t_rank."""
        span = self.gap(side, t_rank, s_above)
        if span is None:
            return None
        lo, hi = span
        return self.fresh_level(hi - 1, floor=lo)

    def extend_dangle(self, side, rank, slot):
        hi = self.dangle_at[(side, rank)]
        h = self.horizontals[hi]
        if side == "L":
            self.horizontals[hi] = H(h.y, slot, h.xhi)
        else:
            self.horizontals[hi] = H(h.y, h.xlo, slot)
        return h.y

    def build(self):
        return WeakRectTangle(tuple(self.verticals), tuple(self.horizontals))


def _attach_cap(rt: WeakRectTangle, side: str) -> WeakRectTangle:
    """Close the top two boundary points on a side with one crossing-free
    vertical just outside the band."""
    left, right = rt.boundary_sides()
    pts = left if side == "L" else right
    assert len(pts) == 2, "cap expects exactly the two cut terminals"
    (y1, h1), (y2, h2) = pts
    horizontals = list(rt.horizontals)
    if side == "L":
        slot = min(h.xlo for h in horizontals) - 1
        for hi in (h1, h2):
            h = horizontals[hi]
            horizontals[hi] = H(h.y, slot, h.xhi)
    else:
        slot = max(h.xhi for h in horizontals) + 1
        for hi in (h1, h2):
            h = horizontals[hi]
            horizontals[hi] = H(h.y, h.xlo, slot)
    verticals = rt.verticals + (V(slot, min(y1, y2), max(y1, y2), "under"),)
    return WeakRectTangle(verticals, tuple(horizontals))


# ---------------------------------------------------------------------------
# re-attachment of the stripped strand


def _end_specs(t: ElementaryTangle, attachment):
    """Normalize the strand's two ends into wall/dangle attach records."""
    info = []
    for end_ray, term in zip(attachment["rays"], attachment["ends"]):
        kind, val = term
        if kind in "LR":
            info.append(("wall", kind, val))
        else:
            d = attachment["old_rays"].index(val)
            side, rank = attachment["dangles"][d]
            info.append(("dangle", side, rank))
    return info


def _readd_attempts(rprime, specs, kind_choices, budget):
    """Yield candidate rects joining the two strand ends over the frame.
    kind_choices lists (kind for spec 0's vertical, kind for spec 1's);
    a vertical serving both ends only takes kinds the two slots agree on.
    Templates are tried cheapest-first; every yield is geometry-valid and
    within budget, certification is the caller's job."""
    sides = [s[1] for s in specs]
    direct = [s[0] == "wall" for s in specs]
    kind_choices = list(dict.fromkeys(kind_choices))
    kinds_for = (
        list(dict.fromkeys(a for a, _ in kind_choices)),
        list(dict.fromkeys(b for _, b in kind_choices)),
    )
    kinds_shared = [a for a, b in kind_choices if a == b]

    def fresh_frame():
        return _Frame(rprime, [(s[1], s[2]) for s in specs if s[0] == "dangle"])

    # --- template: single through horizontal (both ends direct, opposite)
    if all(direct) and sides[0] != sides[1] and budget >= 0:
        fr = fresh_frame()
        a = specs[0] if sides[0] == "L" else specs[1]
        b = specs[1] if a is specs[0] else specs[0]
        ga = fr.gap("L", a[2], 0)
        gb = fr.gap("R", b[2], 0)
        if ga and gb:
            lo = max(ga[0], gb[0])
            hi = min(ga[1], gb[1])
            y = fr.fresh_level(hi - 1, floor=lo)
            if y is not None:
                fr.horizontals.append(H(y, fr.wall_l, fr.wall_r))
                yield fr.build(), "through", 0

    # --- template: one vertical (ends on opposite sides)
    if sides[0] != sides[1] and budget >= 1:
        for up_i in (0, 1):
            up, lo_end = specs[up_i], specs[1 - up_i]
            # the lo end runs to a slot outside the up end's side, one
            # vertical climbs above the band, a horizontal runs to the up
            # end's wall; that puts the up end above everything on its
            # side, so it must be a wall end of final rank 1
            if up[0] != "wall" or up[2] != 1:
                continue
            for v_kind in kinds_for[1 - up_i]:
                fr = fresh_frame()
                yt = fr.fresh_level(fr.y_top + 2)
                slot = (fr.slots_l if lo_end[1] == "L" else fr.slots_r)[0]
                if lo_end[0] == "wall":
                    ya = fr.rank_level(lo_end[1], lo_end[2], 0)
                    if ya is None:
                        continue
                    wall = fr.wall_l if lo_end[1] == "L" else fr.wall_r
                    fr.horizontals.append(H(ya, *sorted((wall, slot))))
                else:
                    ya = fr.extend_dangle(lo_end[1], lo_end[2], slot)
                far_wall = fr.wall_l if up[1] == "L" else fr.wall_r
                fr.verticals.append(V(slot, min(ya, yt), max(ya, yt), v_kind))
                fr.horizontals.append(H(yt, *sorted((slot, far_wall))))
                yield fr.build(), "hook", 1

    # --- template: one vertical C-shape (ends on the same side)
    if sides[0] == sides[1] and budget >= 1:
        for v_kind in kinds_shared:
            fr = fresh_frame()
            side = sides[0]
            slot = (fr.slots_l if side == "L" else fr.slots_r)[1]
            wall = fr.wall_l if side == "L" else fr.wall_r
            # direct ends go in top-rank-first so the above-counts are right
            order = sorted((0, 1), key=lambda i: specs[i][2] if direct[i] else 0)
            ys = []
            s_above = 0
            ok = True
            for i in order:
                sp = specs[i]
                if sp[0] == "wall":
                    y = fr.rank_level(side, sp[2], s_above)
                    if y is None:
                        ok = False
                        break
                    s_above += 1
                    fr.horizontals.append(H(y, *sorted((wall, slot))))
                    ys.append(y)
                else:
                    ys.append(fr.extend_dangle(side, sp[2], slot))
            if ok:
                fr.verticals.append(V(slot, min(ys), max(ys), v_kind))
                yield fr.build(), "c-shape", 1

    # --- template: two verticals over the top (any configuration)
    if budget >= 2 and sides[0] == sides[1]:
        for combo in kind_choices:
            fr = fresh_frame()
            yt = fr.fresh_level(fr.y_top + 2)
            pool = fr.slots_l if sides[0] == "L" else fr.slots_r
            wall = fr.wall_l if sides[0] == "L" else fr.wall_r
            order = sorted((0, 1), key=lambda i: specs[i][2] if direct[i] else 0)
            got = {}
            s_above = 0
            ok = True
            for i in order:
                sp = specs[i]
                if sp[0] == "wall":
                    y = fr.rank_level(sp[1], sp[2], s_above)
                    if y is None:
                        ok = False
                        break
                    s_above += 1
                    got[i] = y
                else:
                    got[i] = fr.horizontals[fr.dangle_at[(sp[1], sp[2])]].y
            if ok:
                hi_i = max((0, 1), key=lambda i: got[i])
                # the lower vertical spans the upper end's level, so it must
                # sit where the upper end's horizontal cannot reach: outside
                # it for a wall end, inside it for a stub extension
                if specs[hi_i][0] == "wall":
                    slot_of = {hi_i: pool[0], 1 - hi_i: pool[1]}
                else:
                    slot_of = {hi_i: pool[1], 1 - hi_i: pool[0]}
                for i in (0, 1):
                    sp = specs[i]
                    if sp[0] == "wall":
                        fr.horizontals.append(H(got[i], *sorted((wall, slot_of[i]))))
                    else:
                        fr.extend_dangle(sp[1], sp[2], slot_of[i])
                    fr.verticals.append(
                        V(slot_of[i], min(got[i], yt), max(got[i], yt), combo[i])
                    )
                fr.horizontals.append(H(yt, *sorted((slot_of[0], slot_of[1]))))
                yield fr.build(), "arch-same", 2

    if budget >= 2 and sides[0] != sides[1]:
        for combo in kind_choices:
            fr = fresh_frame()
            yt = fr.fresh_level(fr.y_top + 2)
            xs = []
            ys = []
            ok = True
            for sp in specs:
                slot = (fr.slots_l if sp[1] == "L" else fr.slots_r)[0]
                xs.append(slot)
                if sp[0] == "wall":
                    y = fr.rank_level(sp[1], sp[2], 0)
                    if y is None:
                        ok = False
                        break
                    wall = fr.wall_l if sp[1] == "L" else fr.wall_r
                    fr.horizontals.append(H(y, *sorted((wall, slot))))
                    ys.append(y)
                else:
                    ys.append(fr.extend_dangle(sp[1], sp[2], slot))
            if ok:
                for slot, y, v_kind in zip(xs, ys, combo):
                    fr.verticals.append(V(slot, min(y, yt), max(y, yt), v_kind))
                fr.horizontals.append(H(yt, *sorted((xs[0], xs[1]))))
                yield fr.build(), "arch", 2


def _route_attempts(rprime, specs, kind_choices, budget, deep=False):
    """Second-pass re-attachment: route the strand around the band as a
    chain of outer-slot verticals joined by horizontals at fresh extreme
    levels. A vertical spanning the full height of a side crosses that
    side's entire boundary, so a down-then-up pass wraps everything once:
    the shape needed when the strand clasps every other strand, which no
    single-detour template can draw. Geometry is enumerated first with
    placeholder kinds; kinds are then assigned only to verticals that
    actually cross something.

    A wall end whose chain starts on the far side may attach through the
    band at its rank level; the deep variant additionally lets up to two
    connectors sit in chosen gaps between a side's boundary points, so
    verticals can span partial height (a kind change mid-side needs
    this). Deep routing multiplies the search space and is meant to run
    only after the plain variant has failed everywhere."""
    seen = set()
    for m in range(2, min(budget, 5 if deep else 4) + 1):
        # connector levels between consecutive verticals alternate between
        # the top and bottom of the frame; same-extreme neighbours would
        # make a vertical with an empty span
        alternations = [
            tuple(("top", "bottom")[(j + start) % 2] for j in range(m - 1))
            for start in (0, 1)
        ]
        if deep:
            mids_options = [
                mids for base in alternations for mids in _gap_variants(rprime, base)
            ]
        else:
            mids_options = alternations
        if deep and m == 2:
            # two-vertical routes may also descend into the box interior;
            # integer tokens index the unoccupied slots between columns
            slot_choices = list(product(("L", "R") + tuple(range(12)), repeat=2))
        else:
            slot_choices = list(product("LR", repeat=m))
        for entry in (0, 1):
            e1, e2 = specs[entry], specs[1 - entry]
            for sides in slot_choices:
                explicit = any(not isinstance(s, str) for s in sides)
                # a wall end attaches on its own side at its rank, crosses
                # the band at its rank level, or transits at an extreme
                # level; a stub end only extends to a slot on its own side
                # or to an interior slot
                if e1[0] == "dangle":
                    if isinstance(sides[0], str) and sides[0] != e1[1]:
                        continue
                    t1_opts = ("dangle",)
                else:
                    t1_opts = ("rank",) if sides[0] == e1[1] else ("top", "bottom", "rank")
                if e2[0] == "dangle":
                    if isinstance(sides[-1], str) and sides[-1] != e2[1]:
                        continue
                    t2_opts = ("dangle",)
                else:
                    t2_opts = ("rank",) if sides[-1] == e2[1] else ("top", "bottom", "rank")
                for mids in mids_options:
                    if len(mids) != m - 1:
                        continue
                    for t1, t2 in product(t1_opts, t2_opts):
                        rt = _build_route(
                            rprime,
                            (e1, e2),
                            sides,
                            (t1,) + mids + (t2,),
                            slots=sides if explicit else None,
                        )
                        if rt is None or rt in seen:
                            continue
                        seen.add(rt)
                        carriers = [
                            i
                            for i, v in enumerate(rt.verticals[-m:], len(rt.verticals) - m)
                            if any(
                                v.ylo < h.y < v.yhi and h.xlo < v.x < h.xhi
                                for h in rt.horizontals
                            )
                        ]
                        vs = list(rt.verticals)
                        for combo in product(("over", "under"), repeat=len(carriers)):
                            for i, knd in zip(carriers, combo):
                                vs[i] = V(vs[i].x, vs[i].ylo, vs[i].yhi, knd)
                            yield WeakRectTangle(tuple(vs), rt.horizontals), "route", m


def _gap_variants(rprime, base):
    """All ways to replace one connector of a route's top/bottom
    alternation with a level inside a gap between a side's boundary
    points. More than one replaced connector multiplies the route count
    past what a rescue pass can afford."""
    yield base
    left, right = rprime.boundary_sides()
    gaps = [("gap", "L", r) for r in range(1, len(left) + 2)]
    gaps += [("gap", "R", r) for r in range(1, len(right) + 2)]
    for j in range(len(base)):
        for g in gaps:
            yield base[:j] + (g,) + base[j + 1:]


def _build_route(rprime, ends, sides, level_types, slots=None):
    """One route geometry: ends = (entry spec, exit spec), sides = the
    verticals' sides in chain order, level_types = the m+1 horizontal
    levels (entry h, connectors, exit h) as rank/top/bottom/dangle or a
    ("gap", side, rank) tuple for a level between that side's boundary
    points. An explicit slots list (frame slot indices, interior ones
    included) overrides the per-side assignment. Returns the rect with
    all-under verticals, or None if a rank or gap level is blocked."""
    fr = _Frame(rprime, [(s[1], s[2]) for s in ends if s[0] == "dangle"])
    m = len(sides)
    if slots is None:
        slot_iters = {"L": iter(fr.slots_l), "R": iter(fr.slots_r)}
        try:
            slots = [next(slot_iters[s]) for s in sides]
        except StopIteration:
            return None
    else:
        resolved = []
        for s in slots:
            if s == "L":
                resolved.append(fr.slots_l[0])
            elif s == "R":
                resolved.append(fr.slots_r[0])
            elif s < len(fr.interior):
                resolved.append(fr.interior[s])
            else:
                return None
        slots = resolved
        if len(set(slots)) != m:
            return None
    wall_of = {"L": fr.wall_l, "R": fr.wall_r}
    levels = []
    for j, lt in enumerate(level_types):
        if lt == "top":
            levels.append(fr.fresh_level(fr.y_top + 2))
        elif lt == "bottom":
            levels.append(fr.fresh_level(-2))
        elif lt == "dangle":
            sp = ends[0] if j == 0 else ends[1]
            slot = slots[0] if j == 0 else slots[-1]
            levels.append(fr.extend_dangle(sp[1], sp[2], slot))
        elif isinstance(lt, tuple):
            span = fr.gap(lt[1], lt[2], 0)
            if span is None:
                return None
            lo, hi = span
            y = fr.fresh_level(hi - 1, floor=lo)
            if y is None:
                return None
            levels.append(y)
        else:
            sp = ends[0] if j == 0 else ends[1]
            other = ends[1] if j == 0 else ends[0]
            other_t = level_types[-1] if j == 0 else level_types[0]
            s_above = 0
            if other[1] == sp[1]:
                # the other end lands above this one when it sits at the
                # frame top or at a smaller (higher) rank on the same wall
                if other_t == "top" or (other_t == "rank" and other[2] < sp[2]):
                    s_above = 1
            y = fr.rank_level(sp[1], sp[2], s_above)
            if y is None:
                return None
            levels.append(y)
    if level_types[0] != "dangle":
        fr.horizontals.append(H(levels[0], *sorted((wall_of[ends[0][1]], slots[0]))))
    for j in range(m - 1):
        fr.horizontals.append(H(levels[j + 1], *sorted((slots[j], slots[j + 1]))))
    if level_types[-1] != "dangle":
        fr.horizontals.append(H(levels[m], *sorted((slots[-1], wall_of[ends[1][1]]))))
    for j in range(m):
        ya, yb = levels[j], levels[j + 1]
        if ya == yb:
            return None
        fr.verticals.append(V(slots[j], min(ya, yb), max(ya, yb), "under"))
    return fr.build()


# ---------------------------------------------------------------------------
# cap peeling (tangle level, for one-sided remainders)


def _peel_candidates(t: ElementaryTangle):
    """Cut one outer arc and expose its rays as terminals on the empty
    side. Yields (core tangle, side cut on)."""
    p, q = boundary_profile(t)
    side = "R" if q == 0 else "L"
    arcs = sorted(
        {tuple(sorted((r, val))) for r, (kind, val) in enumerate(t.routing) if kind == "RAY"}
    )
    for a, b in arcs:
        for first, second in ((a, b), (b, a)):
            routing = list(t.routing)
            routing[first] = (side, 1)
            routing[second] = (side, 2)
            t2 = ElementaryTangle(t.n, t.heights, tuple(routing))
            if validate_tangle(t2).ok:
                yield t2, side


def _weave_one_sided(t: ElementaryTangle, trace, cheap=True):
    """Weave a type-0 (or closed) remainder: cut arcs until two-sided,
    weave the core, close the cuts with cap verticals."""
    caps = []
    core = t
    for _ in range(2):
        if not is_type_zero(core):
            break
        found = None
        for cand, side in _peel_candidates(core):
            found = (cand, side)
            break
        if found is None:
            return None
        core, side = found
        caps.append(side)
    if is_type_zero(core):
        return None
    try:
        inner = weave_tangle(core, _inner=cheap)
    except GridweaveError as err:
        if err.code == BOUND_EXCEEDED:
            return None
        raise
    rt = inner.tangle_rect
    for side in reversed(caps):
        rt = _attach_cap(rt, side)
    trace.extend(inner.construction_trace)
    trace.append({"op": "caps", "sides": tuple(reversed(caps))})
    return rt, inner.vertical_count + len(caps)


# ---------------------------------------------------------------------------
# the weaver


_memo = {}


def weave_tangle(t: ElementaryTangle, _inner: bool = False) -> WeaveResult:
    report = validate_tangle(t)
    if not report.ok:
        raise GridweaveError(INVALID_INPUT, "tangle invalid: " + report.issues[0].message)
    if is_type_zero(t):
        raise GridweaveError(TYPE_ZERO_INPUT, "cannot weave a one-sided tangle")

    # remainders repeat massively across decomposition candidates, so
    # successful weaves and dead ends are both memoized; the partial-span
    # rescue pass runs only at the outermost call, so its dead ends are
    # memoized separately from the recursion's
    memo_key = (t.heights, t.routing, _inner)
    got = _memo.get(memo_key)
    if got is None:
        other = _memo.get((t.heights, t.routing, not _inner))
        # the outer search is a superset of the inner one: outer results
        # transfer to inner calls wholesale, inner ones only on success
        if other is not None and (_inner or other != BOUND_EXCEEDED):
            got = other
    if got is not None:
        if got == BOUND_EXCEEDED:
            raise GridweaveError(BOUND_EXCEEDED, "memoized exhaustion")
        return got
    try:
        result = _weave_uncached(t, _inner)
    except GridweaveError as err:
        if err.code == BOUND_EXCEEDED:
            _memo[memo_key] = BOUND_EXCEEDED
        raise
    _memo[memo_key] = result
    return result


def _weave_uncached(t: ElementaryTangle, _inner: bool = False) -> WeaveResult:

    n = t.n
    bound = u_bound(n)
    target, base = elementary_reduced_key(t)
    p, q = boundary_profile(t)

    if n <= 3:
        hit = lookup(target, (p + q) // 2, bound)
        if hit is None:
            raise GridweaveError(
                BOUND_EXCEEDED,
                f"no catalog diagram within {bound} verticals matches a "
                f"{n}-fold tangle; this is a bug, not an input error",
            )
        rt, v_count = hit
        _, rect_base = rect_reduced_key(rt)
        trace = (
            {
                "op": "catalog",
                "multiplicity": n,
                "verticals": v_count,
                "twist_shift": base - rect_base,
            },
        )
        return WeaveResult(rt, v_count, trace)

    # cheap minimality pre-pass: tangles tracing at most two curves often
    # admit one- or two-vertical drawings regardless of multiplicity, and
    # a smaller sub-weave leaves re-attachment more budget upstream
    paths = (p + q) // 2
    if paths <= 2:
        hit = search_rect(target, paths, min(bound, 2))
        if hit is not None:
            rt, v_count = hit
            _, rect_base = rect_reduced_key(rt)
            trace = (
                {
                    "op": "direct-search",
                    "paths": paths,
                    "verticals": v_count,
                    "twist_shift": base - rect_base,
                },
            )
            return WeaveResult(rt, v_count, trace)

    # candidate decompositions, cheapest interpretation first: peel the top
    # strand (re-attach passing over everything), extract a free pair, peel
    # the bottom strand (under everything), peel a middle strand. Pair and
    # middle redraws may pass remaining strands either way, so every kind
    # pair is fair game and the certificate arbitrates.
    over, under = ("over", "over"), ("under", "under")
    mixed = (over, ("over", "under"), ("under", "over"), under)

    def decompositions(wide):
        for cand in strip_candidates(t):
            yield "strip-top", (over,), cand
        for cand in free_pair_candidates(t, any_shape=wide):
            yield "extract-pair", mixed, cand
        k_low = t.heights.index(1)
        for cand in _removal_candidates(t, (k_low,), (k_low, k_low + n)):
            yield "strip-bottom", (under,), cand
        for h in range(n - 1, 1, -1):
            k = t.heights.index(h)
            for cand in _removal_candidates(t, (k,), (k, k + n)):
                yield "strip-middle", mixed, cand

    def certify(rt):
        """Full certificate check behind cheap screens. Returns the
        candidate's writhe base on a match, None otherwise."""
        if not validate_weak_rect(rt).ok:
            return None
        if rt.profile() != (p, q):
            return None
        tp = to_tanglepd(rt)
        if boundary_pairing(tp) != target[2]:
            return None
        wvec, _ = writhe_vector(tp)
        if tuple(w - wvec[0] for w in wvec) != target[4]:
            return None
        key, rect_base = rect_reduced_key(rt)
        if key != target:
            return None
        return rect_base

    # first pass re-attaches with the local templates; the second tries
    # the wrap-around router, which is slower and rarely needed, and also
    # admits clasping pair extractions only the router can re-attach; the
    # third rescans with partial-span routes, far slower still, and runs
    # only once the cheap passes have failed outright, with its
    # sub-weaves allowed the same full treatment (memoization keeps the
    # recursion from repaying that cost per candidate)
    passes = [
        (_readd_attempts, False, True),
        (_route_attempts, True, True),
    ]
    if not _inner:
        passes.append((partial(_route_attempts, deep=True), True, False))
    for readd, wide, sub_inner in passes:
        for op, kinds, (tprime, attachment) in decompositions(wide):
            specs = _end_specs(t, attachment)
            trace = [
                {
                    "op": op,
                    "multiplicity": n,
                    "strands": attachment["strands"],
                    "dangles": attachment["dangles"],
                }
            ]
            if is_type_zero(tprime):
                got = _weave_one_sided(tprime, trace, cheap=sub_inner)
                if got is None:
                    continue
                sub_rect, sub_count = got
            else:
                try:
                    inner = weave_tangle(tprime, _inner=sub_inner)
                except GridweaveError as err:
                    if err.code == BOUND_EXCEEDED:
                        continue
                    raise
                sub_rect, sub_count = inner.tangle_rect, inner.vertical_count
                trace.extend(inner.construction_trace)

            budget = bound - sub_count
            if budget < 0:
                continue
            for rt, template, extra in readd(sub_rect, specs, kinds, budget):
                rect_base = certify(rt)
                if rect_base is None:
                    continue
                rt = canon_coords(rt)
                trace.append(
                    {
                        "op": "reattach",
                        "template": template,
                        "verticals": extra,
                        "twist_shift": base - rect_base,
                    }
                )
                return WeaveResult(rt, sub_count + extra, tuple(trace))

    # last resort for tangles whose strands chain into one or two paths:
    # certificate-directed search over all small rectangular diagrams.
    # Covers the composite curves no peel-and-redraw template can reach,
    # such as a pair clasping every interior strand twice. The vertical
    # cap keeps the geometry pools tractable; beyond it the pool sizes
    # grow factorially.
    paths = (p + q) // 2
    if paths <= 2:
        hit = search_rect(target, paths, min(bound, 4 if paths == 2 else 5))
        if hit is not None:
            rt, v_count = hit
            _, rect_base = rect_reduced_key(rt)
            trace = (
                {
                    "op": "direct-search",
                    "paths": paths,
                    "verticals": v_count,
                    "twist_shift": base - rect_base,
                },
            )
            return WeaveResult(rt, v_count, trace)

    raise GridweaveError(
        BOUND_EXCEEDED,
        f"no construction within {bound} verticals found for a {n}-fold "
        "tangle; this is a bug, not an input error",
    )
