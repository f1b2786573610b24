"""Exhaustive catalogs of small weak rectangular tangles.

Candidates are enumerated directly in rectangular form. An open strand is
an alternating chain h v h ... v h, so a diagram with V verticals and s
strands has exactly V + s horizontals. A diagram is then determined by how
many verticals each strand carries, which wall each strand leaves from and
arrives at, and the assignment of distinct slots to the verticals and
distinct levels to the horizontals. Vertical kinds (over/under) never
affect incidence validity here (all slots are distinct), so kinds are
expanded only for geometrically valid diagrams.

The catalog maps the reduced certificate of each diagram to a cheapest
realization, scanning vertical counts upward, which makes lookups minimal
by construction.
"""

from __future__ import annotations

from itertools import permutations, product

from .rect import H, V, WeakRectTangle, to_tanglepd, validate_weak_rect
from .signature import rect_reduced_key, reduced_key
from .tanglepd import writhe_vector


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_rects(strands, v_count, kinds=("over", "under")):
    """All valid weak rectangular tangles with the given number of open
    strands and vertical segments, with boundary on both walls. Coordinates
    are the canonical ranks: slots 1..V between walls 0 and V+1, levels
    1..V+strands."""
    width = v_count + 1
    n_levels = v_count + strands
    all_levels = range(1, n_levels + 1)
    all_slots = range(1, v_count + 1)
    seen = set()
    for counts in _compositions(v_count, strands):
        side_opts = [
            [("L", "R")] if k == 0 else list(product("LR", repeat=2))
            for k in counts
        ]
        for sides in product(*side_opts):
            for level_perm in permutations(all_levels):
                for slot_perm in permutations(all_slots):
                    verticals = []
                    horizontals = []
                    li = si = 0
                    for k, (a, b) in zip(counts, sides):
                        ys = level_perm[li : li + k + 1]
                        li += k + 1
                        xs = slot_perm[si : si + k]
                        si += k
                        if k == 0:
                            horizontals.append(H(ys[0], 0, width))
                            continue
                        pts = (0 if a == "L" else width,) + xs + (width if b == "R" else 0,)
                        for j in range(k + 1):
                            lo, hi = sorted((pts[j], pts[j + 1]))
                            horizontals.append(H(ys[j], lo, hi))
                        for j in range(k):
                            lo, hi = sorted((ys[j], ys[j + 1]))
                            verticals.append((xs[j], lo, hi))
                    sig = (tuple(sorted(verticals)), tuple(sorted(horizontals)))
                    if sig in seen:
                        continue
                    seen.add(sig)
                    rt0 = WeakRectTangle(
                        tuple(V(x, lo, hi, "over") for x, lo, hi in verticals),
                        tuple(horizontals),
                    )
                    report = validate_weak_rect(rt0)
                    if not report.ok:
                        continue
                    if report.facts["p"] == 0 or report.facts["q"] == 0:
                        continue
                    for combo in product(kinds, repeat=v_count):
                        yield WeakRectTangle(
                            tuple(
                                V(x, lo, hi, kd)
                                for (x, lo, hi), kd in zip(verticals, combo)
                            ),
                            rt0.horizontals,
                        )


_pools = {}


def _geometry_pool(strands, v_count):
    """Validated kind-free geometries with their cheap invariants, cached.
    Each record is (verticals, horizontals, pairing, crossing_count) where
    verticals are (x, ylo, yhi) triples and pairing pairs up boundary
    positions on the ccw outer cycle (left top-down, then right bottom-up).
    Grouped by boundary profile: dict (p, q) -> list of records."""
    got = _pools.get((strands, v_count))
    if got is not None:
        return got
    width = v_count + 1
    n_levels = v_count + strands
    all_levels = range(1, n_levels + 1)
    all_slots = range(1, v_count + 1)
    pool = {}
    seen = set()
    for counts in _compositions(v_count, strands):
        side_opts = [
            [("L", "R")] if k == 0 else list(product("LR", repeat=2))
            for k in counts
        ]
        for sides in product(*side_opts):
            for level_perm in permutations(all_levels):
                for slot_perm in permutations(all_slots):
                    verticals = []
                    horizontals = []
                    ends = []
                    li = si = 0
                    for k, (a, b) in zip(counts, sides):
                        ys = level_perm[li : li + k + 1]
                        li += k + 1
                        xs = slot_perm[si : si + k]
                        si += k
                        if k == 0:
                            horizontals.append(H(ys[0], 0, width))
                            ends.append((("L", ys[0]), ("R", ys[0])))
                            continue
                        pts = (0 if a == "L" else width,) + xs + (width if b == "R" else 0,)
                        for j in range(k + 1):
                            lo, hi = sorted((pts[j], pts[j + 1]))
                            horizontals.append(H(ys[j], lo, hi))
                        for j in range(k):
                            lo, hi = sorted((ys[j], ys[j + 1]))
                            verticals.append((xs[j], lo, hi))
                        ends.append(((a, ys[0]), (b, ys[-1])))
                    sig = (tuple(sorted(verticals)), tuple(sorted(horizontals)))
                    if sig in seen:
                        continue
                    seen.add(sig)
                    rt0 = WeakRectTangle(
                        tuple(V(x, lo, hi, "over") for x, lo, hi in verticals),
                        tuple(horizontals),
                    )
                    report = validate_weak_rect(rt0)
                    if not report.ok:
                        continue
                    p, q = report.facts["p"], report.facts["q"]
                    if p == 0 or q == 0:
                        continue
                    # boundary position of each wall end on the ccw cycle
                    left = sorted((y for s in ends for w, y in s if w == "L"), reverse=True)
                    right = sorted(y for s in ends for w, y in s if w == "R")
                    pos = {("L", y): i for i, y in enumerate(left)}
                    pos.update({("R", y): p + i for i, y in enumerate(right)})
                    pairing = tuple(sorted(tuple(sorted((pos[e1], pos[e2]))) for e1, e2 in ends))
                    record = (
                        tuple(verticals),
                        tuple(horizontals),
                        pairing,
                        len(rt0.crossings()),
                    )
                    pool.setdefault((p, q), []).append(record)
    _pools[(strands, v_count)] = pool
    return pool


def search_rect(key, strands, v_max, kinds=("over", "under")):
    """Find a cheapest weak rectangular tangle whose reduced certificate
    equals key, scanning vertical counts upward. Geometries are pruned by
    boundary profile, boundary pairing, and the minimum crossing count the
    certificate's writhe spread forces; surviving kind assignments are
    checked against the writhe vector before the full certificate.
    Returns (rect, v_count) or None."""
    p, q, pairing_want, _, wvec_want, _ = key
    min_cross = (max(wvec_want) - min(wvec_want) + 1) // 2
    for v_count in range(v_max + 1):
        for verticals, horizontals, pairing, n_cross in _geometry_pool(
            strands, v_count
        ).get((p, q), ()):
            if pairing != pairing_want or n_cross < min_cross:
                continue
            for combo in product(kinds, repeat=v_count):
                rt = WeakRectTangle(
                    tuple(V(x, lo, hi, kd) for (x, lo, hi), kd in zip(verticals, combo)),
                    horizontals,
                )
                tp = to_tanglepd(rt)
                wvec, _ = writhe_vector(tp)
                if tuple(w - wvec[0] for w in wvec) != wvec_want:
                    continue
                got, _ = reduced_key(tp, p, q)
                if got == key:
                    return rt, v_count
    return None


_catalogs = {}


def catalog(strands, v_count, kinds=("over", "under")):
    """dict: reduced certificate -> WeakRectTangle, for all valid diagrams
    with the given strand and vertical counts. Cached per argument set."""
    cache_key = (strands, v_count, tuple(kinds))
    got = _catalogs.get(cache_key)
    if got is None:
        got = {}
        for rt in enumerate_rects(strands, v_count, kinds):
            key, _ = rect_reduced_key(rt)
            got.setdefault(key, rt)
        _catalogs[cache_key] = got
    return got


def lookup(key, strands, v_max, kinds=("over", "under")):
    """Search catalogs of increasing vertical count for the certificate.
    Returns (rect, v_count) or None."""
    for v_count in range(v_max + 1):
        rt = catalog(strands, v_count, kinds).get(key)
        if rt is not None:
            return rt, v_count
    return None
