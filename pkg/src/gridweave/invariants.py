"""Polynomial invariants of resolved diagrams and the bound report.

Two independent bracket computations are kept deliberately separate: a
direct state sum over all smoothings, and a smoothing recursion with
memoization that works in the ring Z[A^(+-1), loopvar] and substitutes
the loop value only at the end. Tests compare them term by term.

The two-variable polynomial (variables a, z) is computed by the
switch-to-descending recursion; its specialization a = -A^3, z = A+A^(-1)
reproduces the bracket, which tests use as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GridweaveError, INVALID_INPUT, TOO_LARGE
from .pd import OTHER_PORT, PDCode, components, writhe
from .poly import LaurentPoly, LaurentPoly2, breadth
from .sliced import SlicedDiagram, bound_value, census
from .tanglepd import DELTA_POLY

STATESUM_LIMIT = 20
RECURSION_LIMIT = 20
KAUFFMAN_LIMIT = 14


def bracket_statesum(pd: PDCode, limit: int = STATESUM_LIMIT) -> LaurentPoly:
    """Kauffman bracket by direct enumeration of all smoothing states,
    normalized so the 1-circle diagram has bracket 1."""
    nc = pd.ncrossings
    if nc > limit:
        raise GridweaveError(TOO_LARGE, f"{nc} crossings exceeds state sum limit {limit}")
    if nc == 0:
        if pd.free_loops == 0:
            raise GridweaveError(INVALID_INPUT, "empty diagram has no bracket")
        return DELTA_POLY ** (pd.free_loops - 1)

    edge_list = sorted(pd.edge_ids())
    index = {e: i for i, e in enumerate(edge_list)}
    total = LaurentPoly.zero()
    for state in range(1 << nc):
        parent = list(range(len(edge_list)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a_count = 0
        for ci, c in enumerate(pd.crossings):
            if state >> ci & 1 == 0:
                a_count += 1
                pairs = ((0, 3), (1, 2))
            else:
                pairs = ((0, 1), (2, 3))
            for i, j in pairs:
                parent[find(index[c[i]])] = find(index[c[j]])

        loops = len({find(i) for i in range(len(edge_list))})
        coeff = LaurentPoly.monomial(2 * a_count - nc)
        total = total + coeff * DELTA_POLY ** (loops + pd.free_loops - 1)
    return total


def _smooth(crossings, ci_index, kind):
    """Remove crossing ci_index, merging its edge pairs. Returns the new
    sorted crossing tuple and the number of circles closed."""
    target = crossings[ci_index]
    rest = [list(c) for i, c in enumerate(crossings) if i != ci_index]
    pairs = ((0, 3), (1, 2)) if kind == "A" else ((0, 1), (2, 3))
    closed = 0
    mapping = {}

    def rep(e):
        while e in mapping:
            e = mapping[e]
        return e

    for i, j in pairs:
        a, b = rep(target[i]), rep(target[j])
        if a == b:
            closed += 1
        else:
            lo, hi = min(a, b), max(a, b)
            mapping[hi] = lo
    out = []
    for c in rest:
        out.append(tuple(rep(e) for e in c))
    # a merged pair may also close a circle through the remaining edges
    # only when both merges hit the same free edge pair; circles among
    # remaining crossings stay open until their own crossings resolve.
    # The only other closure: both ends of a merge trace a crossing-free
    # circle, impossible here since every remaining edge meets a crossing.
    return tuple(sorted(out)), closed


def bracket_skein(pd: PDCode, limit: int = RECURSION_LIMIT) -> LaurentPoly:
    """Kauffman bracket by memoized smoothing recursion."""
    nc = pd.ncrossings
    if nc > limit:
        raise GridweaveError(TOO_LARGE, f"{nc} crossings exceeds recursion limit {limit}")
    if nc == 0:
        if pd.free_loops == 0:
            raise GridweaveError(INVALID_INPUT, "empty diagram has no bracket")
        return DELTA_POLY ** (pd.free_loops - 1)

    memo = {}
    one = LaurentPoly2.one()

    def S(crossings):
        if not crossings:
            return one
        got = memo.get(crossings)
        if got is not None:
            return got
        total = LaurentPoly2.zero()
        for kind, a_exp in (("A", 1), ("B", -1)):
            child, closed = _smooth(crossings, 0, kind)
            term = S(child).shifted(a_exp, closed)
            total = total + term
        memo[crossings] = total
        return total

    start = tuple(sorted(pd.crossings))
    raw = S(start)  # every monomial carries loopvar^(circles formed)
    if raw.min_z_exp() < 1:
        raise AssertionError("closed diagram must form at least one circle")
    shifted = raw.shifted(0, pd.free_loops - 1)
    return shifted.substitute(LaurentPoly.monomial(1), DELTA_POLY)


def jones_normalized(pd: PDCode, orientation, method: str = "statesum") -> LaurentPoly:
    """(-A^3)^(-w) times the bracket, for one orientation choice."""
    if method == "statesum":
        br = bracket_statesum(pd)
    elif method == "skein":
        br = bracket_skein(pd)
    else:
        raise ValueError(f"unknown method {method!r}")
    w = writhe(pd, orientation)
    sign = -1 if w % 2 else 1
    return LaurentPoly({-3 * w: sign}) * br


def jones_profile(pd: PDCode, method: str = "statesum"):
    """Sorted tuple of the normalized polynomials over every orientation.
    This is the orientation-free certificate compared across the
    pipeline: equal profiles mean equal Jones for matching orientations."""
    from .pd import all_orientations

    out = []
    for ori in all_orientations(pd):
        out.append(str(jones_normalized(pd, ori, method=method)))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# two-variable polynomial by switching toward descending form


def _canon(crossings):
    return tuple(sorted(crossings))


def _walks_with_ports(crossings):
    """Strand cycles as lists of (ci, in_port), from a deterministic scan.
    The particular basepoints and directions do not matter for the value;
    along a switching chain the SAME walks are reused (with the switched
    crossing's ports rotated) so the scan order stays fixed and the first
    wrong crossing strictly advances."""
    end_map = {}
    for ci, c in enumerate(crossings):
        for port, e in enumerate(c):
            end_map.setdefault(e, []).append((ci, port))

    visited = set()
    walks = []
    for ci in range(len(crossings)):
        for port in range(4):
            if (ci, port) in visited:
                continue
            steps = []
            start = (ci, port)
            cur = start
            while True:
                visited.add(cur)
                steps.append(cur)
                out = (cur[0], OTHER_PORT[cur[1]])
                visited.add(out)
                e = crossings[out[0]][out[1]]
                a, b = end_map[e]
                nxt = b if a == out else a
                if nxt == start:
                    break
                cur = nxt
            walks.append(steps)
    return walks


def _first_wrong(walks):
    """First crossing whose first visit along the walks is an under-pass,
    or None when the traversal is descending."""
    seen = set()
    for steps in walks:
        for ci, port in steps:
            if ci not in seen:
                seen.add(ci)
                if port in (0, 2):
                    return ci
    return None


def lambda_poly(pd: PDCode, limit: int = KAUFFMAN_LIMIT) -> LaurentPoly2:
    """Regular-isotopy two-variable polynomial (variables a, z) with the
    conventions: positive kink multiplies by a, split union multiplies by
    (a + a^(-1))/z - 1, unknot value 1."""
    if pd.ncrossings > limit:
        raise GridweaveError(TOO_LARGE, f"{pd.ncrossings} crossings exceeds limit {limit}")
    if pd.ncrossings == 0 and pd.free_loops == 0:
        raise GridweaveError(INVALID_INPUT, "empty diagram")

    delta_f = LaurentPoly2({(1, -1): 1, (-1, -1): 1, (0, 0): -1})
    z = LaurentPoly2({(0, 1): 1})
    memo = {}

    def switch(crossings, ci):
        c = crossings[ci]
        flipped = (c[1], c[2], c[3], c[0])
        out = list(crossings)
        out[ci] = flipped
        return tuple(out)

    def eval_pd(crossings, free_loops, walks=None):
        key = (_canon(crossings), free_loops)
        got = memo.get(key)
        if got is not None:
            return got
        if not crossings:
            val = delta_f ** (free_loops - 1)
            memo[key] = val
            return val
        if walks is None:
            walks = _walks_with_ports(crossings)
        wrong = _first_wrong(walks)
        if wrong is None:
            # descending: regular-isotopic to split unknots with kinks
            comp_of = {}
            for wi, steps in enumerate(walks):
                for ci, port in steps:
                    comp_of.setdefault(ci, []).append((wi, port))
            a_total = 0
            for ci in range(len(crossings)):
                (w1, p1), (w2, p2) = comp_of[ci]
                if w1 != w2:
                    continue  # inter-component crossing, pulls apart
                u_in = p1 if p1 in (0, 2) else p2
                o_in = p1 if p1 in (1, 3) else p2
                a_total += 1 if (o_in - u_in) % 4 == 1 else -1
            k = len(walks) + free_loops
            val = (delta_f ** (k - 1)).shifted(a_total, 0)
            memo[key] = val
            return val
        sw_walks = [
            [(ci, (port - 1) % 4 if ci == wrong else port) for ci, port in steps]
            for steps in walks
        ]
        switched = eval_pd(switch(crossings, wrong), free_loops, sw_walks)
        total = LaurentPoly2.zero()
        for kind in ("A", "B"):
            child, closed = _smooth(crossings, wrong, kind)
            total = total + eval_pd(child, free_loops + closed)
        val = z * total - switched
        memo[key] = val
        return val

    return eval_pd(tuple(pd.crossings), pd.free_loops)


def kauffman_f(pd: PDCode, orientation, limit: int = KAUFFMAN_LIMIT) -> LaurentPoly2:
    """Ambient-isotopy normalization a^(-w) of the two-variable
    polynomial. Its a-breadth does not depend on the orientation."""
    lam = lambda_poly(pd, limit=limit)
    w = writhe(pd, orientation)
    return lam.shifted(-w, 0)


# ---------------------------------------------------------------------------
# bound report


@dataclass
class BoundReport:
    census: dict
    c_total: int
    alpha: int
    main_bound: int
    breadth_bracket: int = None
    breadth_a: int = None
    verdicts: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(v != "fail" for v in self.verdicts.values())


def check_bounds(
    d: SlicedDiagram,
    alpha: int,
    *,
    bracket: LaurentPoly = None,
    f_poly: LaurentPoly2 = None,
    alternating: bool = False,
) -> BoundReport:
    """Assemble every applicable bound verdict for a diagram whose grid
    realization uses alpha arcs."""
    cen = census(d)
    c_total = sum(cen.values())
    main = bound_value(cen)
    report = BoundReport(census=cen, c_total=c_total, alpha=alpha, main_bound=main)
    v = report.verdicts

    v["main"] = "pass" if alpha <= main else "fail"
    report.details["main"] = f"alpha={alpha} vs 2+weights={main}"

    if f_poly is not None:
        ba = f_poly.breadth_a()
        report.breadth_a = ba
        v["lower"] = "pass" if ba <= alpha - 2 else "fail"
        report.details["lower"] = f"a-breadth={ba} vs alpha-2={alpha - 2}"
    else:
        v["lower"] = "n/a"

    if bracket is not None:
        report.breadth_bracket = breadth(bracket)

    c2 = cen.get(2, 0)
    if alternating and set(cen) == {2}:
        ok = report.breadth_a == c2 and alpha == c2 + 2 if report.breadth_a is not None else None
        v["alternating"] = "n/a" if ok is None else ("pass" if ok else "fail")
        report.details["alternating"] = f"a-breadth={report.breadth_a} c2={c2} alpha={alpha}"
    else:
        v["alternating"] = "n/a"

    if len(cen) == 1 and report.breadth_bracket is not None:
        n = next(iter(cen))
        if n >= 3:
            cap = (n * n // 2 + 4 * n - 8) * cen[n]
            v["single_multiplicity"] = "pass" if report.breadth_bracket <= cap else "fail"
            report.details["single_multiplicity"] = (
                f"bracket breadth={report.breadth_bracket} vs {cap}"
            )
        else:
            v["single_multiplicity"] = "n/a"
    else:
        v["single_multiplicity"] = "n/a"

    if c_total == 1:
        n = next(iter(cen))
        v["single_crossing"] = "pass" if alpha <= 2 * n - 2 else "fail"
        report.details["single_crossing"] = (
            f"alpha={alpha} vs 2n-2={2 * n - 2}; petal estimate {(alpha + 2) / 2} <= {n}"
        )
    else:
        v["single_crossing"] = "n/a"

    return report
