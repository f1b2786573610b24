"""Resolve a whole sliced diagram into a closed double-crossing code.

Each slice's tangle is chord-resolved on its own (tanglepd), then the
pieces are wired together left to right: pass-through strands carry edge
ids across the slice, tangle boundary points splice into the gap wiring.
"""

from __future__ import annotations

from .errors import GridweaveError, INVALID_INPUT
from .pd import PDCode
from .sliced import SlicedDiagram
from .tangle import boundary_profile
from .tanglepd import from_elementary


def resolve_to_double(d: SlicedDiagram) -> PDCode:
    counter = [0]

    def fresh():
        counter[0] += 1
        return counter[0] - 1

    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    def union(a, b):
        parent[find(a)] = find(b)

    crossings = []  # (e0..e3) with global provisional ids
    open_edges = []  # ids crossing the current gap, top to bottom

    for s in d.slices:
        p, q = boundary_profile(s.tangle)
        if len(open_edges) != s.above + p + s.below:
            raise GridweaveError(INVALID_INPUT, "slice widths do not line up")
        tp = from_elementary(s.tangle)
        local = {}

        def glob(e, local=local):
            if e not in local:
                local[e] = fresh()
            return local[e]

        for c in tp.crossings:
            crossings.append(tuple(glob(e) for e in c))
        # left boundary points are positions 0..p-1 top to bottom
        for t in range(p):
            union(glob(tp.boundary[t]), open_edges[s.above + t])
        next_open = open_edges[: s.above]
        # right boundary positions p..p+q-1 run bottom to top (ccw)
        for t in range(q):
            next_open.append(glob(tp.boundary[p + q - 1 - t]))
        next_open.extend(open_edges[s.above + p :])
        open_edges = next_open

    if open_edges:
        raise GridweaveError(INVALID_INPUT, "diagram is not closed")

    rep_ids = {}

    def final(e):
        r = find(e)
        if r not in rep_ids:
            rep_ids[r] = len(rep_ids)
        return rep_ids[r]

    return PDCode(crossings=tuple(tuple(final(e) for e in c) for c in crossings))
