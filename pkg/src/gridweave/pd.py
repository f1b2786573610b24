"""Closed planar diagram codes with double crossings only.

Same local convention as the tangle resolution: each crossing is a
4-tuple of edge ids at counterclockwise ports, the under-strand on the
(0,2) diagonal. free_loops counts crossing-free circles carried along
(they multiply the bracket by the loop value each).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BAD_ORIENTATION, GridweaveError

OTHER_PORT = {0: 2, 1: 3, 2: 0, 3: 1}


@dataclass(frozen=True)
class PDCode:
    crossings: tuple
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in self.crossings))

    @property
    def ncrossings(self):
        return len(self.crossings)

    def edge_ids(self):
        out = set()
        for c in self.crossings:
            out.update(c)
        return out


def validate_pd(pd: PDCode):
    """Every edge id must appear exactly twice across all ports."""
    seen = {}
    for c in pd.crossings:
        for e in c:
            seen[e] = seen.get(e, 0) + 1
    bad = {e: k for e, k in seen.items() if k != 2}
    if bad:
        raise GridweaveError(BAD_ORIENTATION, f"edges with wrong degree: {sorted(bad)}")


def components(pd: PDCode):
    """Trace closed strand components. Returns a list of walks, each a
    list of (crossing, in_port) steps in traversal order."""
    end_map = {}
    for ci, c in enumerate(pd.crossings):
        for port, e in enumerate(c):
            end_map.setdefault(e, []).append((ci, port))

    visited = set()
    walks = []
    for ci in range(len(pd.crossings)):
        for port in range(4):
            if (ci, port) in visited:
                continue
            steps = []
            start = (ci, port)
            cur_in = start
            while True:
                visited.add(cur_in)
                steps.append(cur_in)
                out = (cur_in[0], OTHER_PORT[cur_in[1]])
                visited.add(out)
                e = pd.crossings[out[0]][out[1]]
                a, b = end_map[e]
                nxt = b if a == out else a
                if nxt == start:
                    break
                cur_in = nxt
            walks.append(steps)
    return walks


def writhe(pd: PDCode, orientation: tuple) -> int:
    """Sum of crossing signs for the given orientation bits, one per
    component in components() order; bit 1 keeps the traced direction,
    bit 0 reverses it."""
    walks = components(pd)
    if len(orientation) != len(walks):
        raise GridweaveError(
            BAD_ORIENTATION,
            f"need {len(walks)} orientation bits, got {len(orientation)}",
        )
    under_in = {}
    over_in = {}
    for wi, steps in enumerate(walks):
        forward = bool(orientation[wi])
        for ci, port in steps:
            p = port if forward else OTHER_PORT[port]
            if p in (0, 2):
                under_in[ci] = p
            else:
                over_in[ci] = p
    total = 0
    for ci in range(len(pd.crossings)):
        total += 1 if (over_in[ci] - under_in[ci]) % 4 == 1 else -1
    return total


def all_orientations(pd: PDCode):
    k = len(components(pd))
    return [tuple((bits >> i) & 1 for i in range(k)) for bits in range(1 << k)]
