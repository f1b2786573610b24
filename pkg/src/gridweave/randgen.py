"""Random generators for diagrams, used by tests and the corpus.

Everything takes an explicit random.Random so runs are reproducible from
a seed. Generation is rejection sampling against the same validators the
rest of the pipeline uses: draw a structurally well-formed candidate,
keep it if it validates.
"""

from __future__ import annotations

from .tangle import ElementaryTangle, is_type_zero, validate_tangle


def random_tangle(rng, n, allow_type_zero=False, max_tries=20000):
    """A uniformly-ish random valid elementary tangle of multiplicity n.

    Draws a random outer structure (arc matching plus wall terminals with
    random ranks) and a random height permutation, keeping the first
    planar draw. Type-0 tangles are rejected unless allowed.
    """
    rays = list(range(2 * n))
    heights_pool = list(range(1, n + 1))
    for _ in range(max_tries):
        rng.shuffle(rays)
        n_arcs = rng.randrange(n)
        routing = [None] * (2 * n)
        for i in range(n_arcs):
            a, b = rays[2 * i], rays[2 * i + 1]
            routing[a] = ("RAY", b)
            routing[b] = ("RAY", a)
        free = rays[2 * n_arcs :]
        lefts = [r for r in free if rng.random() < 0.5]
        rights = [r for r in free if routing[r] is None and r not in lefts]
        for rank, r in enumerate(_shuffled(rng, lefts), start=1):
            routing[r] = ("L", rank)
        for rank, r in enumerate(_shuffled(rng, rights), start=1):
            routing[r] = ("R", rank)
        heights = heights_pool[:]
        rng.shuffle(heights)
        t = ElementaryTangle(n, tuple(heights), tuple(routing))
        if not validate_tangle(t).ok:
            continue
        if not allow_type_zero and is_type_zero(t):
            continue
        return t
    raise RuntimeError(f"no valid tangle of multiplicity {n} found")


def _shuffled(rng, seq):
    out = list(seq)
    rng.shuffle(out)
    return out
