"""Scratch: find width-4 plat words realizing fig8, 5_2, 6_1 (either
chirality of the table Jones literal)."""

from itertools import product

from gridweave.tangle import ElementaryTangle, L, R
from gridweave.sliced import Slice, SlicedDiagram, validate_sliced
from gridweave.resolve import resolve_to_double
from gridweave.invariants import jones_normalized
from gridweave.pd import all_orientations, components
from gridweave.poly import LaurentPoly

OPENER = ElementaryTangle(2, (1, 2), (R(1), R(4), R(3), R(2)))
CLOSER = ElementaryTangle(2, (1, 2), (L(2), L(3), L(4), L(1)))
SPOS = ElementaryTangle(2, (1, 2), (L(1), L(2), R(2), R(1)))
SNEG = ElementaryTangle(2, (2, 1), (L(1), L(2), R(2), R(1)))

LETTERS = {
    "m+": Slice(1, 1, SPOS),
    "m-": Slice(1, 1, SNEG),
    "b+": Slice(0, 2, SPOS),
    "b-": Slice(0, 2, SNEG),
}


def t_poly(spec):  # dict t_exp -> coeff, in A with t = A^-4
    return LaurentPoly({-4 * e: c for e, c in spec.items()})


TARGETS = {
    "fig8": [t_poly({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})],
    "5_2": [
        t_poly({-1: 1, -2: -1, -3: 2, -4: -1, -5: 1, -6: -1}),
        t_poly({1: 1, 2: -1, 3: 2, 4: -1, 5: 1, 6: -1}),
    ],
    "6_1": [
        t_poly({-4: 1, -3: -1, -2: 1, -1: -2, 0: 2, 1: -1, 2: 1}),
        t_poly({4: 1, 3: -1, 2: 1, 1: 2 - 4, 0: 2, -1: -1, -2: 1}),
    ],
}
# fix 6_1 mirror spec typo: rebuild cleanly
TARGETS["6_1"][1] = t_poly({4: 1, 3: -1, 2: 1, 1: -2, 0: 2, -1: -1, -2: 1})
TARGETS["5_1"] = [
    t_poly({2: 1, 4: 1, 5: -1, 6: 1, 7: -1}),
    t_poly({-2: 1, -4: 1, -5: -1, -6: 1, -7: -1}),
]


def knot_of(word):
    slices = (Slice(0, 0, OPENER),) + tuple(LETTERS[w] for w in word) + (
        Slice(0, 0, CLOSER),
    )
    d = SlicedDiagram(slices)
    if not validate_sliced(d).ok:
        return None, None
    pd = resolve_to_double(d)
    if len(components(pd)) != 1:
        return None, None
    return d, jones_normalized(pd, (1,))


def search(name, length):
    tgt = [str(p) for p in TARGETS[name]]
    found = []
    for word in product(LETTERS, repeat=length):
        d, j = knot_of(word)
        if j is not None and str(j) in tgt:
            found.append((word, tgt.index(str(j))))
            if len(found) >= 4:
                break
    print(name, "->", found)


search("5_1", 3)
search("fig8", 2)
search("fig8", 4)
search("5_2", 3)
search("5_2", 5)
search("6_1", 4)
search("6_1", 6)
