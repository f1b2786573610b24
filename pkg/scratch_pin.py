"""Scratch: pin the braid-closure end slices and the crossing sign
empirically via Jones literals."""

from itertools import permutations

from gridweave.tangle import ElementaryTangle, L, R, validate_tangle
from gridweave.sliced import Slice, SlicedDiagram, validate_sliced
from gridweave.resolve import resolve_to_double
from gridweave.invariants import bracket_statesum, jones_normalized
from gridweave.pd import all_orientations, components

SIGMA = {
    "pos?": ElementaryTangle(2, (1, 2), (L(1), L(2), R(2), R(1))),
    "neg?": ElementaryTangle(2, (2, 1), (L(1), L(2), R(2), R(1))),
}

openers = []
for perm in permutations(range(1, 5)):
    t = ElementaryTangle(2, (1, 2), tuple(R(j) for j in perm))
    if validate_tangle(t).ok:
        openers.append((perm, t))
closers = []
for perm in permutations(range(1, 5)):
    t = ElementaryTangle(2, (1, 2), tuple(L(j) for j in perm))
    if validate_tangle(t).ok:
        closers.append((perm, t))
print("planar openers:", [p for p, _ in openers])
print("planar closers:", [p for p, _ in closers])

RIGHT_TREFOIL = "1*A^-16... placeholder"


def jones_set(d):
    pd = resolve_to_double(d)
    return len(components(pd)), sorted(
        {str(jones_normalized(pd, o)) for o in all_orientations(pd)}
    ), str(bracket_statesum(pd))


for po, to in openers:
    for pc, tc in closers:
        d2 = SlicedDiagram((Slice(0, 0, to), Slice(0, 0, tc)))
        if not validate_sliced(d2).ok:
            continue
        ncomp, js, br = jones_set(d2)
        if ncomp != 2:
            continue
        print(f"O={po} C={pc}: ncomp=2 bracket={br}")
        for name, sg in SIGMA.items():
            d3 = SlicedDiagram((Slice(0, 0, to), Slice(1, 1, sg), Slice(0, 0, tc)))
            if not validate_sliced(d3).ok:
                print("   invalid with middle sigma")
                continue
            n3, js3, br3 = jones_set(d3)
            print(f"   +{name}: ncomp={n3} jones={js3}")
