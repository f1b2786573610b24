"""Scratch: sanity-check the resolution + invariant stack on a trefoil."""

from gridweave.tangle import ElementaryTangle, L, R, RAY, validate_tangle
from gridweave.sliced import Slice, SlicedDiagram, validate_sliced
from gridweave.resolve import resolve_to_double
from gridweave.invariants import (
    bracket_statesum,
    bracket_skein,
    jones_normalized,
    lambda_poly,
    kauffman_f,
)
from gridweave.pd import all_orientations, components, writhe
from gridweave.poly import LaurentPoly, LaurentPoly2

SIGMA_POS = ElementaryTangle(n=2, heights=(1, 2), routing=(L(1), L(2), R(2), R(1)))
SIGMA_NEG = ElementaryTangle(n=2, heights=(2, 1), routing=(L(1), L(2), R(2), R(1)))
OPENER = ElementaryTangle(n=2, heights=(1, 2), routing=(R(2), R(1), R(4), R(3)))
CLOSER = ElementaryTangle(n=2, heights=(1, 2), routing=(L(3), L(4), L(1), L(2)))

print("validate sigma:", validate_tangle(SIGMA_POS).ok, validate_tangle(SIGMA_POS).codes())
print("validate opener:", validate_tangle(OPENER).ok, validate_tangle(OPENER).codes())
print("validate closer:", validate_tangle(CLOSER).ok, validate_tangle(CLOSER).codes())

trefoil = SlicedDiagram(
    slices=(
        Slice(0, 0, OPENER),
        Slice(1, 1, SIGMA_POS),
        Slice(0, 0, CLOSER),
    )
)
rep = validate_sliced(trefoil)
print("validate trefoil:", rep.ok, rep.codes(), rep.facts.get("census"))

pd = resolve_to_double(trefoil)
print("pd crossings:", pd.crossings)
comps = components(pd)
print("components:", len(comps))
for ori in all_orientations(pd):
    print("  ori", ori, "writhe", writhe(pd, ori))

bs = bracket_statesum(pd)
bk = bracket_skein(pd)
print("bracket statesum:", bs)
print("bracket skein:   ", bk)
print("equal:", str(bs) == str(bk))
for ori in all_orientations(pd):
    print("jones", ori, jones_normalized(pd, ori))

lam = lambda_poly(pd)
print("lambda:", lam)
# cross-check: lambda(a=-A^3, z=A+A^-1) == bracket, cleared of z^-1
m = max(0, -lam.min_z_exp())
zclear = lam.shifted(0, m)
subbed = zclear.substitute(LaurentPoly({3: -1}), LaurentPoly({1: 1, -1: 1}))
rhs = bs * LaurentPoly({1: 1, -1: 1}) ** m
print("lambda cross-check:", str(subbed) == str(rhs))

f = kauffman_f(pd, all_orientations(pd)[0])
print("F:", f)
print("F a-breadth:", f.breadth_a())
