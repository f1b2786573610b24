"""Diagram-content certificates for tangles.

Two tangle drawings with the same raw certificate close up to links with
the same bracket polynomial and the same writhe in every planar context:
the raw Temperley-Lieb element (no curl reduction, so kinks stay
visible) together with the writhe under every strand orientation.

The weaving step compares reduced certificates instead. Inserting a
single twist into an open strand multiplies the whole Temperley-Lieb
element by -A^(+-3) and shifts the writhe of every orientation by the
twist's sign, no matter where along the strand the twist sits. The
reduced certificate quotients by exactly that: it rescales the element
by (-A^3)^k and shifts the writhe vector by k, with k chosen to zero
the first orientation's writhe. Reduced-certificate equality therefore
certifies that two drawings differ only by planar moves and twist
insertions - the link is the same even when the drawn writhes are not.
"""

from __future__ import annotations

from .poly import LaurentPoly
from .rect import WeakRectTangle, to_tanglepd
from .tangle import ElementaryTangle, boundary_profile
from .tanglepd import (
    TanglePD,
    boundary_pairing,
    from_elementary,
    tl_element,
    writhe_vector,
)


def curl_unit(k: int) -> LaurentPoly:
    """(-A^3)^k for any integer k."""
    return LaurentPoly({3 * k: 1 if k % 2 == 0 else -1})


def tangle_key(tp: TanglePD, p: int, q: int):
    """Canonical certificate tuple of a resolved tangle."""
    tl = tl_element(tp)
    tl_canon = tuple(sorted((pairing, str(poly)) for pairing, poly in tl.items()))
    wvec, ends = writhe_vector(tp)
    return (p, q, boundary_pairing(tp), tl_canon, wvec, ends)


def reduced_key(tp: TanglePD, p: int, q: int):
    """Twist-normalized certificate. Returns (key, base), where base is
    the writhe of the first orientation; the difference of two diagrams'
    bases is the net twist count separating them."""
    tl = tl_element(tp)
    wvec, ends = writhe_vector(tp)
    k = -wvec[0]
    unit = curl_unit(k)
    tl_canon = tuple(
        sorted((pairing, str(poly * unit)) for pairing, poly in tl.items())
    )
    wvec_c = tuple(w + k for w in wvec)
    key = (p, q, boundary_pairing(tp), tl_canon, wvec_c, ends)
    return key, wvec[0]


def elementary_key(t: ElementaryTangle):
    p, q = boundary_profile(t)
    return tangle_key(from_elementary(t), p, q)


def elementary_reduced_key(t: ElementaryTangle):
    p, q = boundary_profile(t)
    return reduced_key(from_elementary(t), p, q)


def rect_key(rt: WeakRectTangle):
    p, q = rt.profile()
    return tangle_key(to_tanglepd(rt), p, q)


def rect_reduced_key(rt: WeakRectTangle):
    p, q = rt.profile()
    return reduced_key(to_tanglepd(rt), p, q)
