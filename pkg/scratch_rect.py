"""Scratch: one-vertical rect drawing of the plain crossing vs its key."""

from gridweave.rect import WeakRectTangle, validate_weak_rect
from gridweave.signature import elementary_key, rect_key
from gridweave.tangle import ElementaryTangle, L, R

SPOS = ElementaryTangle(2, (1, 2), (L(1), L(2), R(2), R(1)))
SNEG = ElementaryTangle(2, (2, 1), (L(1), L(2), R(2), R(1)))

rect_under = WeakRectTangle(
    verticals=((2, 1, 3, "under"), (1, 1, 2, "under")),
    horizontals=((3, 0, 2), (1, 2, 5), (1, 0, 1), (2, 1, 5)),
)
rep = validate_weak_rect(rect_under)
print("rect valid:", rep.ok, rep.codes(), rep.facts)

rect_over = WeakRectTangle(
    verticals=((2, 1, 3, "over"), (1, 1, 2, "under")),
    horizontals=((3, 0, 2), (1, 2, 5), (1, 0, 1), (2, 1, 5)),
)

k_pos = elementary_key(SPOS)
k_neg = elementary_key(SNEG)
k_ru = rect_key(rect_under)
k_ro = rect_key(rect_over)
print("pos == rect(under):", k_pos == k_ru)
print("neg == rect(over): ", k_neg == k_ro)
print("pos != neg:        ", k_pos != k_neg)
print("key pos:", k_pos)
