import sys, time

sys.path.insert(0, "src")

from gridweave.tangle import canonical, enumerate_tangles, is_type_zero
from gridweave.signature import elementary_reduced_key, rect_reduced_key
from gridweave.weave import (
    readd_strand,
    strip_candidates,
    u_bound,
    weave_tangle,
)

# --- strip / re-add round trip
for n in (3, 4):
    total = 0
    trapped = 0
    for t in enumerate_tangles(n):
        cands = strip_candidates(t)
        if not cands:
            trapped += 1
            continue
        for tp2, att2 in cands:
            b2 = readd_strand(tp2, att2)
            assert canonical(b2) == canonical(t), (t, tp2, att2)
        total += 1
    print(f"n={n}: strip/readd round trip ok on {total} tangles, {trapped} trapped")

# --- weave all non-type-0 n=4 tangles
t0 = time.time()
count = 0
vcounts = {}
ops = {}
for t in enumerate_tangles(4):
    if is_type_zero(t):
        continue
    res = weave_tangle(t)
    assert res.vertical_count <= u_bound(4), (t, res.vertical_count)
    key_t, _ = elementary_reduced_key(t)
    key_r, _ = rect_reduced_key(res.tangle_rect)
    assert key_t == key_r, t
    vcounts[res.vertical_count] = vcounts.get(res.vertical_count, 0) + 1
    op = res.construction_trace[0]["op"]
    ops[op] = ops.get(op, 0) + 1
    count += 1
print(f"n=4: wove {count} tangles in {time.time()-t0:.1f}s")
print("verticals:", dict(sorted(vcounts.items())))
print("first op:", ops)
