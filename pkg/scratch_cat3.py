import time
from collections import Counter

from gridweave.tangle import enumerate_tangles, is_type_zero, boundary_profile
from gridweave.signature import elementary_reduced_key
from gridweave.weavecat import lookup

tangles = [t for t in enumerate_tangles(3) if not is_type_zero(t)]
print("n=3 non-type-0 tangles:", len(tangles))

t0 = time.time()
by_v = Counter()
missing = []
for t in tangles:
    p, q = boundary_profile(t)
    key, base = elementary_reduced_key(t)
    hit = lookup(key, (p + q) // 2, 2)
    if hit is None:
        missing.append(t)
    else:
        by_v[hit[1]] += 1
print("lookup pass [%.1fs]" % (time.time() - t0))
print("matched by vertical count:", dict(by_v), "missing:", len(missing))
for t in missing[:12]:
    print("  MISS", boundary_profile(t), t.heights, t.routing)
