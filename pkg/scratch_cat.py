import time

from gridweave.tangle import enumerate_tangles, is_type_zero, boundary_profile
from gridweave.tanglepd import from_elementary, reduce_curls, writhe_vector
from gridweave.signature import elementary_reduced_key
from gridweave.weavecat import catalog, lookup

kinks, others = [], []
for t in enumerate_tangles(2):
    if is_type_zero(t):
        continue
    (kinks if boundary_profile(t) == (1, 1) else others).append(t)
print("n=2 non-type-0:", len(kinks), "kinks,", len(others), "non-trivial")

for t in kinks:
    tp = from_elementary(t)
    vec, _ = writhe_vector(tp)
    red, count, wr = reduce_curls(tp)
    assert count == 1 and red.ncrossings == 0 and all(v == wr for v in vec)
    key, base = elementary_reduced_key(t)
    hit = lookup(key, 1, 0)
    assert hit is not None and hit[1] == 0, t
print("kinks: all reduce to the 0-vertical strand; base writhes",
      [elementary_reduced_key(t)[1] for t in kinks])

missing = [t for t in others if lookup(elementary_reduced_key(t)[0], 2, 1) is None]
exact1 = [t for t in others
          if (h := lookup(elementary_reduced_key(t)[0], 2, 1)) and h[1] == 1]
print("non-trivial n=2: V=1 hits", len(exact1), "of", len(others),
      "; missing", len(missing))

hon = catalog(2, 1, kinds=("over",))
hmiss = [t for t in others if elementary_reduced_key(t)[0] not in hon]
print("honest V=1 misses", len(hmiss), "of", len(others))
