"""Probe the open question: do Lie TRIPLE higher derivations also split?

For Lie higher derivations the split is a theorem; for the triple variant
(the law only constrains double commutators [[x,y],z]) it is an open
question.  probe_conjecture searches for a weakened split level by level —
greedily, by exact affine solving — and reports what it found.  A negative
report means the greedy search failed, never that no split exists.
"""

from trilie.catalog import catalog_names, load_catalog
from trilie.decomposition import probe_conjecture
from trilie.derivations import LIE_TRIPLE_HIGHER, sample_sequence

for name in catalog_names():
    tri = load_catalog(name)
    found = 0
    freedom = set()
    for seed in range(5):
        seq = sample_sequence(tri.algebra, LIE_TRIPLE_HIGHER, 4, seed)
        report = probe_conjecture(tri, seq)
        found += report.complete
        freedom.update(lv.freedom for lv in report.levels
                       if lv.freedom is not None)
    print(f"{name:<22} complete splits: {found}/5, "
          f"affine freedom per level: {sorted(freedom) or 'n/a'}")

print()
tri = load_catalog("tri_qq_plane_qq")
seq = sample_sequence(tri.algebra, LIE_TRIPLE_HIGHER, 3, seed=1)
report = probe_conjecture(tri, seq)
print(f"one report in detail ({tri.algebra.name}, seed 1):")
for lv in report.levels:
    print(f"  level {lv.level}: {lv.status:<9} via {lv.method}"
          + (f", freedom {lv.freedom}" if lv.freedom is not None else ""))
print("complete:", report.complete)
