"""Split a Lie higher derivation into proper parts, exactly.

Every Lie higher derivation of a faithful triangular algebra splits, inside
the operator extension, as L_n = D_n + X_n where {D_n} obeys the full
higher-derivation law and each X_n is center-valued and kills commutators.
This demo runs the split on a sampled sequence and re-verifies every claimed
property from scratch.
"""

from trilie.catalog import load_catalog
from trilie.decomposition import decompose, verify_properness
from trilie.derivations import LIE_HIGHER, sample_sequence, verify_sequence
from trilie.linalg import vec_add

tri = load_catalog("tri_q_plane_qq")
seq = sample_sequence(tri.algebra, LIE_HIGHER, 4, seed=7)
print(f"sampled a Lie higher derivation of {tri.algebra.name} to level 4 (seed 7)")
print("input verifies:", verify_sequence(tri.algebra, seq) == ())

dec = decompose(tri, seq)
ext = dec.extension
print(f"extension: A0 dim {ext.dim_a0} (strict: {ext.strict_a}), "
      f"B0 dim {ext.dim_b0} (strict: {ext.strict_b})")

print()
print("per-level split (values in the extension, shown on a sample element):")
x = tri.assemble((2,), (1, -3), (0, 5))
emb = ext.embedding_map()
for n in range(len(dec.delta)):
    total = vec_add(dec.delta[n].apply(x), dec.chi[n].apply(x))
    assert total == emb.apply(seq.levels[n].apply(x))
    chi_val = dec.chi[n].apply(x)
    print(f"  level {n}: chi_n(x) = {tuple(str(v) for v in chi_val)}")

report = verify_properness(tri, seq, dec)
print()
print("verify_properness re-checks, per level: the sum identity, the")
print("higher-derivation law for {D_n}, centrality of X_n (two independent")
print("criteria), X_n vanishing on commutators, and module compatibility.")
print("report:", report or "empty — every check passed exactly")

print()
print("The canonical components behind the split are also exposed:")
comps = dec.components
print("  corner maps per level:", len(comps.diag_a), "A-corner,",
      len(comps.diag_b), "B-corner,", len(comps.mod), "module")
print("  cross maps land in the opposite corner's center;"
      " offsets live in M:")
for n, off in enumerate(comps.offsets):
    print(f"    level {n}: offset {tuple(str(v) for v in off)}")
