"""Compute derivation and Lie-derivation spaces on the shipped corpus.

A derivation satisfies D(xy) = D(x)y + xD(y); a Lie derivation satisfies the
same law for commutators only, so its space can be strictly larger.  Both are
solution spaces of exact linear systems over the rationals, reported here as
canonical bases (flattened matrices, row-major).
"""

from trilie.catalog import catalog_names, load_catalog
from trilie.derivations import (
    derivation_space,
    lie_derivation_space,
    lie_triple_derivation_space,
)
from trilie.linalg import matrix_from_flat

print(f"{'algebra':<22}{'dim':>4}{'der':>5}{'lie':>5}{'lie-triple':>11}")
for name in catalog_names():
    tri = load_catalog(name)
    alg = tri.algebra
    d = derivation_space(alg)
    l = lie_derivation_space(alg)
    t = lie_triple_derivation_space(alg)
    print(f"{name:<22}{alg.dim:>4}{d.dim:>5}{l.dim:>5}{t.dim:>11}")

# The gap between der and lie is where the central, commutator-killing maps
# live.  Look at one Lie derivation of Tri(Q x Q, Q^2, Q) that is NOT an
# algebra derivation: the difference shows up on products, not brackets.
tri = load_catalog("tri_qq_plane_q")
alg = tri.algebra
der = derivation_space(alg)
print()
print("tri_qq_plane_q: Lie-derivation basis elements outside the derivation space:")
for flat in lie_derivation_space(alg).vectors:
    if not der.contains(flat):
        mat = matrix_from_flat(flat, alg.dim, alg.dim)
        for row in mat.entries:
            print("   ", " ".join(f"{str(entry):>4}" for entry in row))
        break
