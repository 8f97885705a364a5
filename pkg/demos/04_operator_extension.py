"""Build the operator-model extended triangular algebra.

The two diagonal corners of Tri(A, M, B) act on M as operators.  Enlarging
the A-corner by right-multiplications coming from the center of B (and the
B-corner symmetrically) yields an extension Tri(A0, M, B0) — realized here
concretely as subalgebras of the m x m operator algebra on M.  Sometimes the
extension is strict: the extra operators are not images of A or B.
"""

from trilie.catalog import catalog_names, load_catalog
from trilie.extension import build_operator_extension

print(f"{'algebra':<22}{'A':>3}{'A0':>4}{'strict':>8}{'B':>5}{'B0':>4}{'strict':>8}")
for name in catalog_names():
    tri = load_catalog(name)
    ext = build_operator_extension(tri)
    print(f"{name:<22}{tri.dim_a:>3}{ext.dim_a0:>4}"
          f"{str(ext.strict_a):>8}{tri.dim_b:>5}{ext.dim_b0:>4}"
          f"{str(ext.strict_b):>8}")

print()
tri = load_catalog("tri_q_plane_qq")
ext = build_operator_extension(tri)
print(f"{tri.algebra.name}: A = Q acts on M = Q^2 by scalars, but the center of")
print("B = Q x Q acts coordinatewise from the right — those two projections")
print("are NOT scalar multiples, so A0 picks up an extra operator:")
for op in ext.a0_ops:
    print("   ", [[str(entry) for entry in row] for row in op.entries])

print()
print("Embedding the base into the extension is unital and multiplicative;")
x = tri.assemble((3,), (1, 2), (0, 4))
y = tri.assemble((1,), (5, 0), (2, 2))
lhs = ext.embed(tri.multiply(x, y))
rhs = ext.extended.multiply(ext.embed(x), ext.embed(y))
print("embed(x*y) == embed(x)*embed(y):", lhs == rhs)
