"""Build a triangular algebra from scratch and inspect its center.

The smallest interesting example: A = Q, B = Q, M = Q with the obvious
actions.  The resulting Tri(Q, Q, Q) is the algebra of 2x2 upper-triangular
rational matrices, whose center is just the scalar matrices.
"""

from trilie.algebra import Algebra, validate_algebra
from trilie.bimodule import Bimodule, check_faithful, validate_bimodule
from trilie.triangular import build_triangular, center_triangular

# The one-dimensional rational algebra: basis (u) with u*u = u, unit u.
# Scalars are given as ints or "p/q" strings; floats are rejected.
q = Algebra.from_table(1, [[[1]]], [1], name="Q")
print("validate Q:", validate_algebra(q) or "ok")

# Q as a (Q, Q)-bimodule: both actions are plain multiplication.
# left_table[i][j] = image of (basis_i of A) acting on (basis_j of M);
# right_table[j][i] = image of (basis_j of M) acted on by (basis_i of B).
m = Bimodule.from_tables(q, q, 1, [[[1]]], [[[1]]])
print("validate M:", validate_bimodule(m) or "ok")
print("faithful on the left:", check_faithful(m, "left"))
print("faithful on the right:", check_faithful(m, "right"))

tri = build_triangular(q, m, q, name="Tri(Q,Q,Q)")
print()
print(f"{tri.algebra.name}: dimension {tri.dim} "
      f"(A: {tri.dim_a}, M: {tri.dim_m}, B: {tri.dim_b})")

# Elements are coordinate tuples over the basis (A-block, M-block, B-block).
# (a; m; b) stands for the matrix [[a, m], [0, b]].
def show(v):
    return "(" + ", ".join(str(c) for c in v) + ")"

x = tri.assemble((2,), (1,), (0,))
y = tri.assemble((1,), (3,), (5,))
print("x * y =", show(tri.multiply(x, y)))
print("[x, y] =", show(tri.bracket(x, y)))

print()
print("center basis (a-part | b-part):")
for c in center_triangular(tri):
    print(" ", show(c.a_part), "|", show(c.b_part))
print("As expected, only the identity's line: a = b forces a scalar matrix.")
