"""Operator-model extension of a triangular algebra.

Tri(A, M, B) embeds into a larger triangular algebra built from operators on
M: the left factor A0 is the subalgebra of End(M) generated by all left
multiplications from A together with right multiplications by central
elements of B; the right factor B0 is generated symmetrically by right
multiplications from B and left multiplications by central elements of A.

Every generator of A0 commutes with every generator of B0 (left and right
multiplications commute by bimodule compatibility; same-side multiplications
by central elements commute by centrality), so M is an (A0, B0)-bimodule and
Tri(A0, M, B0) is again a valid triangular algebra.  The element-level
product on B0 is the reverse of the matrix product: operators act on M from
the right, so y·y′ must apply y first.

The point of the construction: for central c in B the operator m ↦ m·c lives
in A0 and plays the role of a "transferred" copy of c on the A side, and
symmetrically for central z in A on the B side.  These transfers are exactly
what the properness decomposition needs.
"""

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, LinearMap, center
from .linalg import (
    Matrix,
    SubspaceBasis,
    matrix_from_flat,
    nullspace,
    vector,
)
from .bimodule import Bimodule
from .triangular import TriangularAlgebra, build_triangular


def _operator_span(dim_m: int, generators) -> tuple:
    """Canonical basis (as matrices) of the span of the given operators."""
    basis = SubspaceBasis.span(dim_m * dim_m, [g.flatten() for g in generators])
    return tuple(matrix_from_flat(v, dim_m, dim_m) for v in basis.vectors)


def _multiplicative_closure(dim_m: int, generators) -> tuple:
    """Smallest product-closed operator subspace containing the generators.

    Iterates span-extension by pairwise products to a fixed point; dimension
    is bounded by dim_m², so the loop terminates.
    """
    ops = _operator_span(dim_m, generators)
    while True:
        products = [x.mul(y) for x in ops for y in ops]
        grown = _operator_span(dim_m, list(ops) + products)
        if len(grown) == len(ops):
            return grown
        ops = grown


def _operator_algebra(ops: tuple, dim_m: int, reverse: bool, name: str) -> Algebra:
    """Abstract algebra on a product-closed operator basis.

    With reverse=True the element product composes in the opposite order,
    which is the correct multiplication for operators acting from the right.
    """
    flat_basis = SubspaceBasis.span(dim_m * dim_m, [op.flatten() for op in ops])
    assert flat_basis.dim == len(ops), "operator basis must be independent"

    def coords(op: Matrix):
        c = flat_basis.coordinates(op.flatten())
        assert c is not None, "product escaped a product-closed operator space"
        return c

    consts = []
    for x in ops:
        row = []
        for y in ops:
            prod = y.mul(x) if reverse else x.mul(y)
            row.append(coords(prod))
        consts.append(tuple(row))
    unit = coords(Matrix.identity(dim_m))
    return Algebra(len(ops), tuple(consts), unit, name)


@dataclass(frozen=True)
class ExtendedTriangular:
    """The extension Tri(A0, M, B0) together with its embeddings and transfers."""

    base: TriangularAlgebra
    extended: TriangularAlgebra
    a0_ops: tuple
    b0_ops: tuple
    a0_flat: SubspaceBasis
    b0_flat: SubspaceBasis
    iota_a: LinearMap
    iota_b: LinearMap

    @property
    def dim_a0(self):
        return len(self.a0_ops)

    @property
    def dim_b0(self):
        return len(self.b0_ops)

    @property
    def strict_a(self) -> bool:
        """True iff A0 is strictly larger than the embedded copy of A."""
        return self.dim_a0 > self.base.dim_a

    @property
    def strict_b(self) -> bool:
        return self.dim_b0 > self.base.dim_b

    def a0_coords(self, op: Matrix):
        return self.a0_flat.coordinates(op.flatten())

    def b0_coords(self, op: Matrix):
        return self.b0_flat.coordinates(op.flatten())

    def a0_matrix(self, coords) -> Matrix:
        out = Matrix.zero(self.base.dim_m, self.base.dim_m)
        for c, op in zip(coords, self.a0_ops):
            if c:
                out = out + op.scale(c)
        return out

    def b0_matrix(self, coords) -> Matrix:
        out = Matrix.zero(self.base.dim_m, self.base.dim_m)
        for c, op in zip(coords, self.b0_ops):
            if c:
                out = out + op.scale(c)
        return out

    def embed(self, x):
        """The unital injection of the base triangular algebra."""
        a, m, b = self.base.split(x)
        return self.extended.assemble(self.iota_a.apply(a), m, self.iota_b.apply(b))

    def embedding_map(self) -> LinearMap:
        cols = [self.embed(self.base.algebra.basis_vector(i))
                for i in range(self.base.dim)]
        return LinearMap.from_columns(cols, self.extended.dim)

    def tau_right_inv(self, c):
        """A0 coordinates of the operator m ↦ m·c, for central c in B."""
        if not center(self.base.part_b).contains(vector(c)):
            raise ValueError("element is not central in the right algebra")
        coords = self.a0_coords(self.base.bimodule.right_operator(c))
        assert coords is not None, "central right multiplication must lie in A0"
        return coords

    def tau_left(self, z):
        """B0 coordinates of the operator m ↦ z·m, for central z in A."""
        if not center(self.base.part_a).contains(vector(z)):
            raise ValueError("element is not central in the left algebra")
        coords = self.b0_coords(self.base.bimodule.left_operator(z))
        assert coords is not None, "central left multiplication must lie in B0"
        return coords


@lru_cache(maxsize=None)
def build_operator_extension(tri: TriangularAlgebra) -> ExtendedTriangular:
    """Construct Tri(A0, M, B0) and all embedding data for a base algebra."""
    bm = tri.bimodule
    dm = tri.dim_m

    a_gens = [bm.left_operator(tri.part_a.basis_vector(i))
              for i in range(tri.dim_a)]
    a_gens += [bm.right_operator(c) for c in center(tri.part_b).vectors]
    a0_ops = _multiplicative_closure(dm, a_gens)

    b_gens = [bm.right_operator(tri.part_b.basis_vector(i))
              for i in range(tri.dim_b)]
    b_gens += [bm.left_operator(z) for z in center(tri.part_a).vectors]
    b0_ops = _multiplicative_closure(dm, b_gens)

    for x in a0_ops:
        for y in b0_ops:
            assert x.mul(y) == y.mul(x), \
                "left-side and right-side operators must commute"

    a0_alg = _operator_algebra(a0_ops, dm, reverse=False,
                               name=f"{tri.part_a.name}^0")
    b0_alg = _operator_algebra(b0_ops, dm, reverse=True,
                               name=f"{tri.part_b.name}^0")

    # M as an (A0, B0)-bimodule: operators act by their matrices.
    left = [[a0_ops[i].column(j) for j in range(dm)] for i in range(len(a0_ops))]
    right = [[b0_ops[i].column(j) for i in range(len(b0_ops))] for j in range(dm)]
    bimodule0 = Bimodule(a0_alg, b0_alg, dm,
                         tuple(tuple(col for col in row) for row in left),
                         tuple(tuple(col for col in row) for row in right))
    extended = build_triangular(a0_alg, bimodule0, b0_alg,
                                name=f"{tri.algebra.name}^0")

    a0_flat = SubspaceBasis.span(dm * dm, [o.flatten() for o in a0_ops])
    b0_flat = SubspaceBasis.span(dm * dm, [o.flatten() for o in b0_ops])
    iota_a_cols = []
    for i in range(tri.dim_a):
        coords = a0_flat.coordinates(a_gens[i].flatten())
        assert coords is not None
        iota_a_cols.append(coords)
    iota_b_cols = []
    for i in range(tri.dim_b):
        coords = b0_flat.coordinates(b_gens[i].flatten())
        assert coords is not None
        iota_b_cols.append(coords)
    iota_a = LinearMap.from_columns(iota_a_cols, len(a0_ops))
    iota_b = LinearMap.from_columns(iota_b_cols, len(b0_ops))

    ext = ExtendedTriangular(tri, extended, a0_ops, b0_ops, a0_flat, b0_flat,
                             iota_a, iota_b)
    assert nullspace(ext.embedding_map().matrix).dim == 0, \
        "embedding of the base algebra must be injective"
    return ext
