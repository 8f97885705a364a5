"""Built-in catalog of triangular algebras used for tests, demos, and the CLI.

The six entries span the interesting corners: a minimal example, commutative
constituents with small centers, a noncommutative corner algebra, a strict
operator extension on either side, and a two-dimensional center.
"""

from functools import lru_cache

from .algebra import dual_numbers, product_of_rationals, rationals, upper_triangular_2x2
from .bimodule import Bimodule
from .triangular import TriangularAlgebra, build_triangular


def _regular_bimodule(alg):
    """The algebra as a bimodule over itself by left/right multiplication."""
    left = [[alg.struct_consts[i][j] for j in range(alg.dim)]
            for i in range(alg.dim)]
    right = [[alg.struct_consts[j][i] for i in range(alg.dim)]
             for j in range(alg.dim)]
    return Bimodule.from_tables(alg, alg, alg.dim, left, right)


def _coordinatewise_left(k):
    """ℚ^k acting coordinatewise on ℚ^k from the left."""
    return [[[1 if i == j == t else 0 for t in range(k)] for j in range(k)]
            for i in range(k)]


def _coordinatewise_right(k):
    return [[[1 if i == j == t else 0 for t in range(k)] for i in range(k)]
            for j in range(k)]


def _scalar_right(dim_m):
    return [[[1 if t == j else 0 for t in range(dim_m)]] for j in range(dim_m)]


def _scalar_left(dim_m):
    return [[[1 if t == j else 0 for t in range(dim_m)] for j in range(dim_m)]]


@lru_cache(maxsize=None)
def tri_q_q_q() -> TriangularAlgebra:
    """Tri(ℚ, ℚ, ℚ): the smallest faithful case, isomorphic to T₂."""
    q = rationals()
    bm = Bimodule.from_tables(q, q, 1, [[[1]]], [[[1]]])
    return build_triangular(q, bm, q, "tri_q_q_q")


@lru_cache(maxsize=None)
def tri_qq_plane_q() -> TriangularAlgebra:
    """Tri(ℚ×ℚ, ℚ², ℚ): coordinatewise left action, scalar right action."""
    qq = product_of_rationals(2)
    q = rationals()
    bm = Bimodule.from_tables(qq, q, 2, _coordinatewise_left(2), _scalar_right(2))
    return build_triangular(qq, bm, q, "tri_qq_plane_q")


@lru_cache(maxsize=None)
def tri_q_plane_qq() -> TriangularAlgebra:
    """Tri(ℚ, ℚ², ℚ×ℚ): scalar left action, coordinatewise right action."""
    q = rationals()
    qq = product_of_rationals(2)
    bm = Bimodule.from_tables(q, qq, 2, _scalar_left(2), _coordinatewise_right(2))
    return build_triangular(q, bm, qq, "tri_q_plane_qq")


@lru_cache(maxsize=None)
def tri_dual_dual_dual() -> TriangularAlgebra:
    """Tri(D, D, D) for the dual numbers D = ℚ[ε], regular actions."""
    d = dual_numbers()
    return build_triangular(d, _regular_bimodule(d), d, "tri_dual_dual_dual")


@lru_cache(maxsize=None)
def tri_t2_plane_q() -> TriangularAlgebra:
    """Tri(T₂, ℚ², ℚ): column-vector action, realizing a 3×3 upper-triangular
    block pattern with a noncommutative corner."""
    t2 = upper_triangular_2x2()
    q = rationals()
    left = [
        [[1, 0], [0, 0]],  # e11: keeps the first coordinate
        [[0, 0], [1, 0]],  # e12: sends the second coordinate to the first
        [[0, 0], [0, 1]],  # e22: keeps the second coordinate
    ]
    bm = Bimodule.from_tables(t2, q, 2, left, _scalar_right(2))
    return build_triangular(t2, bm, q, "tri_t2_plane_q")


@lru_cache(maxsize=None)
def tri_qq_plane_qq() -> TriangularAlgebra:
    """Tri(ℚ×ℚ, ℚ², ℚ×ℚ): coordinatewise on both sides, center of dimension 2."""
    qq = product_of_rationals(2)
    bm = Bimodule.from_tables(qq, qq, 2, _coordinatewise_left(2),
                              _coordinatewise_right(2))
    return build_triangular(qq, bm, qq, "tri_qq_plane_qq")


CATALOG = {
    "tri_q_q_q": tri_q_q_q,
    "tri_qq_plane_q": tri_qq_plane_q,
    "tri_q_plane_qq": tri_q_plane_qq,
    "tri_dual_dual_dual": tri_dual_dual_dual,
    "tri_t2_plane_q": tri_t2_plane_q,
    "tri_qq_plane_qq": tri_qq_plane_qq,
}


def catalog_names():
    return tuple(CATALOG)


def load_catalog(name: str) -> TriangularAlgebra:
    try:
        return CATALOG[name]()
    except KeyError:
        raise ValueError(f"unknown catalog entry {name!r}; "
                         f"choose from {', '.join(CATALOG)}") from None
