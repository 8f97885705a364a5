"""Level-by-level solvers for derivation-type map sequences.

A sequence L_0, L_1, ..., L_N of linear maps with L_0 = id is constrained at
each level n ≥ 1 by one of three identities, imposed on basis tuples (which
settles them everywhere, by multilinearity):

  higher             L_n(xy)      = Σ_{i+j=n} L_i(x)·L_j(y)
  lie-higher         L_n([x,y])   = Σ_{i+j=n} [L_i(x), L_j(y)]
  lie-triple-higher  L_n([[x,y],z]) = Σ_{i+j+k=n} [[L_i(x), L_j(y)], L_k(z)]

Each identity is affine-linear in the unknown L_n once L_0..L_{n-1} are
fixed: the terms containing L_n form a linear operator on its matrix entries
that does not depend on n, and everything else moves to the right-hand side.
Consequently one matrix factorization per (algebra, kind) serves every level,
every prefix, and every sampled sequence; the homogeneous solution space at
any level is the level-1 space of the same kind.

Solving at level n uses only the prefix L_0..L_{n-1}; verification re-checks
the defining identities directly.
"""

import random
from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, LinearMap, Violation
from .linalg import (
    AffineSolutionSet,
    FactoredSolver,
    Matrix,
    ZERO,
    matrix_from_flat,
    scalar,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vector,
)

HIGHER = "higher"
LIE_HIGHER = "lie-higher"
LIE_TRIPLE_HIGHER = "lie-triple-higher"
KINDS = (HIGHER, LIE_HIGHER, LIE_TRIPLE_HIGHER)


@dataclass(frozen=True)
class HigherMapSequence:
    """Maps L_0..L_N of one kind on a fixed algebra; L_0 is the identity."""

    kind: str
    levels: tuple

    def __post_init__(self):
        assert self.kind in KINDS
        assert self.levels, "a sequence holds at least L_0"

    @property
    def top_level(self) -> int:
        return len(self.levels) - 1

    def prefix(self, n: int) -> "HigherMapSequence":
        """The truncation L_0..L_n."""
        return HigherMapSequence(self.kind, self.levels[:n + 1])


@dataclass(frozen=True)
class LevelSystem:
    """The linear system `matrix · vec(L_n) = offset` for the next level.

    vec is the row-major flattening of the map's matrix.  The matrix depends
    only on the algebra and the kind; the offset collects the lower-level
    convolution terms.
    """

    matrix: Matrix
    offset: tuple


def map_to_vector(m: LinearMap):
    return m.matrix.flatten()


def map_from_vector(v, dim: int) -> LinearMap:
    return LinearMap.from_matrix(matrix_from_flat(v, dim, dim))


def _constraint_tuples(alg: Algebra, kind: str):
    d = alg.dim
    if kind == HIGHER:
        return tuple((p, q) for p in range(d) for q in range(d))
    if kind == LIE_HIGHER:
        return tuple((p, q) for p in range(d) for q in range(p + 1, d))
    if kind == LIE_TRIPLE_HIGHER:
        return tuple((p, q, r) for p in range(d) for q in range(p + 1, d)
                     for r in range(d))
    raise ValueError(f"unknown kind {kind!r}")


def _add_value_block(rows, base, v, sign, d):
    """Add sign·L(v) to the d output rows starting at `base`."""
    for s in range(d):
        row = rows[base + s]
        for c in range(d):
            if v[c]:
                row[s * d + c] += sign * v[c]


def _add_composed_block(rows, base, outer: Matrix, col: int, sign, d):
    """Add sign·outer·(L applied to basis vector `col`) to the output rows."""
    for s in range(d):
        row = rows[base + s]
        for r in range(d):
            coeff = outer.entries[s][r]
            if coeff:
                row[r * d + col] += sign * coeff


@lru_cache(maxsize=None)
def _coefficient_matrix(alg: Algebra, kind: str) -> Matrix:
    """Matrix of the L_n-dependent part of the level identity (any n ≥ 1)."""
    d = alg.dim
    tuples = _constraint_tuples(alg, kind)
    rows = [[ZERO] * (d * d) for _ in range(d * len(tuples))]
    basis = [alg.basis_vector(i) for i in range(d)]
    left = [alg.left_mult_matrix(b) for b in basis]
    right = [alg.right_mult_matrix(b) for b in basis]
    # u ↦ [u, b_q]
    rbrk = [right[q] - left[q] for q in range(d)]

    for t, tup in enumerate(tuples):
        base = t * d
        if kind == HIGHER:
            p, q = tup
            _add_value_block(rows, base, alg.struct_consts[p][q], 1, d)
            # −L(b_p)·b_q − b_p·L(b_q)
            _add_composed_block(rows, base, right[q], p, -1, d)
            _add_composed_block(rows, base, left[p], q, -1, d)
        elif kind == LIE_HIGHER:
            p, q = tup
            _add_value_block(rows, base, alg.bracket(basis[p], basis[q]), 1, d)
            # −[L(b_p), b_q] − [b_p, L(b_q)]
            _add_composed_block(rows, base, rbrk[q], p, -1, d)
            _add_composed_block(rows, base, rbrk[p], q, 1, d)
        else:
            p, q, r = tup
            w = alg.bracket(basis[p], basis[q])
            _add_value_block(rows, base, alg.bracket(w, basis[r]), 1, d)
            # −[[L(b_p), b_q], b_r] − [[b_p, L(b_q)], b_r] − [[b_p, b_q], L(b_r)]
            _add_composed_block(rows, base, rbrk[r].mul(rbrk[q]), p, -1, d)
            _add_composed_block(rows, base, rbrk[r].mul(rbrk[p]), q, 1, d)
            _add_composed_block(rows, base, alg.adjoint_matrix(w), r, -1, d)
    return Matrix.from_rows([tuple(row) for row in rows], d * d)


@lru_cache(maxsize=None)
def _kind_solver(alg: Algebra, kind: str) -> FactoredSolver:
    return FactoredSolver(_coefficient_matrix(alg, kind))


def _level_offset(alg: Algebra, kind: str, levels: tuple):
    """Right-hand side for extending the given prefix by one level."""
    d = alg.dim
    n = len(levels)  # the level being solved for
    tuples = _constraint_tuples(alg, kind)
    cols = [[lm.matrix.column(i) for i in range(d)] for lm in levels]
    out = []
    if kind in (HIGHER, LIE_HIGHER):
        combine = alg.multiply if kind == HIGHER else alg.bracket
        for p, q in tuples:
            acc = zero_vector(d)
            for i in range(1, n):
                acc = vec_add(acc, combine(cols[i][p], cols[n - i][q]))
            out.extend(acc)
        return tuple(out)

    # lie-triple: group terms by the level k of the third slot.  For k = 0 the
    # inner sum runs over i + j = n with i, j ≥ 1 (the i = n and j = n terms
    # contain the unknown and sit on the left side); for 1 ≤ k ≤ n−1 the inner
    # sum is complete; k = n contributes nothing because [[x, y], ·] of the
    # identity map's bracket belongs to the unknown side.
    pair_sums = {}
    pairs = sorted({(p, q) for (p, q, _) in tuples})
    for p, q in pairs:
        full = []  # full[s] = Σ_{i+j=s} [L_i(b_p), L_j(b_q)]
        for s in range(n):
            acc = zero_vector(d)
            for i in range(0, s + 1):
                acc = vec_add(acc, alg.bracket(cols[i][p], cols[s - i][q]))
            full.append(acc)
        partial_n = zero_vector(d)
        for i in range(1, n):
            partial_n = vec_add(partial_n, alg.bracket(cols[i][p], cols[n - i][q]))
        pair_sums[(p, q)] = (full, partial_n)
    basis = [alg.basis_vector(i) for i in range(d)]
    for p, q, r in tuples:
        full, partial_n = pair_sums[(p, q)]
        acc = alg.bracket(partial_n, basis[r])
        for k in range(1, n):
            acc = vec_add(acc, alg.bracket(full[n - k], cols[k][r]))
        out.extend(acc)
    return tuple(out)


def level_system(alg: Algebra, kind: str, prefix: HigherMapSequence) -> LevelSystem:
    """The explicit linear system whose solutions are the valid next levels."""
    return LevelSystem(_coefficient_matrix(alg, kind),
                       _level_offset(alg, kind, prefix.levels))


def _extend(alg: Algebra, kind: str, prefix: HigherMapSequence) -> AffineSolutionSet:
    assert prefix.levels[0].matrix == Matrix.identity(alg.dim), \
        "a sequence prefix must start with the identity map"
    offset = _level_offset(alg, kind, prefix.levels)
    sol = _kind_solver(alg, kind).solve(offset)
    assert not sol.is_empty, \
        "level extension became inconsistent; the prefix cannot satisfy the " \
        "lower-level identities"
    return sol


def higher_extend(alg: Algebra, prefix: HigherMapSequence) -> AffineSolutionSet:
    """All valid next levels continuing the prefix as a higher derivation."""
    return _extend(alg, HIGHER, prefix)


def lie_higher_extend(alg: Algebra, prefix: HigherMapSequence) -> AffineSolutionSet:
    return _extend(alg, LIE_HIGHER, prefix)


def lie_triple_higher_extend(alg: Algebra, prefix: HigherMapSequence) -> AffineSolutionSet:
    return _extend(alg, LIE_TRIPLE_HIGHER, prefix)


_EXTENDERS = {
    HIGHER: higher_extend,
    LIE_HIGHER: lie_higher_extend,
    LIE_TRIPLE_HIGHER: lie_triple_higher_extend,
}


@lru_cache(maxsize=None)
def derivation_space(alg: Algebra):
    """Canonical basis of all maps with Δ(xy) = Δ(x)y + xΔ(y), as flattened
    matrices in the d²-dimensional map space."""
    return _kind_solver(alg, HIGHER).nullspace


@lru_cache(maxsize=None)
def lie_derivation_space(alg: Algebra):
    return _kind_solver(alg, LIE_HIGHER).nullspace


@lru_cache(maxsize=None)
def lie_triple_derivation_space(alg: Algebra):
    return _kind_solver(alg, LIE_TRIPLE_HIGHER).nullspace


def sample_sequence(alg: Algebra, kind: str, levels: int, seed) -> HigherMapSequence:
    """Deterministic-for-seed random valid sequence with N = `levels`.

    Each level takes the solver's particular solution plus a random rational
    combination (single-digit numerators and denominators) of the homogeneous
    basis, so coefficient growth stays tame through level-4 convolutions.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if levels < 0:
        raise ValueError("levels must be nonnegative")
    rng = random.Random(seed)
    seq = HigherMapSequence(kind, (LinearMap.identity(alg.dim),))
    for _ in range(levels):
        sol = _extend(alg, kind, seq)
        v = sol.particular
        for h in sol.homogeneous.vectors:
            coeff = scalar(rng.randint(-9, 9)) / scalar(rng.randint(1, 9))
            if coeff:
                v = vec_add(v, vec_scale(coeff, h))
        seq = HigherMapSequence(kind, seq.levels + (map_from_vector(v, alg.dim),))
    return seq


def verify_sequence(alg: Algebra, seq: HigherMapSequence) -> tuple:
    """Re-check every defining identity; report the first violation found.

    The identities are evaluated directly from the definitions (products and
    brackets of images), independently of the solver's matrix encoding.
    """
    d = alg.dim
    ident = LinearMap.identity(d)
    if seq.levels[0].matrix != ident.matrix:
        return (Violation("level-0-identity", (0,),
                          "L_0 must be the identity map"),)
    basis = [alg.basis_vector(i) for i in range(d)]
    for n in range(1, len(seq.levels)):
        maps = seq.levels[:n + 1]
        for tup in _constraint_tuples(alg, seq.kind):
            if seq.kind == HIGHER:
                p, q = tup
                lhs = maps[n].apply(alg.multiply(basis[p], basis[q]))
                rhs = zero_vector(d)
                for i in range(n + 1):
                    rhs = vec_add(rhs, alg.multiply(maps[i].apply(basis[p]),
                                                    maps[n - i].apply(basis[q])))
            elif seq.kind == LIE_HIGHER:
                p, q = tup
                lhs = maps[n].apply(alg.bracket(basis[p], basis[q]))
                rhs = zero_vector(d)
                for i in range(n + 1):
                    rhs = vec_add(rhs, alg.bracket(maps[i].apply(basis[p]),
                                                   maps[n - i].apply(basis[q])))
            else:
                p, q, r = tup
                w = alg.bracket(basis[p], basis[q])
                lhs = maps[n].apply(alg.bracket(w, basis[r]))
                rhs = zero_vector(d)
                for i in range(n + 1):
                    for j in range(n + 1 - i):
                        k = n - i - j
                        inner = alg.bracket(maps[i].apply(basis[p]),
                                            maps[j].apply(basis[q]))
                        rhs = vec_add(rhs, alg.bracket(inner, maps[k].apply(basis[r])))
            if lhs != rhs:
                return (Violation(
                    f"{seq.kind}-identity", (n,) + tup,
                    f"level-{n} identity fails at basis tuple {tup}: "
                    f"lhs {lhs} differs from rhs {rhs}"),)
    return ()
