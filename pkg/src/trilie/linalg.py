"""Exact rational linear algebra kernel.

Dense matrices over the rationals with reduced row echelon form, nullspaces,
affine solution sets, and canonical subspace bases.  Everything downstream in
the package reduces to these primitives, so equality here is exact scalar
equality; there are no tolerances anywhere.

Scalars are ``gmpy2.mpq`` when available (much faster) and
``fractions.Fraction`` otherwise.  Both keep lowest terms and a positive
denominator.  Values entering from outside go through :func:`scalar`, which
rejects floats and decimal strings so inexact data can never leak in.
"""

from __future__ import annotations

import numbers
import re
from dataclasses import dataclass

try:
    from gmpy2 import mpq as Scalar
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Scalar

ZERO = Scalar(0)
ONE = Scalar(1)

# integer or integer/positive-integer; anything else (floats, "1.5", "1e3") is refused
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")

Vector = tuple  # tuple of Scalar


def scalar(value):
    """Coerce an int, a string like ``"-3/4"``, or an exact rational to Scalar."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError(f"not an exact scalar: {value!r}")
    if isinstance(value, numbers.Integral):
        return Scalar(int(value))
    if isinstance(value, numbers.Rational):  # Fraction, or mpq behind the alias
        return Scalar(value.numerator) / Scalar(value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return Scalar(text)
    raise TypeError(f"not an exact scalar: {value!r}")


def vector(values) -> Vector:
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    assert 0 <= i < n
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    assert len(u) == len(v)
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    assert len(u) == len(v)
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vec_dot(u: Vector, v: Vector):
    assert len(u) == len(v)
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc += a * b
    return acc


def vec_is_zero(v: Vector) -> bool:
    return all(not a for a in v)


@dataclass(frozen=True)
class Matrix:
    """Dense matrix: ``entries`` is a row-major grid of exact scalars."""

    rows: int
    cols: int
    entries: tuple  # rows-many Vectors of length cols

    def __post_init__(self):
        assert len(self.entries) == self.rows
        assert all(len(r) == self.cols for r in self.entries)

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "Matrix":
        grid = tuple(vector(r) for r in rows)
        if cols is None:
            if not grid:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(grid[0])
        return Matrix(len(grid), cols, grid)

    @staticmethod
    def from_columns(columns, rows: int | None = None) -> "Matrix":
        cols = tuple(vector(c) for c in columns)
        if rows is None:
            if not cols:
                raise ValueError("row count required for a matrix with no columns")
            rows = len(cols[0])
        assert all(len(c) == rows for c in cols)
        grid = tuple(tuple(c[i] for c in cols) for i in range(rows))
        return Matrix(rows, len(cols), grid)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def apply(self, v: Vector) -> Vector:
        """Matrix-vector product self·v."""
        if len(v) != self.cols:
            raise ValueError(f"cannot apply {self.rows}x{self.cols} matrix to length-{len(v)} vector")
        out = [ZERO] * self.rows
        for i, row in enumerate(self.entries):
            acc = ZERO
            for a, b in zip(row, v):
                if a and b:
                    acc += a * b
            out[i] = acc
        return tuple(out)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            orow = out[i]
            for k, rik in enumerate(row):
                if rik:
                    for j, bkj in enumerate(other.entries[k]):
                        if bkj:
                            orow[j] += rik * bkj
        return Matrix(self.rows, other.cols, tuple(tuple(r) for r in out))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def vstack(self, other: "Matrix") -> "Matrix":
        assert self.cols == other.cols
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def flatten(self) -> Vector:
        """Row-major flattening; used to treat operators as coordinate vectors."""
        return tuple(x for row in self.entries for x in row)

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.entries)

    def __add__(self, other: "Matrix") -> "Matrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Matrix(self.rows, self.cols,
                      tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Matrix(self.rows, self.cols,
                      tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scale(-ONE)

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(vec_scale(c, r) for r in self.entries))


def matrix_from_flat(flat: Vector, rows: int, cols: int) -> Matrix:
    assert len(flat) == rows * cols
    return Matrix(rows, cols, tuple(tuple(flat[i * cols + j] for j in range(cols)) for i in range(rows)))


def rref(m: Matrix):
    """Reduced row echelon form.  Returns (rref matrix, pivot columns, rank).

    The RREF of a matrix is unique, which is what makes it usable as a
    canonical form for subspaces.
    """
    work = [list(r) for r in m.entries]
    pivots = []
    r = 0
    for c in range(m.cols):
        p = None
        for i in range(r, m.rows):
            if work[i][c]:
                p = i
                break
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = ONE / work[r][c]
        if inv != ONE:
            work[r] = [x * inv for x in work[r]]
        prow = work[r]
        for i in range(m.rows):
            if i != r and work[i][c]:
                f = work[i][c]
                wi = work[i]
                for k in range(c, m.cols):
                    if prow[k]:
                        wi[k] -= f * prow[k]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    out = Matrix(m.rows, m.cols, tuple(tuple(row) for row in work))
    return out, tuple(pivots), r


def _nullspace_vectors(rref_rows, pivots, cols):
    """Free-variable basis of {v : m·v = 0} read off a reduced row echelon form."""
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [ZERO] * cols
        v[free] = ONE
        for i, p in enumerate(pivots):
            v[p] = -rref_rows[i][free]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class SubspaceBasis:
    """Basis of a linear subspace in canonical form.

    The stacked basis vectors form a reduced row echelon matrix with no zero
    rows, so two equal subspaces have identical representations and dataclass
    equality decides subspace equality.  Construct via :meth:`span`.
    """

    ambient_dim: int
    vectors: tuple  # tuple of Vectors

    def __post_init__(self):
        assert all(len(v) == self.ambient_dim for v in self.vectors)

    @staticmethod
    def span(ambient_dim: int, vectors) -> "SubspaceBasis":
        vecs = [vector(v) for v in vectors]
        if not vecs:
            return SubspaceBasis(ambient_dim, ())
        reduced, _, rank = rref(Matrix.from_rows(vecs, ambient_dim))
        return SubspaceBasis(ambient_dim, reduced.entries[:rank])

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def pivot_columns(self) -> tuple:
        # leading column of each canonical row
        return tuple(next(j for j, x in enumerate(v) if x) for v in self.vectors)

    def _reduce(self, v: Vector):
        """Remainder of v after elimination against the canonical rows."""
        w = list(v)
        for row, p in zip(self.vectors, self.pivot_columns()):
            c = w[p]
            if c:
                for k in range(self.ambient_dim):
                    if row[k]:
                        w[k] -= c * row[k]
        return w

    def contains(self, v: Vector) -> bool:
        """True iff v ∈ span(self): stacking v does not raise the rank."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector length {len(v)} != ambient dimension {self.ambient_dim}")
        return all(not x for x in self._reduce(v))

    def coordinates(self, v: Vector):
        """Coefficients of v over the canonical basis, or None if v ∉ span."""
        if not self.contains(v):
            return None
        # canonical rows have 1 at their own pivot and 0 at the others,
        # so the coefficients are pivot reads
        return tuple(v[p] for p in self.pivot_columns())

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        assert other.ambient_dim == self.ambient_dim
        return all(self.contains(v) for v in other.vectors)

    def annihilator(self) -> Matrix:
        """Matrix K with: v ∈ span(self) iff K·v = 0.

        Rows of K span the orthogonal complement under the standard bilinear
        form; over the rationals the double complement gives back the span, so
        membership becomes a linear condition usable inside larger systems.
        """
        if not self.vectors:
            return Matrix.identity(self.ambient_dim)
        comp = nullspace(Matrix.from_rows(self.vectors, self.ambient_dim))
        return Matrix.from_rows(comp.vectors, self.ambient_dim)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    assert a.ambient_dim == b.ambient_dim
    return SubspaceBasis.span(a.ambient_dim, a.vectors + b.vectors)


def subspace_intersection(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Intersection via annihilators: span(a) ∩ span(b) = ker [K_a; K_b]."""
    assert a.ambient_dim == b.ambient_dim
    stacked = a.annihilator().vstack(b.annihilator())
    return nullspace(stacked)


def nullspace(m: Matrix) -> SubspaceBasis:
    """Canonical basis of {v : m·v = 0}; dimension = cols − rank."""
    reduced, pivots, _ = rref(m)
    return SubspaceBasis.span(m.cols, _nullspace_vectors(reduced.entries, pivots, m.cols))


def subspace_contains(s: SubspaceBasis, v: Vector) -> bool:
    return s.contains(v)


@dataclass(frozen=True)
class AffineSolutionSet:
    """Solutions of a linear system: particular + span(homogeneous).

    ``particular is None`` marks the empty set (an inconsistent system is a
    value, not an error).
    """

    particular: Vector | None
    homogeneous: SubspaceBasis

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dim(self) -> int:
        return self.homogeneous.dim

    def contains(self, v: Vector) -> bool:
        if self.is_empty:
            return False
        return self.homogeneous.contains(vec_sub(v, self.particular))

    def contains_set(self, other: "AffineSolutionSet") -> bool:
        """True iff other ⊆ self, checked on the particular point and basis rays."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        if not self.contains(other.particular):
            return False
        return all(self.homogeneous.contains(v) for v in other.homogeneous.vectors)


def solve_affine(m: Matrix, b: Vector) -> AffineSolutionSet:
    """All solutions of m·x = b as particular + nullspace; empty if inconsistent."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side length {len(b)} != row count {m.rows}")
    aug = Matrix(m.rows, m.cols + 1,
                 tuple(row + (bi,) for row, bi in zip(m.entries, b)))
    reduced, pivots, _ = rref(aug)
    # pivots inside the first m.cols columns reproduce rref(m)
    m_pivots = tuple(p for p in pivots if p < m.cols)
    homogeneous = SubspaceBasis.span(
        m.cols, _nullspace_vectors(reduced.entries, m_pivots, m.cols))
    if m.cols in pivots:  # a pivot in the b column: rank(m|b) > rank(m)
        return AffineSolutionSet(None, homogeneous)
    x = [ZERO] * m.cols
    for i, p in enumerate(m_pivots):
        x[p] = reduced.entries[i][m.cols]
    return AffineSolutionSet(tuple(x), homogeneous)


class FactoredSolver:
    """One-time row reduction of a fixed coefficient matrix, reusable across
    many right-hand sides.

    The per-level constraint systems solved elsewhere in the package share one
    coefficient matrix per problem family; factoring it once turns each
    subsequent solve into a substitution plus a consistency sweep.  Results
    agree exactly with :func:`solve_affine`.
    """

    def __init__(self, m: Matrix):
        self.matrix = m
        picked = []           # indices of a maximal independent row subset
        echelon = {}          # pivot column -> fully reduced row (list)
        for idx, row in enumerate(m.entries):
            w = list(row)
            for p, erow in echelon.items():
                c = w[p]
                if c:
                    for k in range(m.cols):
                        if erow[k]:
                            w[k] -= c * erow[k]
            lead = next((k for k, x in enumerate(w) if x), None)
            if lead is None:
                continue
            inv = ONE / w[lead]
            if inv != ONE:
                w = [x * inv for x in w]
            for erow in echelon.values():
                c = erow[lead]
                if c:
                    for k in range(m.cols):
                        if w[k]:
                            erow[k] -= c * w[k]
            echelon[lead] = w
            picked.append(idx)
        self.picked = tuple(picked)
        self.rank = len(picked)
        if picked:
            aug = [tuple(m.entries[idx]) + unit_vector(len(picked), pos)
                   for pos, idx in enumerate(picked)]
            reduced, pivots, rank = rref(Matrix.from_rows(aug, m.cols + len(picked)))
            # the picked rows are independent, so every pivot sits in the left block
            assert rank == len(picked) and all(p < m.cols for p in pivots)
            self._reduced = reduced
            self._pivots = pivots
        else:
            self._reduced = Matrix.zero(0, m.cols)
            self._pivots = ()
        self.nullspace = SubspaceBasis.span(
            m.cols, _nullspace_vectors(self._reduced.entries, self._pivots, m.cols))

    def solve(self, b: Vector) -> AffineSolutionSet:
        m = self.matrix
        if len(b) != m.rows:
            raise ValueError(f"right-hand side length {len(b)} != row count {m.rows}")
        x = [ZERO] * m.cols
        n = m.cols
        for i, p in enumerate(self._pivots):
            # transform block of the factored matrix applied to b's picked entries
            acc = ZERO
            trow = self._reduced.entries[i]
            for j, idx in enumerate(self.picked):
                t = trow[n + j]
                if t and b[idx]:
                    acc += t * b[idx]
            x[p] = acc
        xt = tuple(x)
        picked_set = set(self.picked)
        for idx, row in enumerate(m.entries):
            if idx in picked_set:
                continue  # satisfied by construction
            if vec_dot(row, xt) != b[idx]:
                return AffineSolutionSet(None, self.nullspace)
        return AffineSolutionSet(xt, self.nullspace)
