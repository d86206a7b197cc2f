"""Exact rational scalars and linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Matrices are small immutable
row-major containers; subspaces are stored in canonical reduced row echelon
form so that equality of subspaces is a plain data comparison.

Elimination works on sparse rows (``dict`` column -> Fraction) internally,
which keeps the graded systems arising from nilpotent Lie algebras cheap.
The observable output is always the unique RREF.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

SparseRow = dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class AmbientDimensionError(ValueError):
    """Raised when combining objects that live in different ambient spaces."""


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected; nothing in this package is allowed to be inexact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        den_i = int(den)
        if den_i == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(int(num), den_i)
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    """Render as ``"p/q"``, or ``"p"`` when the denominator is one."""
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# sparse vectors
# ---------------------------------------------------------------------------


def sparse_from_dense(values: Sequence) -> SparseRow:
    out: SparseRow = {}
    for idx, val in enumerate(values):
        q = to_rational(val)
        if q:
            out[idx] = q
    return out


def dense_from_sparse(row: Mapping[int, Fraction], n: int) -> tuple[Fraction, ...]:
    vec = [ZERO] * n
    for idx, val in row.items():
        vec[idx] = val
    return tuple(vec)


def axpy(target: SparseRow, coeff: Fraction, source: Mapping[int, Fraction]) -> None:
    """In place ``target += coeff * source``, dropping cancelled entries."""
    if not coeff:
        return
    for idx, val in source.items():
        new = target.get(idx, ZERO) + coeff * val
        if new:
            target[idx] = new
        else:
            target.pop(idx, None)


def sparse_combination(terms: Iterable[tuple[Fraction, Mapping[int, Fraction]]]) -> SparseRow:
    out: SparseRow = {}
    for coeff, vec in terms:
        axpy(out, coeff, vec)
    return out


# ---------------------------------------------------------------------------
# Matrix
# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError(f"ragged matrix: expected {ncols} columns, got {len(row)}")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_sparse(cls, rows: Iterable[Mapping[int, Fraction]], ncols: int) -> Matrix:
        return cls([dense_from_sparse(r, ncols) for r in rows], ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> Matrix:
        cols = [tuple(to_rational(x) for x in c) for c in columns]
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.ncols, self._rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}], ncols={self.ncols})"

    def sparse_rows(self) -> list[SparseRow]:
        return [{j: x for j, x in enumerate(row) if x} for row in self._rows]

    def transpose(self) -> Matrix:
        return Matrix([[self._rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(vector) != self.ncols:
            raise AmbientDimensionError(f"vector of length {len(vector)} for {self.ncols} columns")
        vec = [to_rational(x) for x in vector]
        nz = [(j, x) for j, x in enumerate(vec) if x]
        return tuple(sum((row[j] * x for j, x in nz), ZERO) for row in self._rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise AmbientDimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        return Matrix(
            [[sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in cols] for row in self._rows],
            other.ncols,
        )

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise AmbientDimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise AmbientDimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self._rows], self.ncols)

    def scale(self, c) -> Matrix:
        c = to_rational(c)
        return Matrix([[c * a for a in r] for r in self._rows], self.ncols)

    def power(self, k: int) -> Matrix:
        if self.nrows != self.ncols:
            raise AmbientDimensionError("power of a non-square matrix")
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]], ncols: int | None = None) -> Matrix:
        return cls([[parse_rational(str(x)) for x in r] for r in data], ncols)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ValueError("nothing to stack")
    ncols = blocks[0].ncols
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise AmbientDimensionError("column mismatch in vstack")
        rows.extend(b.rows)
    return Matrix(rows, ncols)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def _echelon(rows: Iterable[Mapping[int, Fraction]]) -> dict[int, SparseRow]:
    """Insert rows one by one into an echelon structure keyed by lead column."""
    pivots: dict[int, SparseRow] = {}
    for source in rows:
        row = {k: to_rational(v) for k, v in source.items() if v}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = ONE / row[lead]
                if inv != ONE:
                    row = {k: v * inv for k, v in row.items()}
                pivots[lead] = row
                break
            axpy(row, -row[lead], prow)
    return pivots


def _back_substitute(pivots: dict[int, SparseRow]) -> list[tuple[int, SparseRow]]:
    order = sorted(pivots)
    for col in reversed(order):
        row = pivots[col]
        # reduced rows carry no pivot columns besides their own
        for other in sorted(k for k in row if k > col and k in pivots):
            axpy(row, -row[other], pivots[other])
    return [(col, pivots[col]) for col in order]


def rref_sparse(rows: Iterable[Mapping[int, Fraction]]) -> list[tuple[int, SparseRow]]:
    """Canonical RREF of sparse rows as ``(pivot column, row)`` pairs."""
    return _back_substitute(_echelon(rows))


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form, zero rows kept at the bottom so the shape is preserved."""
    reduced = rref_sparse(m.sparse_rows())
    rows = [dense_from_sparse(r, m.ncols) for _, r in reduced]
    rows.extend([(ZERO,) * m.ncols] * (m.nrows - len(rows)))
    return Matrix(rows, m.ncols)


def rank(m: Matrix) -> int:
    return len(_echelon(m.sparse_rows()))


def nullspace_sparse(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> Subspace:
    reduced = rref_sparse(rows)
    pivot_cols = {col for col, _ in reduced}
    free = [c for c in range(ncols) if c not in pivot_cols]
    # column -> list of (pivot col, coefficient) for the free columns
    by_free: dict[int, list[tuple[int, Fraction]]] = {f: [] for f in free}
    for col, row in reduced:
        for k, v in row.items():
            if k != col:
                by_free[k].append((col, v))
    vectors = []
    for f in free:
        vec: SparseRow = {f: ONE}
        for col, v in by_free[f]:
            vec[col] = -v
        vectors.append(vec)
    return Subspace.from_sparse(vectors, ncols)


def nullspace(m: Matrix) -> Subspace:
    """Subspace of vectors ``v`` with ``m v = 0``."""
    return nullspace_sparse(m.sparse_rows(), m.ncols)


# ---------------------------------------------------------------------------
# Subspace
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of Q^n held as the canonical RREF basis.

    Two subspaces compare equal exactly when their RREF bases coincide.
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim: int, reduced: Sequence[tuple[int, SparseRow]]):
        # trusted constructor: ``reduced`` must already be canonical RREF
        self.ambient_dim = ambient_dim
        self._pivots = tuple(col for col, _ in reduced)
        self._rows = tuple(row for _, row in reduced)

    @classmethod
    def from_sparse(cls, vectors: Iterable[Mapping[int, Fraction]], ambient_dim: int) -> Subspace:
        vecs = list(vectors)
        for v in vecs:
            if v and (min(v) < 0 or max(v) >= ambient_dim):
                raise AmbientDimensionError(f"index out of range for ambient dimension {ambient_dim}")
        return cls(ambient_dim, rref_sparse(vecs))

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        sparse = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientDimensionError(f"vector of length {len(v)} in dimension {ambient_dim}")
            sparse.append(sparse_from_dense(v))
        return cls(ambient_dim, rref_sparse(sparse))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, [(i, {i: ONE}) for i in range(ambient_dim)])

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient_dim: int) -> Subspace:
        return cls.from_sparse([{i: ONE} for i in indices], ambient_dim)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    @property
    def basis(self) -> Matrix:
        return Matrix.from_sparse(self._rows, self.ambient_dim)

    def sparse_basis(self) -> list[SparseRow]:
        return [dict(r) for r in self._rows]

    def vectors(self) -> list[tuple[Fraction, ...]]:
        return [dense_from_sparse(r, self.ambient_dim) for r in self._rows]

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self._pivots == other._pivots
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self._pivots, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def _check(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise AmbientDimensionError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def reduce_sparse(self, vector: Mapping[int, Fraction]) -> SparseRow:
        """Remainder of ``vector`` after clearing every pivot column."""
        row = {k: to_rational(v) for k, v in vector.items() if v}
        for col, prow in zip(self._pivots, self._rows):
            c = row.get(col)
            if c:
                axpy(row, -c, prow)
        return row

    def coordinates_sparse(self, vector: Mapping[int, Fraction]) -> list[Fraction] | None:
        """Coefficients in the RREF basis, or ``None`` if the vector is outside."""
        coeffs = [vector.get(col, ZERO) for col in self._pivots]
        rest = dict(vector)
        for c, row in zip(coeffs, self._rows):
            axpy(rest, -to_rational(c), row)
        if rest:
            return None
        return [to_rational(c) for c in coeffs]

    def member(self, vector: Sequence) -> bool:
        if len(vector) != self.ambient_dim:
            raise AmbientDimensionError(f"vector of length {len(vector)} in dimension {self.ambient_dim}")
        return not self.reduce_sparse(sparse_from_dense(vector))

    def member_sparse(self, vector: Mapping[int, Fraction]) -> bool:
        return not self.reduce_sparse(vector)

    def contains(self, other: Subspace) -> bool:
        """True iff ``other`` is a subspace of ``self``."""
        self._check(other)
        return all(not self.reduce_sparse(r) for r in other._rows)

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.from_sparse(list(self._rows) + list(other._rows), self.ambient_dim)

    __add__ = sum

    def annihilator(self) -> Subspace:
        """Linear functionals (as coefficient vectors) vanishing on the subspace."""
        return nullspace_sparse(self._rows, self.ambient_dim)

    def intersection(self, other: Subspace) -> Subspace:
        self._check(other)
        if self.contains(other):
            return other
        if other.contains(self):
            return self
        functionals = self.annihilator().sparse_basis() + other.annihilator().sparse_basis()
        return nullspace_sparse(functionals, self.ambient_dim)

    __and__ = intersection

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)

    def image(self, apply: Callable[[SparseRow], Mapping[int, Fraction]], target_dim: int) -> Subspace:
        """Span of ``apply(v)`` over the basis vectors ``v``."""
        return Subspace.from_sparse([apply(dict(r)) for r in self._rows], target_dim)

    def complement_coordinates(self) -> list[int]:
        """Coordinate indices that are not pivots; they span a complement."""
        piv = set(self._pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]


@dataclass(frozen=True)
class SubspaceOps:
    sum: Subspace
    intersection: Subspace
    contains: bool
    member: Callable[[Sequence], bool]


def subspace_ops(a: Subspace, b: Subspace) -> SubspaceOps:
    """Sum, intersection, containment (``b`` inside ``a``) and membership in ``a``."""
    if a.ambient_dim != b.ambient_dim:
        raise AmbientDimensionError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    total = a.sum(b)
    return SubspaceOps(sum=total, intersection=a.intersection(b), contains=a.contains(b), member=a.member)


def solve_linear(columns: Sequence[Mapping[int, Fraction]], rhs: Mapping[int, Fraction]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum_i c_i columns[i] = rhs``; free unknowns set to zero.

    Returns ``None`` when the system is inconsistent.
    """
    m = len(columns)
    rows: dict[int, SparseRow] = {}
    for i, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[i] = to_rational(v)
    for r, v in rhs.items():
        if v:
            rows.setdefault(r, {})[m] = to_rational(v)
    solution = [ZERO] * m
    for col, row in rref_sparse(rows.values()):
        if col == m:
            return None
        solution[col] = row.get(m, ZERO)
    return solution
