"""Finite-dimensional Lie algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .exact import (
    ONE,
    ZERO,
    Matrix,
    SparseRow,
    Subspace,
    axpy,
    dense_from_sparse,
    nullspace_sparse,
    sparse_from_dense,
    to_rational,
)


class MalformedTableError(ValueError):
    """Structure constants that do not describe a well-formed bracket table."""


class JacobiViolation(ValueError):
    """The Jacobi identity fails on the basis triple ``(i, j, k)`` (0-based)."""

    def __init__(self, i: int, j: int, k: int, residual: SparseRow):
        self.i, self.j, self.k = i, j, k
        self.residual = residual
        terms = ", ".join(f"e{m + 1}: {c}" for m, c in sorted(residual.items()))
        super().__init__(f"Jacobi fails on (e{i + 1}, e{j + 1}, e{k + 1}); residual {{{terms}}}")


class LieAlgebraTable:
    """Structure constants ``[e_i, e_j] = sum_k c_ij^k e_k`` for ``i < j`` (0-based).

    Antisymmetry is implied.  The table is validated (Jacobi on all basis
    triples) at construction unless ``validate=False``.  ``free_type`` records
    ``(g, c)`` when the table is known to present F_{g,c}; property-F
    verdicts use it.
    """

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        names: Sequence[str] | None = None,
        *,
        name: str | None = None,
        free_type: tuple[int, int] | None = None,
        validate: bool = True,
    ):
        if dim < 0:
            raise MalformedTableError("negative dimension")
        self.dim = dim
        self.names = tuple(names) if names is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.names) != dim:
            raise MalformedTableError(f"{len(self.names)} names for dimension {dim}")
        self.name = name
        self.free_type = free_type
        table: dict[tuple[int, int], SparseRow] = {}
        for key, vec in brackets.items():
            i, j = key
            if not (0 <= i < j < dim):
                raise MalformedTableError(f"bracket key {(i, j)} must satisfy 0 <= i < j < {dim}")
            row: SparseRow = {}
            for k, c in vec.items():
                if not 0 <= k < dim:
                    raise MalformedTableError(f"basis index {k} out of range in [e{i + 1}, e{j + 1}]")
                q = to_rational(c)
                if q:
                    row[k] = row.get(k, ZERO) + q
            row = {k: c for k, c in row.items() if c}
            if row:
                table[(i, j)] = row
        self._brackets = table
        full: dict[tuple[int, int], SparseRow] = {}
        for (i, j), row in table.items():
            full[(i, j)] = row
            full[(j, i)] = {k: -c for k, c in row.items()}
        self._full = full
        if validate:
            check_jacobi(self)

    # -- access ---------------------------------------------------------------

    @property
    def brackets(self) -> dict[tuple[int, int], SparseRow]:
        """Nonzero brackets for ``i < j``; treat as read-only."""
        return self._brackets

    def bracket_basis(self, i: int, j: int) -> SparseRow:
        """``[e_i, e_j]`` as a sparse vector (read-only, possibly shared)."""
        return self._full.get((i, j), _EMPTY)

    def bracket_sparse(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> SparseRow:
        out: SparseRow = {}
        full = self._full
        for i, a in x.items():
            for j, b in y.items():
                row = full.get((i, j))
                if row:
                    axpy(out, a * b, row)
        return out

    def bracket(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        self._check_vector(x)
        self._check_vector(y)
        return dense_from_sparse(self.bracket_sparse(sparse_from_dense(x), sparse_from_dense(y)), self.dim)

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def _check_vector(self, x: Sequence) -> None:
        if len(x) != self.dim:
            raise ValueError(f"vector of length {len(x)} in a {self.dim}-dimensional algebra")

    def __repr__(self) -> str:
        label = self.name or "LieAlgebraTable"
        return f"<{label}: dim={self.dim}, {len(self._brackets)} nonzero brackets>"

    def same_structure(self, other: LieAlgebraTable) -> bool:
        return self.dim == other.dim and self._brackets == other._brackets

    # -- derived data (cached; the table is immutable) ------------------------

    @cached_property
    def center(self) -> Subspace:
        # x is central iff sum_i x_i c_ij^m = 0 for every j, m
        rows: dict[tuple[int, int], SparseRow] = {}
        for (i, j), vec in self._full.items():
            for m, c in vec.items():
                rows.setdefault((j, m), {})[i] = c
        return nullspace_sparse(rows.values(), self.dim)

    @cached_property
    def commutator(self) -> Subspace:
        return Subspace.from_sparse(self._brackets.values(), self.dim)

    @cached_property
    def series(self) -> SeriesReport:
        return _series(self)


_EMPTY: SparseRow = {}


def table_from_rules(
    dim: int,
    rules: Iterable[tuple[int, int, Mapping[int, object]]],
    names: Sequence[str] | None = None,
    **kwargs,
) -> LieAlgebraTable:
    """Build a table from 1-based rules ``(i, j, {k: c})`` meaning ``[e_i, e_j] = sum c e_k``.

    Rules with ``i > j`` are flipped with a sign change.
    """
    brackets: dict[tuple[int, int], SparseRow] = {}
    for i, j, vec in rules:
        if i == j:
            raise MalformedTableError(f"[e{i}, e{i}] must be zero and cannot be specified")
        sign = ONE
        if i > j:
            i, j, sign = j, i, -ONE
        row = brackets.setdefault((i - 1, j - 1), {})
        for k, c in vec.items():
            if not 1 <= k <= dim:
                raise MalformedTableError(f"basis index {k} out of range 1..{dim}")
            axpy(row, sign * to_rational(c), {k - 1: ONE})
    return LieAlgebraTable(dim, brackets, names, **kwargs)


def abelian(dim: int) -> LieAlgebraTable:
    return LieAlgebraTable(dim, {}, name=f"abelian_{dim}")


def direct_sum(a: LieAlgebraTable, b: LieAlgebraTable) -> LieAlgebraTable:
    shift = a.dim
    brackets = dict(a.brackets)
    for (i, j), vec in b.brackets.items():
        brackets[(i + shift, j + shift)] = {k + shift: c for k, c in vec.items()}
    names = list(a.names) + [f"{n}'" if n in a.names else n for n in b.names]
    name = f"{a.name or 'g'}+{b.name or 'h'}"
    return LieAlgebraTable(a.dim + b.dim, brackets, names, name=name)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def jacobi_residual(t: LieAlgebraTable, i: int, j: int, k: int) -> SparseRow:
    """``[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]``."""
    out: SparseRow = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        inner = t.bracket_basis(b, c)
        for m, coeff in inner.items():
            row = t.bracket_basis(a, m)
            if row:
                axpy(out, coeff, row)
    return out


def check_jacobi(t: LieAlgebraTable) -> None:
    """Raise :class:`JacobiViolation` for the lexicographically least failing triple."""
    # a triple can only fail if one of its three pairs has a nonzero bracket
    triples: set[tuple[int, int, int]] = set()
    n = t.dim
    for (i, j) in t.brackets:
        for k in range(n):
            if k != i and k != j:
                triples.add(tuple(sorted((i, j, k))))
    for i, j, k in sorted(triples):
        res = jacobi_residual(t, i, j, k)
        if res:
            raise JacobiViolation(i, j, k, res)


def validate(t: LieAlgebraTable) -> bool:
    """Exhaustive Jacobi check; returns True or raises :class:`JacobiViolation`."""
    check_jacobi(t)
    return True


# ---------------------------------------------------------------------------
# series and invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesReport:
    lower_central: list[Subspace]
    derived: list[Subspace]
    center: Subspace
    commutator: Subspace
    nilpotency_class: int | None  # None means not nilpotent

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not None


def bracket_spaces(t: LieAlgebraTable, a: Subspace, b: Subspace) -> Subspace:
    """The subspace ``[a, b]`` spanned by brackets of basis vectors."""
    vecs = []
    bvecs = b.sparse_basis()
    for x in a.sparse_basis():
        for y in bvecs:
            v = t.bracket_sparse(x, y)
            if v:
                vecs.append(v)
    return Subspace.from_sparse(vecs, t.dim)


def _series(t: LieAlgebraTable) -> SeriesReport:
    n = t.dim
    full = Subspace.full(n)
    lower = [full]
    current = full
    nil_class: int | None = 0 if n == 0 else None
    while current.dim:
        nxt = _bracket_with_basis(t, current)
        lower.append(nxt)
        if nxt.dim == 0:
            nil_class = len(lower) - 1
            break
        if nxt == current:
            break
        current = nxt
    derived = [full]
    current = full
    while current.dim:
        nxt = bracket_spaces(t, current, current)
        derived.append(nxt)
        if nxt == current:
            break
        current = nxt
    return SeriesReport(
        lower_central=lower,
        derived=derived,
        center=t.center,
        commutator=t.commutator,
        nilpotency_class=nil_class,
    )


def _bracket_with_basis(t: LieAlgebraTable, space: Subspace) -> Subspace:
    # [g, V] is spanned by [e_a, v] over basis vectors e_a and v
    vecs = []
    for v in space.sparse_basis():
        for a in range(t.dim):
            out: SparseRow = {}
            for m, c in v.items():
                row = t.bracket_basis(a, m)
                if row:
                    axpy(out, c, row)
            if out:
                vecs.append(out)
    return Subspace.from_sparse(vecs, t.dim)


def series(t: LieAlgebraTable) -> SeriesReport:
    return t.series


@dataclass(frozen=True)
class Invariants:
    is_stem: bool
    z_ratio: Fraction
    codim_commutator: int


def invariants(t: LieAlgebraTable) -> Invariants:
    """Stem flag, ``dim Z / dim g`` and the codimension of ``[g, g]``."""
    z = t.center
    comm = t.commutator
    ratio = Fraction(z.dim, t.dim) if t.dim else Fraction(0)
    return Invariants(is_stem=comm.contains(z), z_ratio=ratio, codim_commutator=t.dim - comm.dim)


def ad_matrix(t: LieAlgebraTable, x: Sequence) -> Matrix:
    """Matrix of ``y -> [x, y]``; column ``j`` is ``[x, e_j]``."""
    t._check_vector(x)
    xs = sparse_from_dense(x)
    cols = []
    for j in range(t.dim):
        out: SparseRow = {}
        for i, a in xs.items():
            row = t.bracket_basis(i, j)
            if row:
                axpy(out, a, row)
        cols.append(dense_from_sparse(out, t.dim))
    return Matrix.from_columns(cols, t.dim) if t.dim else Matrix([], 0)


def ad_sparse_columns(t: LieAlgebraTable, x: Mapping[int, Fraction]) -> list[SparseRow]:
    """Columns of ``ad(x)`` as sparse vectors."""
    cols = []
    for j in range(t.dim):
        out: SparseRow = {}
        for i, a in x.items():
            row = t.bracket_basis(i, j)
            if row:
                axpy(out, a, row)
        cols.append(out)
    return cols
