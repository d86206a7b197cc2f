"""Commutative post-Lie algebra (CPA) structures on a Lie algebra.

A CPA product is a bilinear ``x . y`` on the underlying space of a Lie
algebra satisfying

* ``x . y = y . x``                                (symmetry)
* ``[x, y] . z = x . (y . z) - y . (x . z)``       (L is a representation)
* ``x . [y, z] = [x . y, z] + [y, x . z]``         (each L(x) is a derivation)

Products are stored as sparse structure constants ``e_i . e_j = sum_k t_ijk e_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Mapping, Sequence

from .errors import PreconditionError
from .exact import (
    ONE,
    Matrix,
    SparseRow,
    Subspace,
    axpy,
    dense_from_sparse,
    nullspace,
    solve_linear,
    sparse_from_dense,
    to_rational,
)
from .freelie import FreeNilpotentPresentation
from .liealg import LieAlgebraTable


class TensorShapeError(ValueError):
    pass


class NonSymmetricCoefficients(ValueError):
    pass


class StemAlgebraError(PreconditionError):
    """No incomplete CPA structure exists on a nilpotent stem algebra."""


class CpaProduct:
    """Bilinear product on the underlying space of ``algebra``.

    ``products`` maps 0-based pairs ``(i, j)`` to sparse vectors.  With
    ``symmetric=True`` (the default) only ``i <= j`` may be given and the
    mirror entries are filled in; with ``symmetric=False`` the mapping is
    taken literally, so asymmetric input survives to :func:`verify`.
    """

    def __init__(
        self,
        algebra: LieAlgebraTable,
        products: Mapping[tuple[int, int], Mapping[int, object]],
        *,
        symmetric: bool = True,
    ):
        n = algebra.dim
        self.algebra = algebra
        table: dict[tuple[int, int], SparseRow] = {}
        for (i, j), vec in products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise TensorShapeError(f"product index {(i, j)} outside dimension {n}")
            if symmetric and i > j:
                raise TensorShapeError("symmetric products are given for i <= j only")
            row: SparseRow = {}
            for k, c in vec.items():
                if not 0 <= k < n:
                    raise TensorShapeError(f"basis index {k} outside dimension {n}")
                axpy(row, to_rational(c), {k: ONE})
            if row:
                table[(i, j)] = row
                if symmetric and i != j:
                    table[(j, i)] = dict(row)
        self._prod = table

    @classmethod
    def from_tensor(cls, algebra: LieAlgebraTable, tensor: Sequence[Sequence[Sequence]]) -> CpaProduct:
        """Dense ``t[i][j][k]``; kept as given (symmetry is checked by verify)."""
        n = algebra.dim
        if len(tensor) != n or any(len(r) != n or any(len(v) != n for v in r) for r in tensor):
            raise TensorShapeError(f"tensor must have shape ({n}, {n}, {n})")
        products = {}
        for i in range(n):
            for j in range(n):
                vec = sparse_from_dense(tensor[i][j])
                if vec:
                    products[(i, j)] = vec
        return cls(algebra, products, symmetric=False)

    @classmethod
    def zero(cls, algebra: LieAlgebraTable) -> CpaProduct:
        return cls(algebra, {})

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def product_basis(self, i: int, j: int) -> SparseRow:
        return self._prod.get((i, j), _EMPTY)

    def product_sparse(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> SparseRow:
        out: SparseRow = {}
        for i, a in x.items():
            for j, b in y.items():
                row = self._prod.get((i, j))
                if row:
                    axpy(out, a * b, row)
        return out

    def product(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        return dense_from_sparse(self.product_sparse(sparse_from_dense(x), sparse_from_dense(y)), self.dim)

    def left_sparse(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> SparseRow:
        return self.product_sparse(x, y)

    def left_matrix(self, x: Sequence | int) -> Matrix:
        """Matrix of ``L(x) : y -> x . y``; an int selects a basis vector."""
        n = self.dim
        xs = {x: ONE} if isinstance(x, int) else sparse_from_dense(x)
        cols = [dense_from_sparse(self.product_sparse(xs, {j: ONE}), n) for j in range(n)]
        return Matrix.from_columns(cols, n) if n else Matrix([], 0)

    def entries(self) -> dict[tuple[int, int], SparseRow]:
        """All nonzero ``(i, j) -> e_i . e_j``; read-only."""
        return self._prod

    def tensor(self) -> list[list[list[Fraction]]]:
        n = self.dim
        return [[list(dense_from_sparse(self.product_basis(i, j), n)) for j in range(n)] for i in range(n)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CpaProduct):
            return NotImplemented
        return self.algebra.same_structure(other.algebra) and self._prod == other._prod

    def __repr__(self) -> str:
        return f"<CpaProduct on {self.algebra.name or 'algebra'}: {len(self._prod)} nonzero products>"


_EMPTY: SparseRow = {}


# ---------------------------------------------------------------------------
# axiom residuals
# ---------------------------------------------------------------------------


def symmetry_residual(p: CpaProduct, i: int, j: int) -> SparseRow:
    out = dict(p.product_basis(i, j))
    axpy(out, -ONE, p.product_basis(j, i))
    return out


def representation_residual(p: CpaProduct, i: int, j: int, k: int) -> SparseRow:
    """``[e_i,e_j].e_k - e_i.(e_j.e_k) + e_j.(e_i.e_k)``."""
    t = p.algebra
    out: SparseRow = {}
    for m, c in t.bracket_basis(i, j).items():
        axpy(out, c, p.product_basis(m, k))
    axpy(out, -ONE, p.product_sparse({i: ONE}, p.product_basis(j, k)))
    axpy(out, ONE, p.product_sparse({j: ONE}, p.product_basis(i, k)))
    return out


def derivation_residual(p: CpaProduct, i: int, j: int, k: int) -> SparseRow:
    """``e_i.[e_j,e_k] - [e_i.e_j, e_k] - [e_j, e_i.e_k]``."""
    t = p.algebra
    out = p.product_sparse({i: ONE}, t.bracket_basis(j, k))
    axpy(out, -ONE, t.bracket_sparse(p.product_basis(i, j), {k: ONE}))
    axpy(out, -ONE, t.bracket_sparse({j: ONE}, p.product_basis(i, k)))
    return out


@dataclass(frozen=True)
class Witness:
    indices: tuple[int, ...]  # 0-based basis indices
    residual: SparseRow


@dataclass(frozen=True)
class CpaReport:
    axiom4_ok: bool
    axiom5_ok: bool
    axiom6_ok: bool
    axiom4_witness: Witness | None
    axiom5_witness: Witness | None
    axiom6_witness: Witness | None
    is_complete: bool
    is_central: bool
    gZ_is_zero: bool
    gComm_is_zero: bool

    @property
    def ok(self) -> bool:
        return self.axiom4_ok and self.axiom5_ok and self.axiom6_ok


def _first_symmetry_failure(p: CpaProduct) -> Witness | None:
    n = p.dim
    for i in range(n):
        for j in range(i + 1, n):
            res = symmetry_residual(p, i, j)
            if res:
                return Witness((i, j), res)
    return None


def _first_representation_failure(p: CpaProduct) -> Witness | None:
    # the residual is antisymmetric in (i, j), so i < j finds the least failing triple
    n = p.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                res = representation_residual(p, i, j, k)
                if res:
                    return Witness((i, j, k), res)
    return None


def _first_derivation_failure(p: CpaProduct) -> Witness | None:
    n = p.dim
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                res = derivation_residual(p, i, j, k)
                if res:
                    return Witness((i, j, k), res)
    return None


def is_central(p: CpaProduct) -> bool:
    z = p.algebra.center
    return all(z.member_sparse(v) for v in p.entries().values())


def annihilates(p: CpaProduct, space: Subspace) -> bool:
    """True iff ``g . space = 0``."""
    vecs = space.sparse_basis()
    return all(not p.product_sparse({i: ONE}, v) for i in range(p.dim) for v in vecs)


def verify(p: CpaProduct) -> CpaReport:
    """Check the three axioms on all basis pairs/triples and report the derived flags."""
    w4 = _first_symmetry_failure(p)
    w5 = _first_representation_failure(p)
    w6 = _first_derivation_failure(p)
    return CpaReport(
        axiom4_ok=w4 is None,
        axiom5_ok=w5 is None,
        axiom6_ok=w6 is None,
        axiom4_witness=w4,
        axiom5_witness=w5,
        axiom6_witness=w6,
        is_complete=is_complete(p),
        is_central=is_central(p),
        gZ_is_zero=annihilates(p, p.algebra.center),
        gComm_is_zero=annihilates(p, p.algebra.commutator),
    )


# ---------------------------------------------------------------------------
# completeness, Fitting null component, annihilation
# ---------------------------------------------------------------------------


def _apply_all_left(p: CpaProduct, space: Subspace, by: Sequence[Mapping[int, Fraction]]) -> Subspace:
    vecs = []
    for x in by:
        for v in space.sparse_basis():
            out = p.product_sparse(x, v)
            if out:
                vecs.append(out)
    return Subspace.from_sparse(vecs, p.dim)


def is_complete(p: CpaProduct) -> bool:
    """Joint nilpotency: ``W_0 = g``, ``W_{k+1} = sum_i L(e_i) W_k`` reaches zero."""
    n = p.dim
    basis = [{i: ONE} for i in range(n)]
    w = Subspace.full(n)
    for _ in range(n):
        if w.dim == 0:
            return True
        nxt = _apply_all_left(p, w, basis)
        if nxt == w:
            return False
        w = nxt
    return w.dim == 0


def fitting_null(p: CpaProduct) -> Subspace:
    """Common generalized kernel of the left multiplications by basis vectors."""
    n = p.dim
    g0 = Subspace.full(n)
    for i in range(n):
        power = p.left_matrix(i).power(n)
        g0 = g0.intersection(nullspace(power))
        if g0.dim == 0:
            break
    return g0


@dataclass(frozen=True)
class AnnihilationBound:
    r: int
    holds: bool


def annihilation_bound(p: CpaProduct, a: Subspace, t: int) -> AnnihilationBound:
    """Check ``L(a)^r (g) = 0`` with ``r = ceil((dim a + t - 1) / t)`` for ``a`` inside ``g^t``."""
    if t < 1:
        raise PreconditionError("t must be >= 1")
    lower = p.algebra.series.lower_central
    g_t = lower[t - 1] if t <= len(lower) else lower[-1]
    if not g_t.contains(a):
        raise PreconditionError(f"the subspace is not contained in the lower central term g^{t}")
    if a.dim == 0:
        return AnnihilationBound(0, True)
    r = ceil(Fraction(a.dim + t - 1, t))
    space = Subspace.full(p.dim)
    ops = a.sparse_basis()
    for _ in range(r):
        space = _apply_all_left(p, space, ops)
        if space.dim == 0:
            break
    return AnnihilationBound(r, space.dim == 0)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def generator_product(
    algebra: LieAlgebraTable,
    generators: Sequence[int],
    targets: Sequence[Mapping[int, Fraction]],
    coeffs,
) -> CpaProduct:
    """``x_i . x_j = sum_k coeffs[i][j][k] targets[k]``, all other basis products zero.

    ``generators`` are basis indices; ``coeffs`` is a nested sequence
    (or mapping) symmetric in its first two indices.
    """
    g = len(generators)
    r = len(targets)
    products: dict[tuple[int, int], SparseRow] = {}
    for i in range(g):
        for j in range(g):
            a = [to_rational(coeffs[i][j][k]) for k in range(r)]
            b = [to_rational(coeffs[j][i][k]) for k in range(r)]
            if a != b:
                raise NonSymmetricCoefficients(f"coefficients differ for ({i + 1}, {j + 1}) and ({j + 1}, {i + 1})")
            if i > j:
                continue
            vec: SparseRow = {}
            for c, z in zip(a, targets):
                axpy(vec, c, z)
            gi, gj = sorted((generators[i], generators[j]))
            if vec:
                products[(gi, gj)] = vec
    return CpaProduct(algebra, products)


def construct_central(p: FreeNilpotentPresentation, coeffs) -> CpaProduct:
    """Products of generators landing in the center of F_{g,c}.

    ``coeffs[i][j][k]`` with ``i, j < g`` and ``k`` ranging over the degree-c
    basis elements, which span the center.
    """
    centre = [{idx: ONE} for idx in p.center_indices]
    return generator_product(p.table, list(range(p.generators)), centre, coeffs)


def construct_incomplete(t: LieAlgebraTable) -> CpaProduct:
    """``v . v = v`` for a central ``v`` outside ``[g, g]``, zero on a complementary ideal."""
    if not t.series.is_nilpotent:
        raise PreconditionError("the algebra must be nilpotent")
    comm = t.commutator
    v = next((row for row in t.center.sparse_basis() if not comm.member_sparse(row)), None)
    if v is None:
        raise StemAlgebraError("the center lies in [g, g]; every CPA structure is complete")
    n = t.dim
    ideal = comm.sparse_basis()
    span = comm.sum(Subspace.from_sparse([v], n))
    for k in range(n):
        if span.dim == n:
            break
        if not span.member_sparse({k: ONE}):
            ideal.append({k: ONE})
            span = span.sum(Subspace.coordinate([k], n))
    columns = [v] + ideal
    coords = []
    for i in range(n):
        sol = solve_linear(columns, {i: ONE})
        assert sol is not None
        coords.append(sol[0])
    products: dict[tuple[int, int], SparseRow] = {}
    for i in range(n):
        for j in range(i, n):
            c = coords[i] * coords[j]
            if c:
                products[(i, j)] = {k: c * x for k, x in v.items()}
    return CpaProduct(t, products)


def central_implies_annihilation(p: CpaProduct) -> bool:
    """For a central CPA product on a stem algebra, report ``g.Z(g) = g.[g,g] = 0``."""
    t = p.algebra
    if not t.commutator.contains(t.center):
        raise PreconditionError("the algebra is not stem")
    report = verify(p)
    if not report.ok:
        raise PreconditionError("the product is not a CPA structure")
    if not report.is_central:
        raise PreconditionError("the product is not central")
    return report.gZ_is_zero and report.gComm_is_zero
