"""Linear equation systems over a nilpotent Lie algebra.

The pair system for a generating pair ``(x, y)`` asks for ``u, v, w`` in a
domain (by default ``[g, g]``) with

    [x, u] + [y, v] = 0,    [x, v] + [y, w] = 0.

Property F holds when every solution, for every generating pair, is
central.  The grid system is the analogue for three or more generators:
``[u_ij, x_k] + [x_j, u_ik] = 0`` with ``u`` symmetric in its indices.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PreconditionError
from .exact import SparseRow, Subspace, axpy, dense_from_sparse, format_rational, nullspace_sparse, to_rational
from .freelie import build_free_nilpotent
from .liealg import LieAlgebraTable

Vector = Mapping[int, Fraction] | Sequence


class NotGeneratingError(PreconditionError):
    pass


class ConsistencyError(AssertionError):
    """A computed verdict contradicts the dimension-count obstruction."""


def _sparse(t: LieAlgebraTable, x: Vector) -> SparseRow:
    if isinstance(x, Mapping):
        out = {int(k): to_rational(v) for k, v in x.items() if v}
        if any(not 0 <= k < t.dim for k in out):
            raise ValueError(f"vector index outside dimension {t.dim}")
        return out
    if len(x) != t.dim:
        raise ValueError(f"vector has length {len(x)}, expected {t.dim}")
    return {i: to_rational(v) for i, v in enumerate(x) if v}


def _ad(t: LieAlgebraTable, x: SparseRow, v: SparseRow) -> SparseRow:
    return t.bracket_sparse(x, v)


def generates(t: LieAlgebraTable, vectors: Sequence[SparseRow]) -> bool:
    """Do the vectors span ``g`` modulo ``[g, g]`` (hence generate ``g`` when nilpotent)?"""
    return (Subspace.from_sparse(vectors, t.dim) + t.commutator).dim == t.dim


def vector_json(v: SparseRow, n: int) -> list[str]:
    return [format_rational(c) for c in dense_from_sparse(v, n)]


# ---------------------------------------------------------------------------
# pair system
# ---------------------------------------------------------------------------


@dataclass
class PairSystem:
    """Solutions are stacked ``(u, v, w)`` in ambient coordinates of ``g^3``."""

    algebra: LieAlgebraTable
    x: SparseRow
    y: SparseRow
    domain: Subspace
    solution: Subspace
    rows: int
    unknowns: int

    def split(self, vec: Mapping[int, Fraction]) -> tuple[SparseRow, SparseRow, SparseRow]:
        n = self.algebra.dim
        parts: tuple[SparseRow, SparseRow, SparseRow] = ({}, {}, {})
        for k, c in vec.items():
            parts[k // n][k % n] = c
        return parts

    def residual(self, vec: Mapping[int, Fraction]) -> tuple[SparseRow, SparseRow]:
        u, v, w = self.split(vec)
        t = self.algebra
        first = _ad(t, self.x, u)
        axpy(first, Fraction(1), _ad(t, self.y, v))
        second = _ad(t, self.x, v)
        axpy(second, Fraction(1), _ad(t, self.y, w))
        return first, second

    def noncentral_solution(self) -> tuple[SparseRow, SparseRow, SparseRow] | None:
        """First solution basis vector with a component outside the center."""
        center = self.algebra.center
        for vec in self.solution.sparse_basis():
            parts = self.split(vec)
            if not all(center.member_sparse(p) for p in parts):
                return parts
        return None

    @property
    def is_central(self) -> bool:
        return self.noncentral_solution() is None


def solve_pair(t: LieAlgebraTable, x: Vector, y: Vector, domain: Subspace | None = None) -> PairSystem:
    """Solve the pair system with ``u, v, w`` restricted to ``domain``."""
    xs, ys = _sparse(t, x), _sparse(t, y)
    if t.dim - t.commutator.dim != 2:
        raise PreconditionError("the pair system needs dim g/[g,g] = 2")
    if not generates(t, [xs, ys]):
        raise NotGeneratingError("x and y do not generate the algebra modulo [g,g]")
    if domain is None:
        domain = t.commutator
    n = t.dim
    basis = domain.sparse_basis()
    d = len(basis)
    ax = [_ad(t, xs, b) for b in basis]
    ay = [_ad(t, ys, b) for b in basis]
    # columns of the operator on domain coordinates (a | b | c)
    columns: list[SparseRow] = []
    columns.extend(dict(col) for col in ax)
    for i in range(d):
        col = dict(ay[i])
        col.update({n + k: c for k, c in ax[i].items()})
        columns.append(col)
    columns.extend({n + k: c for k, c in col.items()} for col in ay)
    rows: dict[int, SparseRow] = {}
    for j, col in enumerate(columns):
        for r, c in col.items():
            rows.setdefault(r, {})[j] = c
    kernel = nullspace_sparse(rows.values(), 3 * d)
    ambient = []
    for vec in kernel.sparse_basis():
        out: SparseRow = {}
        for j, c in vec.items():
            block, i = divmod(j, d)
            axpy(out, c, {block * n + k: b for k, b in basis[i].items()})
        ambient.append(out)
    return PairSystem(t, xs, ys, domain, Subspace.from_sparse(ambient, 3 * n), 2 * n, 3 * d)


# ---------------------------------------------------------------------------
# property F
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    z_ratio: Fraction
    obstructed: bool


def _two_generated_nilpotent(t: LieAlgebraTable) -> None:
    if not t.series.is_nilpotent:
        raise PreconditionError("the algebra is not nilpotent")
    if t.dim - t.commutator.dim != 2:
        raise PreconditionError("the algebra is not 2-generated (dim g/[g,g] != 2)")


def center_ratio_bound(t: LieAlgebraTable) -> BoundReport:
    """``z = dim Z / dim g`` and whether it falls below 1/3.

    An obstructed algebra has more pair-system solutions than central
    triples can account for, so it never has property F.
    """
    _two_generated_nilpotent(t)
    z = Fraction(t.center.dim, t.dim)
    return BoundReport(z, z < Fraction(1, 3))


def canonical_pair(t: LieAlgebraTable) -> tuple[SparseRow, SparseRow]:
    """Basis vectors at the non-pivot coordinates of ``[g, g]``."""
    free = t.commutator.complement_coordinates()
    if len(free) != 2:
        raise PreconditionError("the algebra is not 2-generated (dim g/[g,g] != 2)")
    return {free[0]: Fraction(1)}, {free[1]: Fraction(1)}


def random_pairs(t: LieAlgebraTable, count: int, seed: int, height: int = 3) -> list[tuple[SparseRow, SparseRow]]:
    """Seeded generating pairs with integer coordinates in ``[-height, height]``."""
    rng = random.Random(seed)
    pairs = []
    attempts = 0
    while len(pairs) < count:
        attempts += 1
        if attempts > 100 * (count + 1):
            raise RuntimeError("could not sample generating pairs")
        x = {i: Fraction(c) for i in range(t.dim) if (c := rng.randint(-height, height))}
        y = {i: Fraction(c) for i in range(t.dim) if (c := rng.randint(-height, height))}
        if generates(t, [x, y]):
            pairs.append((x, y))
    return pairs


@dataclass
class PropertyFReport:
    verdict: str  # "true" | "false" | "true_for_tested_pairs"
    z_ratio: Fraction
    obstructed: bool
    pairs_tested: list[tuple[SparseRow, SparseRow]]
    solution_dims: list[int]
    witness_pair: tuple[SparseRow, SparseRow] | None = None
    witness: tuple[SparseRow, SparseRow, SparseRow] | None = None
    system: PairSystem | None = field(default=None, repr=False)

    def to_json(self, n: int) -> dict:
        out: dict = {
            "verdict": self.verdict,
            "z_ratio": format_rational(self.z_ratio),
            "obstructed": self.obstructed,
            "pairs_tested": len(self.pairs_tested),
            "solution_dims": self.solution_dims,
        }
        if self.witness is not None:
            x, y = self.witness_pair
            u, v, w = self.witness
            out["witness"] = {
                "x": vector_json(x, n),
                "y": vector_json(y, n),
                "u": vector_json(u, n),
                "v": vector_json(v, n),
                "w": vector_json(w, n),
            }
        return out


def has_property_f(
    t: LieAlgebraTable,
    pairs: Sequence[tuple[Vector, Vector]] | None = None,
    *,
    samples: int = 25,
    seed: int = 0,
) -> PropertyFReport:
    """Check property F on the canonical pair and, unless the algebra is free, on sampled pairs.

    For a free-nilpotent algebra on two generators every generating pair is
    an automorphic image of the canonical one, so one pair decides the
    question; otherwise a clean run only certifies the tested pairs.
    """
    bound = center_ratio_bound(t)
    free = t.free_type is not None and t.free_type[0] == 2
    if pairs is None:
        tested = [canonical_pair(t)]
        if not free:
            tested += random_pairs(t, samples, seed)
    else:
        tested = [(_sparse(t, x), _sparse(t, y)) for x, y in pairs]
        free = False
    dims = []
    report = None
    system = None
    for x, y in tested:
        system = solve_pair(t, x, y)
        dims.append(system.solution.dim)
        bad = system.noncentral_solution()
        if bad is not None:
            report = PropertyFReport(
                "false", bound.z_ratio, bound.obstructed, tested[: len(dims)], dims, (x, y), bad, system
            )
            break
    if report is None:
        verdict = "true" if free else "true_for_tested_pairs"
        report = PropertyFReport(verdict, bound.z_ratio, bound.obstructed, tested, dims, system=system)
    if bound.obstructed and report.verdict != "false":
        raise ConsistencyError(
            f"z = {format_rational(bound.z_ratio)} < 1/3 but property F reported {report.verdict!r}"
        )
    return report


# ---------------------------------------------------------------------------
# grid system
# ---------------------------------------------------------------------------


@dataclass
class GridSystem:
    """Unknowns ``u_ij`` (``i <= j``) in ``domain``; solutions stacked in ambient coordinates."""

    algebra: LieAlgebraTable
    generators: list[SparseRow]
    domain: Subspace
    pairs: list[tuple[int, int]]
    solution: Subspace
    central_space: Subspace
    rows: int
    unknowns: int

    @property
    def equals_central(self) -> bool:
        return self.solution == self.central_space

    @property
    def all_central(self) -> bool:
        return self.central_space.contains(self.solution)

    def split(self, vec: Mapping[int, Fraction]) -> dict[tuple[int, int], SparseRow]:
        n = self.algebra.dim
        out: dict[tuple[int, int], SparseRow] = {p: {} for p in self.pairs}
        for k, c in vec.items():
            out[self.pairs[k // n]][k % n] = c
        return out

    def residual(self, vec: Mapping[int, Fraction]) -> dict[tuple[int, int, int], SparseRow]:
        t = self.algebra
        u = self.split(vec)
        g = len(self.generators)
        out = {}
        for i in range(g):
            for j in range(g):
                for k in range(g):
                    uij = u[(min(i, j), max(i, j))]
                    uik = u[(min(i, k), max(i, k))]
                    r = t.bracket_sparse(uij, self.generators[k])
                    axpy(r, Fraction(1), t.bracket_sparse(self.generators[j], uik))
                    out[(i, j, k)] = r
        return out


def solve_grid(t: LieAlgebraTable, generators: Sequence[Vector] | None = None) -> GridSystem:
    """Solve ``[u_ij, x_k] + [x_j, u_ik] = 0`` over ``[g, g]`` for all index triples."""
    if generators is None:
        gens = [{k: Fraction(1)} for k in t.commutator.complement_coordinates()]
    else:
        gens = [_sparse(t, x) for x in generators]
    if len(gens) < 3:
        raise PreconditionError("the grid system needs at least three generators")
    if not generates(t, gens):
        raise NotGeneratingError("the vectors do not generate the algebra modulo [g,g]")
    g = len(gens)
    n = t.dim
    domain = t.commutator
    basis = domain.sparse_basis()
    d = len(basis)
    pairs = [(i, j) for i in range(g) for j in range(i, g)]
    slot = {p: s for s, p in enumerate(pairs)}

    def var(i: int, j: int) -> int:
        return slot[(min(i, j), max(i, j))]

    # bracket of each domain basis vector with each generator
    right = [[t.bracket_sparse(b, x) for x in gens] for b in basis]  # [b, x_k]
    rows: list[SparseRow] = []
    for i in range(g):
        for j in range(g):
            for k in range(g):
                eq: dict[int, SparseRow] = {}
                for a in range(d):
                    for m, c in right[a][k].items():
                        axpy(eq.setdefault(m, {}), c, {var(i, j) * d + a: Fraction(1)})
                    # [x_j, b] = -[b, x_j]
                    for m, c in right[a][j].items():
                        axpy(eq.setdefault(m, {}), -c, {var(i, k) * d + a: Fraction(1)})
                rows.extend(r for r in eq.values() if r)
    kernel = nullspace_sparse(rows, len(pairs) * d)
    ambient = []
    for vec in kernel.sparse_basis():
        out: SparseRow = {}
        for col, c in vec.items():
            s, a = divmod(col, d)
            axpy(out, c, {s * n + k: b for k, b in basis[a].items()})
        ambient.append(out)
    solution = Subspace.from_sparse(ambient, len(pairs) * n)
    zc = t.center & domain
    central = Subspace.from_sparse(
        [{s * n + k: c for k, c in z.items()} for s in range(len(pairs)) for z in zc.sparse_basis()],
        len(pairs) * n,
    )
    return GridSystem(t, gens, domain, pairs, solution, central, len(rows), len(pairs) * d)


# ---------------------------------------------------------------------------
# scan over classes of the free-nilpotent algebras on two generators
# ---------------------------------------------------------------------------

INDUCTION_READING = (
    "The scan supports an induction on the class c. Assume every CPA product on F_{2,c-1} is central. "
    "For a CPA product on F_{2,c}, the products of the two generators are then constrained by a linear "
    "system of the same shape as the pair system for the canonical pair. When that system has only "
    "central solutions, the products of generators are central, and the derivation identity carries "
    "this to all of g.g. Property F for class c is therefore the inductive step, and the direct solve "
    "of all CPA products at class 3 is the base case."
)


@dataclass
class ClassReport:
    c: int
    dim: int
    center_dim: int
    z_ratio: Fraction
    system_rows: int
    system_unknowns: int
    solution_dim: int
    property_f: str
    central: bool
    seconds: float
    base_case: str | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "c": self.c,
            "dim": self.dim,
            "center_dim": self.center_dim,
            "z_ratio": format_rational(self.z_ratio),
            "system": [self.system_rows, self.system_unknowns],
            "solution_dim": self.solution_dim,
            "property_f": self.property_f,
            "central": self.central,
        }
        if self.base_case is not None:
            out["base_case"] = self.base_case
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class ConjectureReport:
    classes: list[ClassReport]
    reading: str = INDUCTION_READING

    @property
    def passed(self) -> bool:
        return all(r.central and (r.base_case in (None, "yes")) for r in self.classes)


def conjecture_scan(c_max: int, *, budget=None, base_case: bool = True) -> ConjectureReport:
    """Property F on F_{2,c} for ``3 <= c <= c_max``, plus the full solve at ``c = 3``."""
    if c_max < 3:
        raise PreconditionError("the scan starts at class 3; c_max must be at least 3")
    from .polysolve.groebner import DEFAULT_BUDGET
    from .polysolve.solve import solve_cpa, variety_is_central

    classes = []
    for c in range(3, c_max + 1):
        start = time.perf_counter()
        t = build_free_nilpotent(2, c).table
        report = has_property_f(t)
        base = None
        if c == 3 and base_case:
            variety = solve_cpa(t, budget or DEFAULT_BUDGET)
            base = variety_is_central(variety, t.center, budget or DEFAULT_BUDGET).verdict.value
        system = report.system
        classes.append(
            ClassReport(
                c=c,
                dim=t.dim,
                center_dim=t.center.dim,
                z_ratio=report.z_ratio,
                system_rows=system.rows,
                system_unknowns=system.unknowns,
                solution_dim=report.solution_dims[0],
                property_f=report.verdict,
                central=report.verdict == "true",
                seconds=time.perf_counter() - start,
                base_case=base,
            )
        )
    return ConjectureReport(classes)
