"""Solving for all CPA structures on a given Lie algebra.

Unknowns are the structure constants ``t[i][j][k]`` (``i <= j``) of the
product, ordered lexicographically by ``(i, j, k)``.  The derivation axiom is
linear in them and is eliminated first by an exact nullspace computation,
``t = P s``.  The representation axiom is quadratic; after substitution it
becomes an ideal in the free parameters ``s``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from ..cpa import CpaProduct, annihilates, is_central
from ..errors import BudgetExceeded
from ..exact import ONE, Matrix, SparseRow, Subspace, axpy, format_rational, nullspace_sparse, rref_sparse
from ..liealg import LieAlgebraTable
from .groebner import DEFAULT_BUDGET, Budget, GroebnerBasis, PolyIdeal, Verdict, buchberger, radical_member
from .poly import Monomial, MultiPoly, linear_form_product, sum_terms

Unknown = tuple[int, int, int]


@dataclass
class QuadraticConstraint:
    """``sum linear[u] t_u + sum quadratic[(u, v)] t_u t_v`` over unknown indices."""

    linear: dict[int, Fraction] = field(default_factory=dict)
    quadratic: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def add_linear(self, u: int, c: Fraction) -> None:
        new = self.linear.get(u, 0) + c
        if new:
            self.linear[u] = new
        else:
            self.linear.pop(u, None)

    def add_quadratic(self, u: int, v: int, c: Fraction) -> None:
        key = (u, v) if u <= v else (v, u)
        new = self.quadratic.get(key, 0) + c
        if new:
            self.quadratic[key] = new
        else:
            self.quadratic.pop(key, None)

    def is_zero(self) -> bool:
        return not self.linear and not self.quadratic

    def to_poly(self, nvars: int) -> MultiPoly:
        terms: dict[Monomial, Fraction] = {((u, 1),): c for u, c in self.linear.items()}
        for (u, v), c in self.quadratic.items():
            m = ((u, 2),) if u == v else ((u, 1), (v, 1))
            terms[m] = terms.get(m, 0) + c
        return MultiPoly(nvars, terms)


@dataclass
class Constraints:
    unknowns: list[Unknown]
    linear_rows: list[SparseRow]
    quadratic_constraints: list[QuadraticConstraint]

    @property
    def linear(self) -> Matrix:
        return Matrix.from_sparse(self.linear_rows, len(self.unknowns))

    @property
    def quadratic(self) -> list[MultiPoly]:
        n = len(self.unknowns)
        return [q.to_poly(n) for q in self.quadratic_constraints]


def unknown_index(n: int) -> dict[Unknown, int]:
    out = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                out[(i, j, k)] = len(out)
    return out


def assemble_constraints(t: LieAlgebraTable) -> Constraints:
    """Linear rows from the derivation axiom, quadratic constraints from the representation axiom."""
    n = t.dim
    index = unknown_index(n)

    def u(i: int, j: int, k: int) -> int:
        return index[(i, j, k) if i <= j else (j, i, k)]

    linear: list[SparseRow] = []
    # e_i.[e_j,e_k] - [e_i.e_j, e_k] - [e_j, e_i.e_k] = 0, coordinate m
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                rows: dict[int, SparseRow] = {}
                for l, c in t.bracket_basis(j, k).items():
                    for m in range(n):
                        axpy(rows.setdefault(m, {}), c, {u(i, l, m): ONE})
                for p in range(n):
                    for m, c in t.bracket_basis(p, k).items():
                        axpy(rows.setdefault(m, {}), -c, {u(i, j, p): ONE})
                    for m, c in t.bracket_basis(j, p).items():
                        axpy(rows.setdefault(m, {}), -c, {u(i, k, p): ONE})
                linear.extend(r for r in rows.values() if r)

    quadratic: list[QuadraticConstraint] = []
    # [e_i,e_j].e_k - e_i.(e_j.e_k) + e_j.(e_i.e_k) = 0, coordinate m
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for m in range(n):
                    q = QuadraticConstraint()
                    for l, c in t.bracket_basis(i, j).items():
                        q.add_linear(u(l, k, m), c)
                    for p in range(n):
                        q.add_quadratic(u(j, k, p), u(i, p, m), -ONE)
                        q.add_quadratic(u(i, k, p), u(j, p, m), ONE)
                    if not q.is_zero():
                        quadratic.append(q)
    return Constraints(list(index), linear, quadratic)


# ---------------------------------------------------------------------------
# solution variety
# ---------------------------------------------------------------------------


@dataclass
class SolutionVariety:
    """All CPA products on ``algebra``: ``t = P s`` subject to ``quadratic(s) = 0``.

    ``forms[u]`` is the linear form in ``s`` giving unknown ``u``.
    """

    algebra: LieAlgebraTable
    unknowns: list[Unknown]
    parameters: list[SparseRow]  # nullspace basis vectors over the unknowns
    forms: list[SparseRow]
    quadratic: list[MultiPoly]
    status: str  # "linear_only" | "groebner_done" | "budget_exceeded"
    groebner: GroebnerBasis | None = None
    pairs_processed: int = 0

    @property
    def nparams(self) -> int:
        return len(self.parameters)

    @property
    def ambient_unknowns(self) -> int:
        return len(self.unknowns)

    @property
    def ideal(self) -> PolyIdeal:
        return PolyIdeal(tuple(self.quadratic), self.nparams)

    def parametrization(self) -> Matrix:
        """``P`` with one row per unknown and one column per parameter."""
        return Matrix.from_sparse(self.forms, self.nparams)

    def tensor_values(self, point: Sequence) -> SparseRow:
        values: SparseRow = {}
        for idx, s in enumerate(point):
            if s:
                axpy(values, Fraction(s), self.parameters[idx])
        return values

    def product_at(self, point: Sequence) -> CpaProduct:
        products: dict[tuple[int, int], SparseRow] = {}
        for idx, c in self.tensor_values(point).items():
            i, j, k = self.unknowns[idx]
            products.setdefault((i, j), {})[k] = c
        return CpaProduct(self.algebra, products)

    def satisfies(self, point: Sequence) -> bool:
        return all(q.evaluate(point) == 0 for q in self.quadratic)

    def to_json(self) -> dict:
        return {
            "unknowns": [[i + 1, j + 1, k + 1] for i, j, k in self.unknowns],
            "free_parameters": self.nparams,
            "parametrization": self.parametrization().to_json() if self.nparams else [],
            "quadratic": [q.to_str("s") for q in self.quadratic],
            "status": self.status,
        }


def _substitute(q: QuadraticConstraint, forms: list[SparseRow], nparams: int) -> MultiPoly:
    parts = []
    lin: SparseRow = {}
    for u, c in q.linear.items():
        axpy(lin, c, forms[u])
    if lin:
        parts.append({((p, 1),): c for p, c in lin.items()})
    for (u, v), c in q.quadratic.items():
        a, b = forms[u], forms[v]
        if a and b:
            prod = linear_form_product(nparams, a, b)
            parts.append({m: c * x for m, x in prod.items()})
    return MultiPoly(nparams, sum_terms(parts))


def substitute_linear(poly: MultiPoly, images: list[SparseRow], nvars: int) -> MultiPoly:
    """``poly`` with each variable ``x`` replaced by the linear form ``images[x]``."""
    cache: dict[int, MultiPoly] = {}
    total: dict[Monomial, Fraction] = {}
    for m, c in poly.terms.items():
        term = MultiPoly.constant(nvars, c)
        for x, e in m:
            if x not in cache:
                cache[x] = MultiPoly.linear(nvars, images[x])
            term = term * cache[x] ** e
        for mm, cc in term.terms.items():
            new = total.get(mm, 0) + cc
            if new:
                total[mm] = new
            else:
                total.pop(mm, None)
    return MultiPoly._raw(nvars, total)


def _dedupe(polys) -> list[MultiPoly]:
    seen: set[MultiPoly] = set()
    out = []
    for poly in polys:
        if poly.is_zero():
            continue
        poly = poly.monic()
        if poly not in seen:
            seen.add(poly)
            out.append(poly)
    return out


def solve_cpa(t: LieAlgebraTable, budget: Budget = DEFAULT_BUDGET, *, groebner: bool = True) -> SolutionVariety:
    """Linear elimination followed by a Groebner basis of the remaining quadratic ideal.

    Linear polynomials appearing in the reduced basis vanish on the whole
    variety, so they are folded back into the parametrization and the basis
    is recomputed on the smaller parameter space until none remain.
    """
    cons = assemble_constraints(t)
    nunk = len(cons.unknowns)
    params = nullspace_sparse(cons.linear_rows, nunk).sparse_basis()
    forms = _forms(params, nunk)
    quadratic = _dedupe(_substitute(q, forms, len(params)) for q in cons.quadratic_constraints)
    variety = SolutionVariety(t, cons.unknowns, params, forms, quadratic, "linear_only")
    if not groebner:
        if quadratic:
            variety.status = "budget_exceeded"
        return variety
    spent = 0
    while variety.quadratic:
        try:
            gb = buchberger(PolyIdeal(tuple(variety.quadratic), variety.nparams), budget)
        except BudgetExceeded as exc:
            variety.status = "budget_exceeded"
            variety.pairs_processed = spent + int(exc.spent.get("pairs_processed", 0))
            return variety
        spent += gb.pairs_processed
        linear = [p for p in gb.polys if p.degree == 1 and () not in p.terms]
        if not linear:
            variety.status = "groebner_done"
            variety.groebner = gb
            break
        variety = _restrict_to(variety, linear, gb)
    variety.pairs_processed = spent
    return variety


def _forms(params: list[SparseRow], nunk: int) -> list[SparseRow]:
    forms: list[SparseRow] = [dict() for _ in range(nunk)]
    for p, vec in enumerate(params):
        for u, c in vec.items():
            forms[u][p] = c
    return forms


def _restrict_to(v: SolutionVariety, linear: list[MultiPoly], gb: GroebnerBasis) -> SolutionVariety:
    """Pass to the common kernel of homogeneous linear polynomials of the ideal."""
    rows = [{x: c for ((x, _),), c in p.terms.items()} for p in linear]
    kernel = nullspace_sparse(rows, v.nparams).sparse_basis()
    nnew = len(kernel)
    images: list[SparseRow] = [dict() for _ in range(v.nparams)]
    for r, vec in enumerate(kernel):
        for x, c in vec.items():
            images[x][r] = c
    params = []
    for vec in kernel:
        combined: SparseRow = {}
        for x, c in vec.items():
            axpy(combined, c, v.parameters[x])
        params.append(combined)
    polys = [p for p in gb.polys if p.degree > 1]
    quadratic = _dedupe(substitute_linear(p, images, nnew) for p in polys)
    return SolutionVariety(v.algebra, v.unknowns, params, _forms(params, len(v.unknowns)), quadratic, "groebner_done")


# ---------------------------------------------------------------------------
# centrality of the whole variety
# ---------------------------------------------------------------------------


@dataclass
class CentralityResult:
    verdict: Verdict
    witness: CpaProduct | None = None
    point: list[Fraction] | None = None
    certificate: str = ""  # how the verdict was reached
    obstructions: list[MultiPoly] = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "certificate": self.certificate}
        if self.point is not None:
            out["point"] = [format_rational(x) for x in self.point]
        if self.witness is not None:
            out["witness_products"] = product_entries_json(self.witness)
        return out


def product_entries_json(p: CpaProduct) -> list:
    """``[[i, j, [[k, "p/q"], ...]], ...]`` for ``i <= j``, 1-based."""
    out = []
    for (i, j), vec in sorted(p.entries().items()):
        if i <= j:
            out.append([i + 1, j + 1, [[k + 1, format_rational(c)] for k, c in sorted(vec.items())]])
    return out


def noncentral_forms(v: SolutionVariety, center: Subspace) -> list[MultiPoly]:
    """A basis of the linear forms whose common zero set is the central products."""
    functionals = center.annihilator().sparse_basis()
    n = v.algebra.dim
    index = {u: idx for idx, u in enumerate(v.unknowns)}
    rows: list[SparseRow] = []
    for i in range(n):
        for j in range(i, n):
            for phi in functionals:
                form: SparseRow = {}
                for k, c in phi.items():
                    axpy(form, c, v.forms[index[(i, j, k)]])
                if form:
                    rows.append(form)
    return [MultiPoly.linear(v.nparams, row) for _, row in rref_sparse(rows)]


def variety_is_central(
    v: SolutionVariety,
    center: Subspace | None = None,
    budget: Budget = DEFAULT_BUDGET,
    *,
    prefer: Callable[[CpaProduct], bool] | None = None,
) -> CentralityResult:
    """Are all points of the variety (over the algebraic closure) central products?

    Order of attempts: identically central parametrization; membership of
    the non-central forms in the ideal itself; a rational non-central
    point (returned as witness, verified exactly); radical membership of
    every non-central linear form.  ``prefer`` ranks witnesses found at the
    same search level; by default a witness with ``g.Z != 0`` wins.
    """
    if center is None:
        center = v.algebra.center
    if prefer is None:
        prefer = lambda prod: not annihilates(prod, center)  # noqa: E731
    forms = noncentral_forms(v, center)
    if not forms:
        return CentralityResult(Verdict.YES, certificate="linear")
    if v.groebner is not None and all(v.groebner.contains(f) for f in forms):
        return CentralityResult(Verdict.YES, certificate="ideal membership", obstructions=forms)
    found = find_point(v, lambda prod: not is_central(prod), budget, prefer=prefer)
    if found is not None:
        point, prod = found
        return CentralityResult(Verdict.NO, prod, point, "rational witness", forms)
    if v.status == "budget_exceeded" and v.quadratic:
        # the ideal itself was out of reach; radical tests would be larger still
        return CentralityResult(Verdict.UNKNOWN, certificate="groebner budget", obstructions=forms)
    base = list(v.groebner.polys) if v.groebner is not None else []
    verdicts = []
    for f in forms:
        if base and v.groebner.contains(f):
            verdicts.append(Verdict.YES)
            continue
        verdicts.append(radical_member(f, PolyIdeal(tuple(base) or tuple(v.quadratic), v.nparams), budget))
        if verdicts[-1] is not Verdict.YES:
            break
    if all(x is Verdict.YES for x in verdicts):
        return CentralityResult(Verdict.YES, certificate="radical membership", obstructions=forms)
    if verdicts[-1] is Verdict.NO:
        return CentralityResult(Verdict.NO, certificate="radical non-membership", obstructions=forms)
    return CentralityResult(Verdict.UNKNOWN, certificate="radical budget", obstructions=forms)


# ---------------------------------------------------------------------------
# rational point search
# ---------------------------------------------------------------------------

_HEIGHTS = [Fraction(x) for x in (1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-1, 2)]


def _restrict(polys: list[MultiPoly], support: tuple[int, ...]) -> list[list[tuple[Monomial, Fraction]]]:
    sup = set(support)
    out = []
    for q in polys:
        terms = [(m, c) for m, c in q.terms.items() if all(x in sup for x, _ in m)]
        if terms:
            out.append(terms)
    return out


def _eval_terms(terms: list[tuple[Monomial, Fraction]], values: dict[int, Fraction]) -> Fraction:
    total = Fraction(0)
    for m, c in terms:
        val = c
        for x, e in m:
            val *= values[x] ** e
        total += val
    return total


def _solve_last(restricted, values: dict[int, Fraction], last: int) -> Iterator[Fraction]:
    """Nonzero values of variable ``last`` making every restricted polynomial vanish."""
    candidates: list[Fraction] | None = None
    for terms in restricted:
        coeffs = [Fraction(0)] * 3  # degree <= 2 in any single variable
        for m, c in terms:
            val = c
            power = 0
            for x, e in m:
                if x == last:
                    power = e
                else:
                    val *= values[x] ** e
            if power > 2:
                return
            coeffs[power] += val
        c0, c1, c2 = coeffs
        if not (c0 or c1 or c2):
            continue
        roots = _rational_roots(c0, c1, c2)
        candidates = roots if candidates is None else [r for r in candidates if r in roots]
        if not candidates:
            return
    if candidates is None:
        yield from _HEIGHTS
        return
    for r in candidates:
        if r and all(_eval_terms(terms, {**values, last: r}) == 0 for terms in restricted):
            yield r


def _rational_roots(c0: Fraction, c1: Fraction, c2: Fraction) -> list[Fraction]:
    if c2 == 0:
        if c1 == 0:
            return []
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    num, den = disc.numerator, disc.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        return []
    root = Fraction(rn, rd)
    return sorted({(-c1 + root) / (2 * c2), (-c1 - root) / (2 * c2)})


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def find_point(
    v: SolutionVariety,
    accept: Callable[[CpaProduct], bool],
    budget: Budget = DEFAULT_BUDGET,
    *,
    max_support: int = 4,
    prefer: Callable[[CpaProduct], bool] | None = None,
) -> tuple[list[Fraction], CpaProduct] | None:
    """Search rational points of the variety with small support and height.

    Supports grow from one parameter upward; all but the last coordinate
    run over small heights and the last is solved for exactly.  Every
    candidate is re-checked against the full quadratic system, and the
    resulting product must satisfy ``accept``.  Within one support size a
    candidate satisfying ``prefer`` wins over earlier ones.
    """
    nparams = v.nparams
    checked = 0
    for size in range(1, min(max_support, nparams) + 1):
        fallback = None
        for support in itertools.combinations(range(nparams), size):
            restricted = _restrict(v.quadratic, support)
            for head in itertools.product(_HEIGHTS, repeat=size - 1):
                checked += 1
                if checked > budget.max_witness_points:
                    return fallback
                values = dict(zip(support[:-1], head))
                for last in _solve_last(restricted, values, support[-1]):
                    point = [Fraction(0)] * nparams
                    for x, val in values.items():
                        point[x] = val
                    point[support[-1]] = last
                    if not v.satisfies(point):
                        continue
                    prod = v.product_at(point)
                    if not accept(prod):
                        continue
                    if prefer is None or prefer(prod):
                        return point, prod
                    if fallback is None:
                        fallback = (point, prod)
        if fallback is not None:
            return fallback
    return None
