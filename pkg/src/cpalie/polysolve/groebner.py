"""Buchberger's algorithm under graded reverse lexicographic order."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import BudgetExceeded
from .poly import (
    Monomial,
    MultiPoly,
    grevlex_key,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Budget:
    """Resource caps for polynomial work.

    ``max_pairs`` counts S-polynomials actually reduced; ``max_degree`` caps
    the degree of new basis elements; ``max_seconds`` is a wall-clock cap
    (``None`` disables it, which keeps results reproducible);
    ``max_witness_points`` caps the partial assignments tried by the
    rational point search.
    """

    max_pairs: int = 1000
    max_degree: int | None = 12
    max_seconds: float | None = None
    max_witness_points: int = 20_000


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class PolyIdeal:
    generators: tuple[MultiPoly, ...]
    nvars: int
    order: str = "grevlex"

    @classmethod
    def of(cls, generators: Sequence[MultiPoly], nvars: int | None = None) -> PolyIdeal:
        gens = tuple(g for g in generators if not g.is_zero())
        if nvars is None:
            if not generators:
                raise ValueError("nvars is required for an empty generator list")
            nvars = generators[0].nvars
        if any(g.nvars != nvars for g in gens):
            raise ValueError("generators live in different rings")
        return cls(gens, nvars)


def _lead(terms: dict[Monomial, Fraction]) -> Monomial:
    return max(terms, key=grevlex_key)


def reduce(f: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    """Full normal form of ``f`` modulo ``basis`` (leading coefficients need not be 1)."""
    leads = [(g.lead_monomial(), g) for g in basis if not g.is_zero()]
    p = dict(f.terms)
    remainder: dict[Monomial, Fraction] = {}
    while p:
        m = _lead(p)
        c = p[m]
        for lm, g in leads:
            q = mono_div(m, lm)
            if q is not None:
                factor = c / g.terms[lm]
                for gm, gc in g.terms.items():
                    mm = mono_mul(gm, q)
                    new = p.get(mm, 0) - factor * gc
                    if new:
                        p[mm] = new
                    else:
                        p.pop(mm, None)
                break
        else:
            remainder[m] = c
            del p[m]
    return MultiPoly._raw(f.nvars, remainder)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    lf, lg = f.lead_monomial(), g.lead_monomial()
    lcm = mono_lcm(lf, lg)
    a = f.mul_term(mono_div(lcm, lf), 1 / f.terms[lf])
    b = g.mul_term(mono_div(lcm, lg), 1 / g.terms[lg])
    return a - b


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple[MultiPoly, ...]
    nvars: int
    pairs_processed: int

    def reduce(self, f: MultiPoly) -> MultiPoly:
        return reduce(f, self.polys)

    def contains(self, f: MultiPoly) -> bool:
        return reduce(f, self.polys).is_zero()

    def is_unit(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.polys)


def buchberger(ideal: PolyIdeal | Sequence[MultiPoly], budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis (grevlex), or :class:`BudgetExceeded`.

    Pairs are processed by the sugar strategy (smallest sugar degree, then
    smallest lcm, then indices); pairs with
    coprime leading monomials and pairs removable by the chain criterion are
    skipped.  The result is monic and sorted by leading monomial.
    """
    if not isinstance(ideal, PolyIdeal):
        ideal = PolyIdeal.of(list(ideal))
    nvars = ideal.nvars
    start = time.monotonic()
    basis: list[MultiPoly] = []
    leads: list[Monomial] = []
    sugar: list[int] = []
    pending: dict[tuple[int, int], tuple] = {}
    processed = 0

    def add(poly: MultiPoly, sug: int) -> bool:
        poly = poly.monic()
        if poly.is_constant():
            basis.clear()
            leads.clear()
            pending.clear()
            basis.append(poly)
            leads.append(())
            return True
        idx = len(basis)
        lm = poly.lead_monomial()
        basis.append(poly)
        leads.append(lm)
        sugar.append(sug)
        for i in range(idx):
            lcm = mono_lcm(leads[i], lm)
            s_ij = max(
                sugar[i] + mono_degree(lcm) - mono_degree(leads[i]),
                sug + mono_degree(lcm) - mono_degree(lm),
            )
            pending[(i, idx)] = (s_ij, grevlex_key(lcm), (i, idx))
        return False

    for gen in sorted(ideal.generators, key=lambda g: grevlex_key(g.lead_monomial())):
        nf = reduce(gen, basis)
        if not nf.is_zero() and add(nf, gen.degree):
            return _finish(basis, nvars, processed)

    while pending:
        key = min(pending.values())
        i, j = key[2]
        del pending[(i, j)]
        lcm = mono_lcm(leads[i], leads[j])
        if mono_coprime(leads[i], leads[j]):
            continue
        if _chain_skip(i, j, lcm, leads, pending):
            continue
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded("S-pair budget exhausted", pairs_processed=processed - 1)
        if budget.max_seconds is not None and time.monotonic() - start > budget.max_seconds:
            raise BudgetExceeded("wall-clock budget exhausted", pairs_processed=processed)
        nf = reduce(s_polynomial(basis[i], basis[j]), basis)
        if nf.is_zero():
            continue
        if budget.max_degree is not None and nf.degree > budget.max_degree:
            raise BudgetExceeded("degree budget exhausted", pairs_processed=processed, degree=nf.degree)
        if add(nf, key[0]):
            break
    return _finish(basis, nvars, processed)


def _chain_skip(i: int, j: int, lcm: Monomial, leads: list[Monomial], pending) -> bool:
    for k, lk in enumerate(leads):
        if k in (i, j) or not mono_divides(lk, lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _finish(basis: list[MultiPoly], nvars: int, processed: int) -> GroebnerBasis:
    if any(p.is_constant() for p in basis):
        return GroebnerBasis((MultiPoly.constant(nvars, 1),), nvars, processed)
    polys = sorted(basis, key=lambda p: grevlex_key(p.lead_monomial()))
    minimal: list[MultiPoly] = []
    for idx, p in enumerate(polys):
        lm = p.lead_monomial()
        redundant = False
        for jdx, q in enumerate(polys):
            if jdx == idx:
                continue
            lq = q.lead_monomial()
            if mono_divides(lq, lm) and (lq != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append(p)
    reduced = []
    for idx, p in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        lm = p.lead_monomial()
        tail = MultiPoly._raw(nvars, {m: c for m, c in p.terms.items() if m != lm})
        r = reduce(tail, others)
        reduced.append((MultiPoly._raw(nvars, {lm: p.terms[lm]}) + r).monic())
    reduced.sort(key=lambda p: grevlex_key(p.lead_monomial()))
    return GroebnerBasis(tuple(reduced), nvars, processed)


def radical_member(f: MultiPoly, ideal: PolyIdeal | Sequence[MultiPoly], budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Decide ``f`` in the radical of the ideal via ``1 in I + (1 - y f)``."""
    if not isinstance(ideal, PolyIdeal):
        ideal = PolyIdeal.of(list(ideal), f.nvars)
    n = ideal.nvars
    if f.nvars != n:
        raise ValueError("f and the ideal live in different rings")
    if f.is_zero():
        return Verdict.YES
    y = MultiPoly.variable(n + 1, n)
    gens = [g.extend(n + 1) for g in ideal.generators]
    gens.append(MultiPoly.constant(n + 1, 1) - y * f.extend(n + 1))
    try:
        gb = buchberger(PolyIdeal(tuple(gens), n + 1), budget)
    except BudgetExceeded:
        return Verdict.UNKNOWN
    return Verdict.YES if gb.is_unit() else Verdict.NO

