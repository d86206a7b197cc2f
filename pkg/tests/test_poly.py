import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpalie.errors import BudgetExceeded
from cpalie.polysolve import Budget, MultiPoly, PolyIdeal, Verdict, buchberger, radical_member, reduce
from cpalie.polysolve.groebner import s_polynomial
from cpalie.polysolve.poly import grevlex_key, mono_mul


def P(text, n=2):
    return MultiPoly.parse(text, n)


def polys(nvars=3, max_terms=3, max_deg=2):
    mono = st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).map(tuple)
    term = st.tuples(mono, st.integers(-3, 3))
    return st.lists(term, min_size=1, max_size=max_terms).map(
        lambda ts: MultiPoly.from_exponents(nvars, {m: c for m, c in ts})
    )


def is_groebner(gb) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    return all(reduce(s_polynomial(f, g), gb.polys).is_zero() for f, g in itertools.combinations(gb.polys, 2))


def test_text_round_trip():
    for text in ["3/2*s1^2*s3 - s2 + 1", "-s1*s2", "0", "7"]:
        assert MultiPoly.parse(text, 3).to_str() == text


def test_grevlex_order():
    # s1^2 > s1*s2 > s2^2 > s1 > s2 > 1 with s1 > s2
    monos = [((0, 2),), ((0, 1), (1, 1)), ((1, 2),), ((0, 1),), ((1, 1),), ()]
    assert sorted(monos, key=grevlex_key, reverse=True) == monos
    # degree 3 in three variables: x1^2 x2 > x1 x2^2 > x1^2 x3
    a, b, c = ((0, 2), (1, 1)), ((0, 1), (1, 2)), ((0, 2), (2, 1))
    assert grevlex_key(a) > grevlex_key(b) > grevlex_key(c)


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == 0
    point = [Fraction(2), Fraction(-1), Fraction(1, 3)]
    assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)


def test_small_bases():
    assert buchberger([P("s1")]).polys == (P("s1"),)
    gb = buchberger([P("s1^2 - s2"), P("s2^2 - s1")])
    assert gb.reduce(P("s1^4 - s1")).is_zero()
    circle = buchberger([P("s1^2 + s2^2 - 1"), P("s1 - s2")])
    assert P("2*s2^2 - 1").monic() in circle.polys
    assert buchberger([P("s1 - 1"), P("s1 - 2")]).is_unit()


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(3, 3, 2), min_size=1, max_size=3))
def test_buchberger_output_is_reduced_groebner(gens):
    try:
        gb = buchberger(gens, Budget(max_pairs=200))
    except BudgetExceeded:
        return
    assert is_groebner(gb)
    for g in gens:
        assert gb.contains(g)
    for p in gb.polys:
        assert p.lead_coefficient() == 1
        others = [q for q in gb.polys if q is not p]
        assert all(reduce(MultiPoly(p.nvars, {m: c}), others) == MultiPoly(p.nvars, {m: c}) for m, c in p.terms.items())


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(3, 3, 2), min_size=2, max_size=3), st.randoms(use_true_random=False))
def test_reduced_basis_ignores_input_order(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    try:
        a = buchberger(gens, Budget(max_pairs=200))
        b = buchberger(shuffled, Budget(max_pairs=200))
    except BudgetExceeded:
        return
    assert a.polys == b.polys


@settings(max_examples=60, deadline=None)
@given(polys(3, 4, 3))
def test_normal_form_is_a_projection(f):
    gb = buchberger([P("s1^2 - s2*s3", 3), P("s2^2 - s1", 3), P("s3 - s1*s2 + 1", 3)], Budget(max_pairs=500))
    r = gb.reduce(f)
    assert gb.reduce(r) == r
    assert gb.reduce(f - r).is_zero()


@settings(max_examples=40, deadline=None)
@given(polys(2, 3, 2), polys(2, 3, 2))
def test_combinations_of_generators_are_members(a, b):
    f1, f2 = P("s1^2 - s2"), P("s1*s2 - 1")
    gb = buchberger([f1, f2])
    assert gb.contains(a * f1 + b * f2)


def test_radical_membership():
    assert radical_member(P("s1"), [P("s1^2")]) is Verdict.YES
    assert radical_member(P("s1"), [P("s2")]) is Verdict.NO
    assert radical_member(P("s1 + s2"), [P("s1^2 - s2^2"), P("s1 + s2")]) is Verdict.YES
    assert radical_member(P("s1*s2"), [P("s1^3"), P("s2^2 - s1")]) is Verdict.YES
    assert radical_member(P("s1"), [P("s1*s2")]) is Verdict.NO
    assert radical_member(MultiPoly(2), [P("s1")]) is Verdict.YES


def test_budget_exhaustion():
    rng = random.Random(3)
    gens = [
        MultiPoly.from_exponents(4, {tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(1, 5) for _ in range(4)})
        for _ in range(4)
    ]
    with pytest.raises(BudgetExceeded) as exc:
        buchberger(gens, Budget(max_pairs=2))
    assert exc.value.spent["pairs_processed"] == 2
    assert radical_member(P("s1", 4), gens, Budget(max_pairs=2)) is Verdict.UNKNOWN


def test_ideal_validation():
    with pytest.raises(ValueError):
        PolyIdeal.of([P("s1", 2), P("s1", 3)])
    with pytest.raises(ValueError):
        MultiPoly(2, {((5, 1),): 1})


def test_monomial_product():
    assert mono_mul(((0, 1), (2, 2)), ((1, 1), (2, 1))) == ((0, 1), (1, 1), (2, 3))
