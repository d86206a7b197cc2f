from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpalie.catalog import UnknownAlgebraError, catalog, resolve
from cpalie.exact import Subspace
from cpalie.liealg import (
    JacobiViolation,
    LieAlgebraTable,
    MalformedTableError,
    abelian,
    ad_matrix,
    direct_sum,
    invariants,
    table_from_rules,
)
from oracles import brute_center

CATALOG_IDS = ["h3", "h5", "n4", "n5", "n6", "g_6_14", "F_2_3", "F_3_2", "hall_F_2_3", "hall_F_3_2",
               "hall_F_3_3", "abelian_2", "h3+abelian_1", "F_2_4"]  # fmt: skip


@pytest.mark.parametrize("ident", CATALOG_IDS)
def test_center_matches_brute_force(ident):
    t = resolve(ident)
    assert t.center.dim == brute_center(t)
    for v in t.center.vectors():
        assert all(not any(t.bracket(v, t.basis_vector(i))) for i in range(t.dim))


def test_heisenberg():
    t = catalog("heisenberg", m=1)
    assert t.center == t.commutator == Subspace.coordinate([2], 3)
    assert t.series.nilpotency_class == 2
    inv = invariants(t)
    assert inv.is_stem and inv.z_ratio == Fraction(1, 3)


def test_filiform_and_g614():
    n5 = resolve("n5")
    assert n5.series.nilpotency_class == 4
    assert n5.center.dim == 1
    g = resolve("g_6_14")
    assert g.center == Subspace.coordinate([4, 5], 6)
    assert invariants(g).is_stem and invariants(g).z_ratio == Fraction(1, 3)


def test_hall_table_lower_central_quotients():
    t = resolve("hall_F_3_3")
    dims = [s.dim for s in t.series.lower_central]
    assert [a - b for a, b in zip(dims, dims[1:])] == [3, 3, 8]
    assert t.bracket_basis(2, 3) == {10: 1, 8: -1}


def test_jacobi_violation_is_reported():
    # [e1,e2] = e3, [e2,e3] = e1 and [e1,e3] = e1 breaks Jacobi
    with pytest.raises(JacobiViolation) as exc:
        table_from_rules(3, [(1, 2, {3: 1}), (1, 3, {1: 1}), (2, 3, {1: 1})])
    assert exc.value.residual


def test_malformed_tables():
    with pytest.raises(MalformedTableError):
        LieAlgebraTable(2, {(1, 0): {0: 1}})
    with pytest.raises(MalformedTableError):
        table_from_rules(2, [(1, 1, {2: 1})])
    with pytest.raises(MalformedTableError):
        table_from_rules(2, [(1, 2, {5: 1})])


def test_rule_orientation():
    a = table_from_rules(3, [(2, 1, {3: 1})])
    assert a.bracket_basis(0, 1) == {2: -1}


def test_direct_sum_is_not_stem():
    t = direct_sum(resolve("h3"), abelian(1))
    assert not invariants(t).is_stem
    assert t.center.dim == 2


def test_unknown_catalog_entries():
    with pytest.raises(UnknownAlgebraError):
        resolve("h4")
    with pytest.raises(UnknownAlgebraError):
        resolve("nonsense")
    with pytest.raises(UnknownAlgebraError):
        catalog("F_hall", g=2, c=5)


def test_degenerate_dimensions():
    for n in (0, 1):
        t = abelian(n)
        assert t.center.dim == n
        assert t.series.is_nilpotent


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_ad_is_a_derivation(x, y):
    # ad(x) acts on brackets by the Leibniz rule (equivalent to Jacobi)
    t = resolve("F_2_3")
    ax = ad_matrix(t, x)
    for i in range(5):
        for j in range(5):
            ei, ej = t.basis_vector(i), t.basis_vector(j)
            lhs = ax.apply(t.bracket(ei, ej))
            rhs = [a + b for a, b in zip(t.bracket(ax.apply(ei), ej), t.bracket(ei, ax.apply(ej)))]
            assert list(lhs) == rhs
    assert list(ax.apply(y)) == list(t.bracket(x, y))
