import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpalie.catalog import (
    catalog,
    f23_central_family,
    f32_moving_center_product,
    f32_unbalanced_product,
    heisenberg_product,
    resolve,
)
from cpalie.cpa import (
    CpaProduct,
    NonSymmetricCoefficients,
    StemAlgebraError,
    TensorShapeError,
    annihilates,
    annihilation_bound,
    central_implies_annihilation,
    construct_central,
    construct_incomplete,
    fitting_null,
    generator_product,
    is_central,
    is_complete,
    verify,
)
from cpalie.errors import PreconditionError
from cpalie.exact import Subspace
from cpalie.freelie import build_free_nilpotent
from cpalie.liealg import ad_matrix, invariants

coef = st.integers(-3, 3)


def left_representation_holds(p: CpaProduct) -> bool:
    """L([e_i, e_j]) = L(e_i) L(e_j) - L(e_j) L(e_i), as matrices."""
    t = p.algebra
    n = t.dim
    for i in range(n):
        for j in range(i + 1, n):
            br = t.bracket(t.basis_vector(i), t.basis_vector(j))
            if p.left_matrix(list(br)) != p.left_matrix(i) @ p.left_matrix(j) - p.left_matrix(j) @ p.left_matrix(i):
                return False
    return True


def left_derivations_hold(p: CpaProduct) -> bool:
    """Each L(e_i) commutes with brackets as a derivation: [L, ad(y)] = ad(L y)."""
    t = p.algebra
    n = t.dim
    for i in range(n):
        li = p.left_matrix(i)
        for j in range(n):
            y = t.basis_vector(j)
            if li @ ad_matrix(t, y) - ad_matrix(t, y) @ li != ad_matrix(t, li.apply(y)):
                return False
    return True


def check_product_invariants(p: CpaProduct) -> None:
    """Properties every verified product in the suite must satisfy."""
    rep = verify(p)
    assert rep.ok
    assert left_representation_holds(p)
    assert left_derivations_hold(p)
    t = p.algebra
    if t.series.is_nilpotent:
        assert fitting_null(p).contains(t.commutator)
        if invariants(t).is_stem:
            assert rep.is_complete


def test_heisenberg_product():
    p = heisenberg_product()
    rep = verify(p)
    assert rep.ok and rep.is_complete and not rep.is_central and rep.gZ_is_zero
    check_product_invariants(p)
    assert fitting_null(p) == Subspace.full(3)


@settings(max_examples=30, deadline=None)
@given(st.lists(coef, min_size=6, max_size=6))
def test_central_family_on_f23(params):
    p = f23_central_family(*params)
    rep = verify(p)
    assert rep.is_central and rep.is_complete and rep.gZ_is_zero and rep.gComm_is_zero
    check_product_invariants(p)
    assert central_implies_annihilation(p)


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_construct_central(data):
    g = data.draw(st.integers(2, 3))
    c = data.draw(st.integers(2, 4 if g == 2 else 3))
    pres = build_free_nilpotent(g, c)
    r = len(pres.center_indices)
    upper = {(i, j): [data.draw(coef) for _ in range(r)] for i in range(g) for j in range(i, g)}
    coeffs = [[upper[(min(i, j), max(i, j))] for j in range(g)] for i in range(g)]
    p = construct_central(pres, coeffs)
    assert is_central(p)
    check_product_invariants(p)


def test_construct_central_rejects_asymmetric():
    pres = build_free_nilpotent(2, 3)
    coeffs = [[[1, 0], [1, 0]], [[0, 1], [0, 0]]]
    with pytest.raises(NonSymmetricCoefficients):
        construct_central(pres, coeffs)


def test_products_moving_the_center():
    p = f32_moving_center_product()
    rep = verify(p)
    assert rep.ok and not rep.gZ_is_zero and rep.is_complete
    check_product_invariants(p)


def test_unbalanced_product_fails_representation():
    rep = verify(f32_unbalanced_product())
    assert rep.axiom4_ok and rep.axiom6_ok and not rep.axiom5_ok
    assert rep.axiom5_witness.indices == (0, 1, 0)
    assert rep.axiom5_witness.residual == {5: 1}


def test_first_failure_is_lexicographically_least():
    t = resolve("h3")
    p = CpaProduct(t, {(0, 0): {0: 1}, (1, 2): {1: 1}})
    rep = verify(p)
    assert not rep.ok
    # brute-force search for the least failing triple of the derivation identity
    from cpalie.cpa import derivation_residual

    fails = [(i, j, k) for i in range(3) for j in range(3) for k in range(j + 1, 3) if derivation_residual(p, i, j, k)]
    assert rep.axiom6_witness.indices == min(fails)


def test_asymmetric_tensor():
    t = resolve("h3")
    tensor = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    tensor[0][1][2] = 1
    rep = verify(CpaProduct.from_tensor(t, tensor))
    assert not rep.axiom4_ok and rep.axiom4_witness.indices == (0, 1)
    with pytest.raises(TensorShapeError):
        CpaProduct(t, {(1, 0): {2: 1}})
    with pytest.raises(TensorShapeError):
        CpaProduct.from_tensor(t, [[[0]]])


@pytest.mark.parametrize("ident", ["h3+abelian_1", "n4+abelian_2", "abelian_1", "abelian_3"])
def test_incomplete_on_non_stem(ident):
    t = resolve(ident)
    p = construct_incomplete(t)
    rep = verify(p)
    assert rep.ok and not rep.is_complete


@pytest.mark.parametrize("ident", ["h3", "F_2_3", "n5", "g_6_14"])
def test_incomplete_needs_non_stem(ident):
    with pytest.raises(StemAlgebraError):
        construct_incomplete(resolve(ident))


def test_completeness_needs_joint_chain():
    # L(e1) and L(e2) are nilpotent but L(e1 + e2) swaps e1 and e2
    t = resolve("abelian_2")
    p = CpaProduct(t, {(0, 0): {1: 1}, (1, 1): {0: 1}})
    assert p.left_matrix(0).power(2).is_zero() and p.left_matrix(1).power(2).is_zero()
    assert not is_complete(p)


def test_annihilation_bound():
    h = heisenberg_product()
    b = annihilation_bound(h, h.algebra.center, 2)
    assert (b.r, b.holds) == (1, True)
    p = f23_central_family(1, 2, 3, 4, 5, 6)
    b = annihilation_bound(p, p.algebra.center, 3)
    assert (b.r, b.holds) == (2, True)
    assert annihilates(p, p.algebra.center)
    zero = annihilation_bound(p, Subspace.zero(5), 1)
    assert (zero.r, zero.holds) == (0, True)
    with pytest.raises(PreconditionError):
        annihilation_bound(p, Subspace.full(5), 2)


def test_generator_product_targets():
    t = catalog("F_hall", g=2, c=3)
    p = generator_product(t, [0, 1], [{3: 1}, {4: 1}], [[[1, 0], [0, 1]], [[0, 1], [1, 1]]])
    assert p == f23_central_family(1, 0, 0, 1, 1, 1)


def test_random_points_of_h3_family():
    # e1.e1 = e2, e1.e2 = a e3 for any a; plus the zero product
    rng = random.Random(7)
    for _ in range(5):
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        check_product_invariants(heisenberg_product(a))
    check_product_invariants(CpaProduct.zero(resolve("h3")))
    check_product_invariants(CpaProduct.zero(resolve("abelian_0")))


def test_central_implies_annihilation_preconditions():
    with pytest.raises(PreconditionError):
        central_implies_annihilation(heisenberg_product())
    with pytest.raises(PreconditionError):
        central_implies_annihilation(construct_incomplete(resolve("h3+abelian_1")))
