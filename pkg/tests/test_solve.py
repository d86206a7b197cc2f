import random
from fractions import Fraction

import pytest

from cpalie.catalog import f23_central_family, heisenberg_product, resolve
from cpalie.cpa import annihilates, verify
from cpalie.exact import Subspace
from cpalie.polysolve import Budget, MultiPoly, Verdict, assemble_constraints, find_point, solve_cpa, variety_is_central
from cpalie.polysolve.solve import unknown_index
from oracles import modular_rank

P31 = 2147483647


def tensor_vector(p, index):
    return {index[(i, j, k)]: c for (i, j), vec in p.entries().items() if i <= j for k, c in vec.items()}


def test_abelian_constraints_are_purely_quadratic():
    t = resolve("abelian_2")
    cons = assemble_constraints(t)
    assert cons.linear_rows == []
    assert cons.quadratic_constraints
    assert all(not q.linear for q in cons.quadratic_constraints)


def test_heisenberg_point_satisfies_constraints():
    t = resolve("h3")
    cons = assemble_constraints(t)
    index = unknown_index(3)
    point = tensor_vector(heisenberg_product(), index)
    values = [point.get(u, 0) for u in range(len(cons.unknowns))]
    assert all(sum(c * values[u] for u, c in row.items()) == 0 for row in cons.linear_rows)
    assert all(q.evaluate(values) == 0 for q in cons.quadratic)


def test_f23_linear_part_matches_modular_rank():
    t = resolve("hall_F_2_3")
    cons = assemble_constraints(t)
    nunk = len(cons.unknowns)
    dense = [[row.get(u, 0) for u in range(nunk)] for row in cons.linear_rows]
    v0 = solve_cpa(t, groebner=False)
    assert v0.nparams == nunk - modular_rank(dense, P31) == 15


def test_f23_variety_is_the_central_family():
    t = resolve("hall_F_2_3")
    v = solve_cpa(t)
    assert v.nparams == 6 and v.quadratic == [] and v.status == "groebner_done"
    index = unknown_index(5)
    family = Subspace.from_sparse(
        [tensor_vector(f23_central_family(*[int(i == k) for i in range(6)]), index) for k in range(6)],
        v.ambient_unknowns,
    )
    assert Subspace.from_sparse(v.parameters, v.ambient_unknowns) == family
    res = variety_is_central(v)
    assert res.verdict is Verdict.YES


@pytest.mark.parametrize("ident", ["h3", "hall_F_2_3", "n4", "abelian_1", "F_3_3"])
def test_sampled_points_verify(ident):
    t = resolve(ident)
    v = solve_cpa(t)
    rng = random.Random(11)
    found = 0
    if not v.quadratic:
        for _ in range(3):
            point = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(v.nparams)]
            assert verify(v.product_at(point)).ok
            found += 1
    hit = find_point(v, lambda p: True, Budget(max_witness_points=2000))
    if hit is not None:
        assert verify(hit[1]).ok
        found += 1
    assert found


def test_linear_constraints_vanish_on_parametrization():
    t = resolve("n4")
    cons = assemble_constraints(t)
    v = solve_cpa(t, groebner=False)
    for vec in v.parameters:
        assert all(sum(c * vec.get(u, 0) for u, c in row.items()) == 0 for row in cons.linear_rows)


def test_abelian_dim_one_is_a_free_line():
    v = solve_cpa(resolve("abelian_1"))
    # e1.e1 = a e1 satisfies every identity when all brackets vanish
    assert v.nparams == 1 and v.quadratic == []
    assert variety_is_central(v).verdict is Verdict.YES


def test_heisenberg_not_central():
    t = resolve("h3")
    res = variety_is_central(solve_cpa(t))
    assert res.verdict is Verdict.NO
    rep = verify(res.witness)
    assert rep.ok and not rep.is_central and rep.is_complete


def test_f32_witness_moves_center():
    t = resolve("F_3_2")
    v = solve_cpa(t, Budget(max_pairs=100))
    assert v.status == "budget_exceeded"
    res = variety_is_central(v, t.center, Budget(max_pairs=100))
    assert res.verdict is Verdict.NO
    assert verify(res.witness).ok and not annihilates(res.witness, t.center)


def test_unknown_when_out_of_budget():
    t = resolve("F_3_2")
    v = solve_cpa(t, Budget(max_pairs=5))
    res = variety_is_central(v, t.center, Budget(max_pairs=5, max_witness_points=0))
    assert res.verdict is Verdict.UNKNOWN


def test_variety_json():
    v = solve_cpa(resolve("h3"))
    data = v.to_json()
    assert data["free_parameters"] == v.nparams
    assert [MultiPoly.parse(q, v.nparams) for q in data["quadratic"]] == v.quadratic
    assert len(data["parametrization"]) == v.ambient_unknowns


def test_solver_is_deterministic():
    a = solve_cpa(resolve("n4")).to_json()
    b = solve_cpa(resolve("n4")).to_json()
    assert a == b
