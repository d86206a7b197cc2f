import json

import pytest

from cpalie import io
from cpalie.catalog import CATALOG_LIST, resolve
from cpalie.catalog import f32_moving_center_product, f32_unbalanced_product, heisenberg_product
from cpalie.cli import main
from cpalie.freelie import build_free_nilpotent


def run(*argv):
    lines = []
    code = main(list(argv), out=lines.append)
    return code, "\n".join(lines)


def test_dims():
    code, text = run("dims", "2", "10")
    assert code == 0
    assert "226" in text and "2" in text
    code, text = run("dims", "2", "10", "--json")
    data = json.loads(text)
    assert data["per_degree"] == [2, 1, 2, 3, 6, 9, 18, 30, 56, 99]
    assert data["totals"][-1] == 226 and data["center_dim"] == 99


@pytest.mark.parametrize(
    "argv",
    [
        ("dims", "3", "4", "--json"),
        ("info", "F_2_4", "--json"),
        ("property-f", "n5", "--json"),
        ("property-f", "g_6_14", "--json", "--seed", "3"),
        ("cpa-solve", "F_2_3", "--json"),
        ("grid", "F_3_3", "--json"),
        ("conjecture", "--cmax", "5", "--json"),
        ("catalog", "list", "--json"),
    ],
)
def test_json_is_byte_identical(argv):
    c1, a = run(*argv)
    c2, b = run(*argv)
    assert c1 == c2 == 0
    assert a == b
    assert "verdict" in json.loads(a)


def test_exit_codes():
    assert run("info", "no_such_algebra")[0] == 1
    code, text = run("info", "no_such_algebra", "--json")
    assert code == 1 and json.loads(text)["verdict"] == "error"
    assert run("dims")[0] == 1
    assert run("grid", "h3")[0] == 1
    assert run("conjecture", "--cmax", "2")[0] == 1
    # no S-pairs allowed and no rational witness exists: the answer is unknown
    code, text = run("cpa-solve", "F_2_3", "--budget-spairs", "0", "--json")
    assert code == 2 and json.loads(text)["verdict"] == "unknown"
    assert run("cpa-solve", "F_2_3")[0] == 0


def test_property_f_verdicts():
    code, text = run("property-f", "n4", "--json")
    data = json.loads(text)
    assert code == 0 and data["verdict"] == "false"
    code, text = run("property-f", "F_2_4", "--json")
    assert json.loads(text)["verdict"] == "true"


def test_cpa_solve_witness_and_export(tmp_path):
    out = tmp_path / "variety.json"
    code, text = run("cpa-solve", "h3", "--json", "--export", str(out))
    data = json.loads(text)
    assert code == 0 and data["verdict"] == "no"
    exported = json.loads(out.read_text())
    assert exported == data["variety"]
    assert exported["free_parameters"] == data["variety"]["free_parameters"]


def test_catalog_lists_every_entry():
    code, text = run("catalog", "list")
    assert code == 0
    assert len(text.splitlines()) == len(CATALOG_LIST)
    for ident, _ in CATALOG_LIST:
        assert ident in text


def test_build_and_reload(tmp_path):
    path = tmp_path / "f24.json"
    assert run("build", "2", "4", "--out", str(path))[0] == 0
    t = io.algebra_from_json(io.load_json(path))
    ref = build_free_nilpotent(2, 4).table
    assert t.dim == ref.dim and t.brackets == ref.brackets
    code, text = run("info", str(path), "--json")
    assert code == 0 and json.loads(text)["dim"] == 8


@pytest.mark.parametrize("ident", ["h3", "h5", "n4", "n6", "g_6_14", "F_2_4", "F_3_3", "hall_F_3_2", "abelian_2", "h3+n4"])
def test_catalog_round_trip(ident):
    t = resolve(ident)
    back = io.algebra_from_json(json.loads(io.dumps(io.algebra_to_json(t))))
    assert back.dim == t.dim and back.brackets == t.brackets and list(back.names) == list(t.names)


@pytest.mark.parametrize(
    "product,ident", [(heisenberg_product(), "h3"), (f32_moving_center_product(), None), (f32_unbalanced_product(), None)]
)
def test_product_round_trip(product, ident):
    data = json.loads(io.dumps(io.product_to_json(product, ident)))
    back = io.product_from_json(data)
    assert back.entries() == product.entries()


def test_cpa_verify(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(io.dumps(io.product_to_json(f32_moving_center_product())))
    bad = tmp_path / "bad.json"
    bad.write_text(io.dumps(io.product_to_json(f32_unbalanced_product())))
    code, text = run("cpa-verify", "hall_F_3_2", str(good), "--json")
    data = json.loads(text)
    assert code == 0 and data["verdict"] == "cpa" and data["gZ_is_zero"] is False
    code, text = run("cpa-verify", "hall_F_3_2", str(bad), "--json")
    data = json.loads(text)
    assert data["verdict"] == "not_cpa" and data["representation"] is False


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        json.dumps({"dim": 2}),
        json.dumps({"dim": 2, "brackets": [[2, 1, [[1, "1"]]]]}),
        json.dumps({"dim": 2, "brackets": [[1, 2, [[3, "1"]]]]}),
        json.dumps({"dim": 2, "brackets": [[1, 2, [[1, "x/y"]]]]}),
    ],
)
def test_malformed_algebra_files(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(payload)
    with pytest.raises(io.MalformedFileError):
        io.algebra_from_json(io.load_json(path))
    assert run("info", str(path))[0] == 1
