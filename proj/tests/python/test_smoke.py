import json
from fractions import Fraction

import pytest

import plift


def generic(n, seed=1):
    return [Fraction(i * i + seed, 7 + i) * (-1) ** i for i in range(n)]


def test_configs_and_analysis():
    qs = plift.quadset_config()
    assert qs == {"points": 6, "lines": [[1, 2, 3], [1, 5, 6], [2, 4, 6], [3, 4, 5]]}
    assert plift.validate(qs) == []
    assert plift.validate({"points": 4, "lines": [[1, 2, 3], [1, 2, 4]]})
    a = plift.analyze(plift.grid3x4_config())
    assert a["omega"] == 1
    assert not a["is_forest"]


def test_check_verdicts():
    assert plift.check(plift.grid3x3_config())["verdict"] == "liftable"
    q = plift.check(plift.quadset_config(), deterministic=True)
    assert q["verdict"] == "not-liftable"
    assert q["generic_rank"] == 4
    assert plift.quasi_liftable(plift.quadset_config()) == "quasi-liftable"


def test_lift_grid_and_forest():
    l = plift.lift(plift.grid3x3_config(), generic(9))
    assert l["kind"] == "realising"
    assert all(isinstance(v, Fraction) for v in l["z"])
    assert plift.config_of_realisation(l["columns"]) == plift.grid3x3_config()
    assert plift.lift(plift.quadset_config(), [0, 1, 2, 3, 4, "-5/2"]) is None
    path = {"points": 10, "lines": [[1, 2, 3, 4], [4, 5, 6, 7], [7, 8, 9, 10]]}
    f = plift.forest_lift(path, generic(10, 3))
    assert plift.config_of_realisation(f["columns"]) == path


def test_projection_recovers_abscissas():
    x = generic(9, 2)
    l = plift.lift(plift.grid3x3_config(), x)
    assert plift.project(l["columns"], [0, 0, 1], [0, 0, 1]) == x


def test_generators_and_formats():
    gens = plift.generators("qs")
    assert len(gens) == 14
    assert len(plift.generators("grid34")) == 44
    j = json.loads(plift.emit("qs", "json"))
    assert len(j["generators"]) == 14
    assert plift.emit("qs", "cas") == plift.emit("qs", "cas")
    with pytest.raises(plift.PliftError):
        plift.emit("qs", "latex")
    two = {"points": 5, "lines": [[1, 2, 3], [3, 4, 5]]}
    assert plift.generators("radical", two)


def test_verify_and_table1():
    assert all(plift.table1())
    assert len(plift.table1()) == 17
    r = json.loads(plift.verify("tfae-qs", 3, 9))
    assert r["ok"] and r["passed"] == 3


def test_errors_and_cli():
    with pytest.raises(plift.PliftError, match="^invalid-config"):
        plift.check({"points": 4, "lines": [[1, 2, 3], [1, 2, 4]]})
    with pytest.raises(plift.PliftError):
        plift.lift(plift.quadset_config(), [0, 1, 2, 3, 4, 4])
    status, out, _ = plift.run_cli(["gens", "qs", "--format", "json"])
    assert status == 0
    assert len(json.loads(out)["generators"]) == 14
    assert plift.run_cli(["frobnicate"])[0] != 0
    assert len(plift.sample("grid", seed=2)) == 12
