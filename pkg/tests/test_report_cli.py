import json

import pytest
from hypothesis import given, settings, strategies as st

from gradua.cli import main
from gradua.lab.report import CheckResult, Inconclusive, Report, emit_report, run_check
from gradua.lab.scenarios import ScenarioError, run_scenario, scenario_params


def test_empty_report_is_valid_json_and_passes():
    r = Report("empty")
    d = json.loads(emit_report(r))
    assert d["overall"] == "pass" and d["checks"] == []


def test_overall_status_rules():
    ok = run_check("a", "trivial", lambda: (1, 1))
    bad = run_check("b", "trivial", lambda: (1, 2))

    def undecided():
        raise Inconclusive("cap", 1, None)

    inc = run_check("c", "derived", undecided)
    assert (ok.status, bad.status, inc.status) == ("pass", "fail", "inconclusive")
    assert Report("x", checks=[ok, inc]).overall == "inconclusive"
    assert Report("x", checks=[ok, inc, bad]).overall == "fail"
    assert Report("x", checks=[ok, inc]).exit_code() == 3


def test_engine_error_becomes_failing_check():
    res = run_check("boom", "derived", lambda: 1 / 0)
    assert res.status == "fail"
    assert res.detail["error"] == "ZeroDivisionError"


def test_bad_provenance_rejected():
    with pytest.raises(ValueError):
        CheckResult("x", 1, 1, "pass", "folklore")


json_values = st.recursive(st.none() | st.booleans() | st.integers() | st.text(max_size=5),
                           lambda c: st.lists(c, max_size=3) | st.dictionaries(st.text(max_size=3), c, max_size=3),
                           max_leaves=8)


@given(json_values, json_values, st.sampled_from(["pass", "fail", "inconclusive"]))
@settings(max_examples=50, deadline=None)
def test_report_json_round_trip(lhs, rhs, status):
    r = Report("s", {"seed": 1}, [CheckResult("c", lhs, rhs, status, "derived")])
    blob = emit_report(r)
    assert emit_report(Report.from_json(json.loads(blob))) == blob


def test_text_table_and_unknown_format():
    r = run_scenario("dvr", n_max=2)
    t = emit_report(r, "text-table").decode()
    assert "commutant_dim_n2" in t and t.endswith("overall: pass\n")
    with pytest.raises(ValueError):
        emit_report(r, "yaml")


def test_scenario_caps():
    with pytest.raises(ScenarioError):
        scenario_params(n_max=50)
    with pytest.raises(ScenarioError):
        scenario_params(bogus=1)
    with pytest.raises(ScenarioError):
        run_scenario("nope")


def test_q8_report_schema():
    names = {c.name for c in run_scenario("q8").checks}
    assert {"omega4_periodicity", "ring_presentation", "injective_hull_shift", "serre_shift"} <= names


def test_json_has_no_trailing_whitespace_and_sorted_keys():
    blob = emit_report(run_scenario("gorenstein")).decode()
    assert all(line == line.rstrip() for line in blob.splitlines())
    d = json.loads(blob)
    assert list(d) == sorted(d)


# CLI ----------------------------------------------------------------------------------------

RING = {"field": {"char": 2}, "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
        "relations": ["x^2+x*y+y^2", "x^2*y+x*y^2"]}


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_cli_ring_hilbert(tmp_path, capsys):
    f = _write(tmp_path, "ring.json", RING)
    assert main(["ring", f, "hilbert", "--window", "0:8"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert [out["dims"][str(n)] for n in range(9)] == [1, 2, 2, 1, 0, 0, 0, 0, 0]


def test_cli_negative_window(tmp_path, capsys):
    f = _write(tmp_path, "ring.json", RING)
    assert main(["ring", f, "hilbert", "--window", "-2:1"]) == 0
    assert json.loads(capsys.readouterr().out)["dims"]["-1"] == 0


def test_cli_cache_is_revalidated(tmp_path, capsys):
    f = _write(tmp_path, "ring.json", RING)
    assert main(["ring", f, "dim"]) == 0
    first = capsys.readouterr().out
    assert main(["ring", f, "dim"]) == 0
    assert capsys.readouterr().out == first
    # different content, different key
    _write(tmp_path, "ring.json", dict(RING, relations=[]))
    assert main(["ring", f, "dim"]) == 0
    assert json.loads(capsys.readouterr().out)["krull_dimension"] == 2


@pytest.mark.parametrize("content,pointer", [
    ("{not json", "not valid JSON"),
    ({"field": {"char": 2}}, "'generators'"),
    (dict(RING, relations=["x^2", "x^^2"]), "relations[1]"),
    ({"field": {"char": 2}, "generators": [{"name": "x"}]}, "'degree'"),
])
def test_cli_malformed_ring_points_at_field(tmp_path, capsys, content, pointer):
    f = _write(tmp_path, "bad.json", content)
    assert main(["ring", f, "dim"]) == 2
    assert pointer in capsys.readouterr().err


def test_cli_usage_errors(capsys):
    assert main([]) == 2
    assert main(["scenario", "nope"]) == 2
    assert main(["stmod", "bogus", "syzygy", "-n", "1"]) == 2
    assert main(["stmod", "klein_four", "koszul", "--class", "1:1"]) == 2


def test_cli_gorenstein_exit_codes(capsys):
    assert main(["gorenstein", "B"]) == 0
    assert main(["gorenstein", "m_squared"]) == 1


def test_cli_stmod_commands(tmp_path, capsys):
    assert main(["stmod", "quaternion8", "syzygy", "-n", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 1
    assert main(["stmod", "cyclic:4", "stablehom", "k", "k"]) == 0
    assert json.loads(capsys.readouterr().out)["stable_hom_dim"] == 1
    assert main(["stmod", "klein_four", "koszul", "--class", "1:1,0"]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 2
    from gradua.stmod.algebra import make_group_algebra

    labels = make_group_algebra("cyclic:4").labels
    mod = {"dim": 2, "actions": {labels[1]: [[1, 1], [0, 1]]}}
    f = _write(tmp_path, "j2.json", mod)
    assert main(["stmod", "cyclic:4", "ar", f]) == 0
    assert json.loads(capsys.readouterr().out)["middle_dim"] == 4


def test_cli_tate_and_scenario(tmp_path, capsys):
    assert main(["stmod", "klein_four", "tate", "--trials", "5", "--seed", "7"]) == 0
    assert json.loads(capsys.readouterr().out)["agree"] == 5
    out = tmp_path / "r.json"
    assert main(["scenario", "dvr", "--n-max", "3", "--json", str(out), "--format", "text-table"]) == 0
    assert json.loads(out.read_text())["overall"] == "pass"
    assert "overall: pass" in capsys.readouterr().out


def test_cli_module_commands(tmp_path, capsys):
    mod = _write(tmp_path, "m.json", {"generator_degrees": [0], "relations_matrix": [["x", "y"]]})
    pt = _write(tmp_path, "p.json", {"generators": ["x", "y"]})
    assert main(["module", "h_q8", mod, "hominj", "--point", pt, "--window", "-4:4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["torsion_exponent"] == 1
    assert out["module"]["dims"] == {str(n): int(n % 4 == 0) for n in range(-4, 5)}
    assert main(["module", "poly2", mod, "matlis", "--window", "-2:2"]) == 0
    assert json.loads(capsys.readouterr().out)["dims"]["0"] == 1
    assert main(["module", "poly2", mod, "hominj", "--window", "-2:2"]) == 2
