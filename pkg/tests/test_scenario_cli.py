import json

import numpy as np
import pytest
import yaml

from helixgeom.catalog import BUILTIN_SCENARIOS, builtin_scenario, catalog
from helixgeom.cli import main
from helixgeom.errors import ScenarioError
from helixgeom.report import CheckReport, RunReport, Verdict, table_to_csv
from helixgeom.runner import run_check, run_scenario
from helixgeom.scenario import build_grid, parse_tolerance, validate


def write_yaml(tmp_path, doc, name="sc.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(doc))
    return path


class TestValidation:
    def test_all_builtins_validate(self):
        for name in BUILTIN_SCENARIOS:
            assert validate(builtin_scenario(name)).name == name

    def test_collects_every_problem(self):
        doc = builtin_scenario("example_3_2")
        doc["checks"] = ["eikonal", "bogus"]
        doc["tolerances"] = {"wobble": 1.0, "constancy": -1}
        doc["extra"] = 1
        with pytest.raises(ScenarioError) as exc:
            validate(doc)
        text = str(exc.value)
        for piece in ("bogus", "wobble", "constancy", "extra"):
            assert piece in text

    def test_missing_required_param(self):
        doc = builtin_scenario("family_nonhelix_5")
        del doc["curve"]["params"]["point"]
        with pytest.raises(ScenarioError, match="point"):
            validate(doc)

    def test_direction_required(self):
        doc = builtin_scenario("lemma_5_1_cylinder")
        del doc["direction"]
        with pytest.raises(ScenarioError, match="direction"):
            validate(doc)

    def test_direction_normalized(self):
        doc = builtin_scenario("example_3_2")
        doc["direction"] = [0, 0, 3]
        np.testing.assert_allclose(validate(doc).direction, [0, 0, 1])

    def test_ambient_dim_mismatch(self):
        doc = builtin_scenario("example_3_2")
        doc["ambient_dim"] = 4
        with pytest.raises(ScenarioError, match="ambient_dim"):
            validate(doc)

    def test_coefficient_patch(self):
        doc = builtin_scenario("example_3_2")
        doc["patch"] = {"coefficients": [[{"c": 1.0, "pow": [1, 0, 0]}],
                                         [{"c": 1.0, "pow": [0, 1, 0]}],
                                         [{"c": 1.0, "pow": [0, 0, 1]}]],
                        "box": [[-10, 10]] * 3}
        doc["checks"] = ["eikonal"]
        rep = run_scenario(validate(doc))
        assert rep.checks[0].payload["grad_norm"] == pytest.approx(5 ** 0.5)

    def test_grid_points(self):
        sc = validate(builtin_scenario("lemma_5_1_cylinder"))
        grid = build_grid({"points": [[0, 0]] * 8}, sc.patch, [])
        assert grid.shape == (8, 2)
        problems = []
        assert build_grid({"points": [[0, 0]]}, sc.patch, problems) is None or problems

    def test_parse_tolerance(self):
        assert parse_tolerance("constancy=1e-7") == ("constancy", 1e-7)
        for bad in ("constancy", "constancy=-1", "constancy=nan"):
            with pytest.raises(ValueError):
                parse_tolerance(bad)


def test_catalog_sorted_and_complete():
    names = [n for n, _ in catalog()]
    assert names == sorted(names)
    for required in ("example_3_1_gradient_tangent", "example_3_2", "example_3_3_linear_field",
                     "example_3_4_cylinder", "thm_4_1_affine_r3", "lift_3_3",
                     "lemma_5_1_cylinder"):
        assert required in names


def test_builtin_is_a_copy():
    doc = builtin_scenario("example_3_2")
    doc["checks"].clear()
    assert builtin_scenario("example_3_2")["checks"]


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin_scenario("nope")


@pytest.mark.parametrize("name", sorted(BUILTIN_SCENARIOS))
def test_builtin_verdicts(name):
    rep = run_scenario(validate(builtin_scenario(name)))
    verdicts = {c.name: c.verdict for c in rep.checks}
    assert Verdict.ERROR not in verdicts.values(), verdicts
    assert Verdict.THEOREM_VIOLATION not in verdicts.values(), verdicts
    if name.startswith("family_nonhelix"):
        assert verdicts["f_eikonal_curve"] in (Verdict.FAIL, Verdict.PREMISE_FAILED)
    else:
        assert rep.exit_code() == 0, verdicts


def test_runtime_errors_become_verdicts():
    doc = builtin_scenario("example_3_2")
    doc["checks"] = ["reference_curve"]
    rep = run_scenario(validate(doc))
    assert rep.checks[0].verdict is Verdict.INCONCLUSIVE


def test_tolerance_override_reaches_check():
    sc = validate(builtin_scenario("example_3_2"), {"constancy": 1e-9})
    assert run_check(sc, "eikonal").tolerance == 1e-9


class TestReport:
    def test_payload_schema_enforced(self):
        with pytest.raises(ValueError):
            CheckReport("x", Verdict.PASS, kind="eikonal", payload={"nope": 1.0})

    def test_missing_payload_keys_are_null(self):
        rep = CheckReport("x", Verdict.PASS, kind="ratio", payload={"cot_theta": 1.0})
        assert rep.payload["axis_residual"] is None

    def test_non_finite_becomes_null(self):
        rep = CheckReport("x", Verdict.PASS, kind="eikonal", payload={"grad_norm": np.inf})
        assert rep.to_dict()["payload"]["grad_norm"] is None

    def test_csv_format(self):
        text = table_to_csv({"s": np.array([0.0, 0.5]), "b": np.array([1, 2]),
                             "a": np.array([0.1, 3.0])})
        assert text == "s,a,b\n0.0,0.1,1.0\n0.5,3.0,2.0\n"

    def test_exit_codes(self):
        def run(*verdicts):
            return RunReport("x", "0", [CheckReport(str(i), v)
                                        for i, v in enumerate(verdicts)]).exit_code()
        assert run(Verdict.PASS, Verdict.PASS) == 0
        assert run(Verdict.PASS, Verdict.FAIL) == 2
        assert run(Verdict.PREMISE_FAILED) == 2
        assert run(Verdict.INCONCLUSIVE) == 2
        assert run(Verdict.ERROR) == 2
        assert run(Verdict.FAIL, Verdict.THEOREM_VIOLATION) == 3


class TestCli:
    def test_catalog(self, capsys):
        assert main(["catalog"]) == 0
        assert "example_3_2" in capsys.readouterr().out

    def test_show_roundtrips_through_run(self, tmp_path, capsys):
        assert main(["show", "thm_4_1_affine_r3"]) == 0
        path = tmp_path / "s.yaml"
        path.write_text(capsys.readouterr().out)
        assert main(["run", str(path), "--no-plots"]) == 0

    def test_demo_writes_outputs(self, tmp_path):
        code = main(["demo", "example_3_2", "--out", str(tmp_path / "r.json"),
                     "--csv", str(tmp_path / "csv")])
        assert code == 0
        data = json.loads((tmp_path / "r.json").read_text())
        assert data["scenario"] == "example_3_2"
        assert (tmp_path / "csv" / "example_3_2__eikonal.csv").exists()
        assert (tmp_path / "csv" / "example_3_2__eikonal.png").exists()

    def test_output_dir_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("HELIXGEOM_OUTPUT_DIR", str(tmp_path))
        assert main(["demo", "lift_3_3", "--out", "r.json"]) == 0
        assert (tmp_path / "r.json").exists()

    def test_invalid_scenario_exit_4(self, tmp_path, capsys):
        doc = builtin_scenario("example_3_2")
        doc["checks"] = ["bogus"]
        assert main(["run", str(write_yaml(tmp_path, doc))]) == 4
        assert "bogus" in capsys.readouterr().err

    def test_bad_tolerance_exit_4(self):
        assert main(["demo", "example_3_2", "--tol", "constancy"]) == 4
        assert main(["demo", "example_3_2", "--tol", "wobble=1e-3"]) == 4

    def test_unknown_demo_and_missing_file(self, tmp_path):
        assert main(["demo", "nope"]) == 4
        assert main(["run", str(tmp_path / "missing.yaml")]) == 4
        assert main(["frobnicate"]) == 4

    def test_non_helix_exit_2(self):
        assert main(["demo", "family_nonhelix_1", "--no-plots"]) == 2

    def test_json_scenario_file(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps(builtin_scenario("lift_3_3")))
        assert main(["run", str(path)]) == 0
