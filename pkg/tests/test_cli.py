import json
from importlib import resources

import jsonschema
import pytest

from wlpcheck.cli import main
from wlpcheck.sweep import CSV_COLUMNS, ConfigError, ExperimentConfig, load_config, parse_int_list, run_sweep

SCHEMA = json.loads(resources.files("wlpcheck").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_check_random_cubics(capsys):
    code, rep = run_json(capsys, "check", "--random", "3", "3", "--seed", "42")
    assert code == 0
    assert rep["hilbert"] == [1, 4, 10, 16, 19, 16, 10, 4, 1]
    assert rep["overall"] and rep["complete_intersection"] and rep["shortcut_used"]
    assert rep["bounds"]["range_bound2"]["hi"] == 5
    assert rep["version"] == 1


def test_check_squares(capsys):
    code, rep = run_json(capsys, "check", "x0^2", "x1^2", "x2^2", "x3^2")
    assert code == 0 and rep["overall"] and rep["socle_degree"] == 4


def test_check_exhaustive(capsys):
    code, rep = run_json(capsys, "check", "x0^2", "x1^2", "x2^2", "--exhaustive")
    assert code == 0 and not rep["shortcut_used"] and [v["degree"] for v in rep["verdicts"]] == [1, 2, 3]
    assert rep["bounds"] is None


def test_check_certified_failure_exit_code(capsys):
    code, rep = run_json(capsys, "check", "x0^3", "x1^3", "x2^3", "x0*x1*x2")
    assert code == 2
    assert rep["status"] == "certified-failure-over-rationals" and not rep["complete_intersection"]


def test_check_suspected_failure_exit_code(capsys):
    code, rep = run_json(capsys, "check", "x0^3", "x1^3", "x2^3", "--prime", "3", "--no-escalate")
    assert code == 2 and rep["status"] == "suspected-failure"
    code, rep = run_json(capsys, "check", "x0^3", "x1^3", "x2^3", "--prime", "3")
    assert code == 0


def test_check_rational_field(capsys):
    code, rep = run_json(capsys, "check", "x0^2 - x1*x2", "x1^2", "x2^2", "--field", "rational")
    assert code == 0 and rep["field"] == "QQ"


@pytest.mark.parametrize("text,offset", [("x0^2 + x1", "byte 7"), ("x0 + + x1", "byte 5"), ("x0^2 # x1", "byte 5")])
def test_check_parse_errors(capsys, text, offset):
    code, out, err = run(capsys, "check", text, "x1^2")
    assert code == 1 and offset in err and out == ""


def test_check_not_artinian(capsys):
    code, out, err = run(capsys, "check", "x0^2", "x0^2", "x1^2", "--vars", "3")
    assert code == 1 and "not Artinian" in err


def test_check_needs_input(capsys):
    assert run(capsys, "check")[0] == 1


def test_bad_prime(capsys):
    code, out, err = run(capsys, "check", "x0^2", "--prime", "91")
    assert code == 1 and "prime" in err


def test_bounds_goldens(capsys):
    code, rep = run_json(capsys, "bounds", "3", "7")
    assert code == 0
    assert (rep["range_main"]["lo"], rep["range_main"]["hi"]) == (7, 8)
    assert rep["range_bound2"]["hi"] - 1 == 10
    assert (rep["splitting"]["lower_b1"], rep["splitting"]["upper_bn"]) == (-4, -1)
    code, rep = run_json(capsys, "bounds", "4", "7")
    assert rep["range_bound2"]["hi"] - 1 == 9


def test_bounds_with_top_twist(capsys):
    code, rep = run_json(capsys, "bounds", "3", "7", "--b1", "-3")
    assert rep["range_prop36"]["hi"] == 3


def test_bounds_small_n_rejected(capsys):
    code, out, err = run(capsys, "bounds", "2", "5")
    assert code == 1 and "n >= 3" in err


def test_pretty_json_default(capsys):
    code, out, err = run(capsys, "bounds", "3", "4")
    assert out.startswith("{\n") and json.loads(out)["kind"] == "bounds"


def test_jacobian_fermat_quintic(capsys):
    code, rep = run_json(capsys, "jacobian", "x0^5+x1^5+x2^5+x3^5+x4^5")
    assert code == 0 and rep["smooth"] and not rep["abstract_claim_covered"]
    assert rep["beauville_degree_d"]["maximal"]
    assert rep["abstract_claim_threshold"] == 7 and rep["substituted_threshold"] == 6


def test_jacobian_singular(capsys):
    code, rep = run_json(capsys, "jacobian", "x0^3")
    assert code == 2 and not rep["smooth"]


def test_jacobian_bad_input(capsys):
    assert run(capsys, "jacobian", "x0 + x1")[0] == 1
    assert run(capsys, "jacobian", "x0^2 + x1", "--vars", "2")[0] == 1
    assert run(capsys, "jacobian", "x0^2", "--vars", "1")[0] == 1


def test_trials_must_be_positive(capsys):
    assert run(capsys, "bounds", "3", "4", "--trials", "0")[0] == 1


SMALL = """
# a small sweep
n_range = 3..4
d_range = 2,3
instances_per_cell = 2
seed = 5
"""


def test_sweep_writes_csv_and_json(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(SMALL)
    csv_path, json_path = tmp_path / "out.csv", tmp_path / "out.json"
    code, rep = run_json(capsys, "sweep", str(cfg), "--csv", str(csv_path), "--json-path", str(json_path))
    assert code == 0 and rep["all_agree"] and len(rep["cells"]) == 4
    lines = csv_path.read_text().splitlines()
    assert lines[0].split(",") == list(CSV_COLUMNS)
    assert len(lines) == 1 + 8
    jsonschema.validate(json.loads(json_path.read_text()), SCHEMA)


def test_sweep_is_deterministic(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(SMALL)
    code, first, _ = run(capsys, "sweep", str(cfg))
    code, second, _ = run(capsys, "sweep", str(cfg))
    assert first == second and first.startswith("n,d,instance")
    code, other, _ = run(capsys, "sweep", str(cfg), "--seed", "6")
    assert other != first


def test_sweep_cell_independent_of_neighbours():
    base = load_config(SMALL)
    alone = load_config(SMALL, {"n_range": [4], "d_range": [3]})
    rows = {(r.n, r.d, r.instance): r.csv_row() for r in run_sweep(base).instances}
    for r in run_sweep(alone).instances:
        assert rows[(4, 3, r.instance)] == r.csv_row()


def test_sweep_timing_only_on_request(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("n_range = 3\nd_range = 2\ninstances_per_cell = 1\n")
    code, rep = run_json(capsys, "sweep", str(cfg), "--csv", str(tmp_path / "a.csv"), "--timing")
    assert "seconds" in rep["cells"][0]
    code, rep = run_json(capsys, "sweep", str(cfg), "--csv", str(tmp_path / "b.csv"))
    assert "seconds" not in rep["cells"][0]


@pytest.mark.parametrize("text", [
    "d_range = 5..2\n",
    "d_range =\n",
    "n_range = 2..3\n",
    "instances_per_cell = 0\n",
    "trials = many\n",
    "colour = blue\n",
    "field = complex\n",
    "prime = 10\n",
    "just some words\n",
])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        load_config(text)


def test_config_error_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("d_range = 5..2\n")
    assert run(capsys, "sweep", str(cfg))[0] == 1
    assert run(capsys, "sweep", str(tmp_path / "missing.cfg"))[0] == 1


def test_config_defaults_and_overrides():
    cfg = load_config("")
    assert cfg == ExperimentConfig()
    cfg = load_config("seed = 3\ntrials = 2  # fewer\n", {"seed": 9, "trials": None})
    assert cfg.seed == 9 and cfg.trials == 2


def test_parse_int_list():
    assert parse_int_list("2..5") == [2, 3, 4, 5]
    assert parse_int_list("3, 5,7") == [3, 5, 7]
    with pytest.raises(ConfigError):
        parse_int_list("a..b")


def test_negative_seed_rejected(capsys):
    assert run(capsys, "check", "--random", "3", "2", "--seed", "-4")[0] == 1
    with pytest.raises(ConfigError):
        load_config("seed = -1\n")
