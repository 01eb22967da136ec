import json

import pytest

from motivCM import __version__
from motivCM.__main__ import main


def _json(capsys, argv):
  code = main(["--output", "json"] + argv)
  return code, json.loads(capsys.readouterr().out)


def _candidate(tmp_path, data):
  filename = tmp_path / "candidate.json"
  filename.write_text(json.dumps(data))
  return str(filename)


def test_version(capsys):
  assert main(["--version"]) == 0
  assert capsys.readouterr().out.strip() == "motivCM {}".format(__version__)


def test_no_command():
  assert main([]) == 2


def test_tables(capsys):
  code, data = _json(capsys, ["tables", "--kmax", "3"])
  assert code == 0
  assert data["q"] == "2"
  assert data["c"] == {"1": "2", "2": "1", "3": "2"}
  assert data["a"]["2"] == ["4", "6", "1"]
  assert data["P"]["2"] == ["8", "-6", "1"]


def test_tables_text(capsys):
  assert main(["--q", "5", "tables", "--kmax", "1"]) == 0
  out = capsys.readouterr().out
  assert "c_1 = 5" in out


@pytest.mark.parametrize(
  "argv, count",
  [
    (["count", "omega:2", "--n", "3"], "24"),
    (["count", "xk:2", "--n", "6"], "60"),
    (["--q", "3", "count", "affine:1", "--n", "2"], "9"),
  ],
)
def test_count(capsys, argv, count):
  code, data = _json(capsys, argv)
  assert code == 0
  assert data["count"] == count


def test_count_tally(capsys):
  code, data = _json(capsys, ["count", "affine:1", "--n", "3", "--tally"])
  assert code == 0
  assert data["closed_points"] == {"1": "2", "3": "2"}


def test_count_over_limit(capsys):
  assert main(["--enum-limit", "10", "count", "affine:2", "--n", "3"]) == 2


def test_closed_points(capsys):
  code, data = _json(capsys, ["closed-points", "affine:1", "--max-d", "3"])
  assert code == 0
  assert data["closed_points"] == {"1": "2", "2": "1", "3": "2"}


def test_class(capsys):
  assert main(["class", "xk:2"]) == 0
  assert capsys.readouterr().out.strip() == "L - 2 - S_2"
  assert main(["class", "spec:6", "--base-change", "4"]) == 0
  assert capsys.readouterr().out.strip() == "2*S_3"


def test_measure(capsys, tmp_path):
  code, data = _json(capsys, ["measure", "omega:2", "--n", "2"])
  assert code == 0
  assert data["value"] == "0"
  filename = _candidate(tmp_path, {"t": "3"})
  code, data = _json(capsys, ["measure", "omega:2", "--candidate", filename])
  assert data["value"] == "-1"


def test_falsify_counting_measure(capsys, tmp_path):
  filename = _candidate(tmp_path, {"t": "4", "s": {"2": "2"}})
  code, data = _json(capsys, ["falsify", filename])
  assert code == 0
  assert data["verdict"] == "counting measure, n = 2"
  assert data["n"] == "2"


@pytest.mark.parametrize(
  "candidate, construction, value",
  [
    ({"t": "3"}, "OmegaGap", "-1"),
    ({"t": "4", "s": {"2": "2", "3": "3"}}, "YElimination", "-6"),
    ({"t": "4"}, "CurveFamily", "-48"),
  ],
)
def test_falsify_witness(capsys, tmp_path, candidate, construction, value):
  code, data = _json(capsys, ["falsify", _candidate(tmp_path, candidate)])
  assert code == 1
  assert data["witness"]["construction"] == construction
  assert data["witness"]["value"] == value


def test_falsify_file_q(capsys, tmp_path):
  filename = _candidate(tmp_path, {"t": "9", "s": {"2": "2"}, "q": "3"})
  code, data = _json(capsys, ["--q", "2", "falsify", filename])
  assert code == 0
  assert data["q"] == "3"


def test_falsify_is_deterministic(capsys, tmp_path):
  filename = _candidate(tmp_path, {"t": "5/3"})
  main(["--output", "json", "falsify", filename])
  first = capsys.readouterr().out
  main(["--output", "json", "falsify", filename])
  assert capsys.readouterr().out == first


def test_falsify_malformed(tmp_path):
  assert main(["falsify", _candidate(tmp_path, {"s": {"2": "2"}})]) == 2
  assert main(["falsify", str(tmp_path / "missing.json")]) == 2


def test_verify(capsys):
  code, data = _json(capsys, ["verify", "divisor-sum"])
  assert code == 0
  assert data["passed"] is True
  assert data["suites"][0]["suite"] == "divisor-sum"


def test_verify_unknown_suite():
  with pytest.raises(SystemExit):
    main(["verify", "bogus"])


def test_bad_q():
  assert main(["--q", "6", "tables"]) == 2


def test_config_string(capsys):
  code, data = _json(capsys, ["--config", "{q: 3}", "tables", "--kmax", "1"])
  assert data["c"] == {"1": "3"}


def test_falsify_text_prints_witness_json(capsys, tmp_path):
  assert main(["falsify", _candidate(tmp_path, {"t": "3"})]) == 1
  lines = capsys.readouterr().out.splitlines()
  assert lines[0] == "falsified by OmegaGap (value -1)"
  witness = json.loads("\n".join(lines[2:]))
  assert witness["construction"] == "OmegaGap"
  assert witness["set"] == "omega:2"


def test_count_save(capsys, tmp_path):
  filename = str(tmp_path / "x2.json")
  assert main(["count", "xk:2", "--n", "3", "--save", filename]) == 0
  capsys.readouterr()
  code, data = _json(capsys, ["count", filename, "--n", "6"])
  assert code == 0
  assert data["count"] == "60"


def test_class_save(capsys, tmp_path):
  filename = str(tmp_path / "y.json")
  assert main(["class", "ykm:2:3", "--save", filename]) == 0
  capsys.readouterr()
  candidate = _candidate(tmp_path, {"t": "4", "s": {"2": "2", "3": "3"}})
  code, data = _json(capsys, ["measure", filename, "--candidate", candidate])
  assert data["value"] == "-6"


def test_falsify_with_system_file(capsys, tmp_path):
  system = tmp_path / "curve.json"
  # y^2 = x^3 + x
  system.write_text(json.dumps({
    "q": "2", "num_vars": "2", "polys": [{"0,2": "1", "3,0": "1", "1,0": "1"}],
  }))
  candidate = _candidate(tmp_path, {"t": "8", "s": {"3": "3"}})
  code, data = _json(capsys, ["falsify", candidate, "--system", str(system)])
  assert code == 0
  assert data["n"] == "3"


def test_falsify_with_system_over_other_field(tmp_path):
  system = tmp_path / "line.json"
  system.write_text(json.dumps({"q": "3", "num_vars": "1", "polys": []}))
  candidate = _candidate(tmp_path, {"t": "4", "s": {"2": "2"}})
  assert main(["falsify", candidate, "--system", str(system)]) == 2
