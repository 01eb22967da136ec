import pytest
import yaml

from motivCM.config import get_config
from motivCM.config import get_default_config
from motivCM.config import RunConfig


def test_default_config(home):
  config = get_config()
  assert config["q"] == 2
  assert config["output"] == "text"
  assert config["bounds"]["enumeration_limit"] == 4194304
  assert config["curve_exclusion"] == "factorial"
  assert (home / ".motivCMrc").exists()


def test_reset_user_config(home):
  rc = home / ".motivCMrc"
  rc.write_text("q: 3\n")
  get_default_config()
  assert rc.read_text() == "q: 3\n"
  get_default_config(reset_from_default_config=True)
  assert yaml.safe_load(rc.read_text())["q"] == 2


def test_inline_yaml():
  config = get_config("{q: 3, bounds: {max_degree: 4}}")
  assert config["q"] == 3
  assert config["bounds"]["max_degree"] == 4
  assert config["bounds"]["spec_index_limit"] == 24


def test_config_file(tmp_path):
  filename = tmp_path / "run.yaml"
  filename.write_text("seed: 7\nverify:\n  hom_pairs: 10\n")
  config = get_config(str(filename))
  assert config["seed"] == 7
  assert config["verify"]["hom_pairs"] == 10
  assert config["verify"]["random_systems"] == 50


def test_args_override_file():
  config = get_config("q: 3", {"q": 5, "bounds": {"enumeration_limit": 100}})
  assert config["q"] == 5
  assert config["bounds"]["enumeration_limit"] == 100
  assert config["bounds"]["max_degree"] == 6


def test_unknown_key_is_skipped():
  config = get_config("{colour: red}")
  assert "colour" not in config


@pytest.mark.parametrize(
  "text",
  [
    "q: 6",
    "q: 1",
    "output: xml",
    "logger_level: loud",
    "curve_exclusion: sometimes",
    "seed: -1",
    "workers: 0",
    "bounds: {enumeration_limit: 0}",
    "sandwich_systems: -2",
    "verify: {hom_pairs: 1.5}",
  ],
)
def test_invalid_values(text):
  with pytest.raises(ValueError):
    get_config(text)


def test_run_config():
  run_config = RunConfig.from_config(get_config("{q: 4, workers: 2}"))
  assert run_config.q == 4
  assert run_config.workers == 2
  assert run_config.enumeration_limit == 4194304
  assert run_config.max_exclusion_index == 1000000
  assert run_config.verify_option("theorem_grid", 0) == 500
  assert run_config.verify_option("missing", 3) == 3


def test_run_config_validates():
  with pytest.raises(ValueError):
    RunConfig(q=12)
  with pytest.raises(ValueError):
    RunConfig(spec_index_limit=0)
