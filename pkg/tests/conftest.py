import pytest


@pytest.fixture(autouse=True)
def home(tmp_path, monkeypatch):
  # get_default_config writes ~/.motivCMrc
  home = tmp_path / "home"
  home.mkdir()
  monkeypatch.setenv("HOME", str(home))
  return home
