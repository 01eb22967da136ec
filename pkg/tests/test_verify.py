import collections

import numpy as np
import pytest

from motivCM import verify
from motivCM.config import RunConfig
from motivCM.falsify import classify
from motivCM.falsify import Witness


def _run(name, **options):
  campaigns = verify.run_suites(name, RunConfig(verify=options))
  assert [c.name for c in campaigns] == [name]
  return campaigns[0]


@pytest.mark.parametrize(
  "name",
  [
    "omega-identity",
    "omega-emptiness",
    "divisor-sum",
    "xk-law",
    "basis-law",
    "curve-disjoint",
  ],
)
def test_fixed_suites(name):
  campaign = _run(name)
  assert campaign.passed, campaign.failures
  assert campaign.checks > 0


def test_hom():
  campaign = _run("hom", hom_pairs=50)
  assert campaign.passed, campaign.failures
  assert campaign.checks == 100


def test_orbit_identity():
  campaign = _run("orbit-identity", random_systems=5, max_points=256)
  assert campaign.passed, campaign.failures


def test_falsifier():
  campaign = _run("falsifier", gap_samples=20)
  assert campaign.passed, campaign.failures


def test_theorem():
  campaign = _run("theorem", theorem_grid=40)
  assert campaign.passed, campaign.failures
  assert campaign.checks == 40


def test_unknown_suite():
  with pytest.raises(ValueError):
    verify.run_suites("bogus", RunConfig())


def test_campaign_dict():
  campaign = verify.Campaign("demo")
  campaign.check(True, "fine")
  campaign.check(False, "broken")
  assert not campaign.passed
  assert campaign.to_dict() == {
    "suite": "demo", "checks": "2", "passed": False, "failures": ["broken"],
  }


def test_candidate_grid_is_seeded():
  a = verify.candidate_grid(20, np.random.default_rng(3))
  b = verify.candidate_grid(20, np.random.default_rng(3))
  assert [(q, c, n) for q, c, n in a] == [(q, c, n) for q, c, n in b]
  assert any(n is not None for _, _, n in verify.candidate_grid(
    60, np.random.default_rng(3)
  ))


def test_candidate_grid_reaches_every_branch():
  tally = collections.Counter()
  for q, cand, expected in verify.candidate_grid(200, np.random.default_rng(42)):
    verdict = classify(q, cand)
    if verdict.is_counting_measure:
      assert verdict.n == expected
      tally["counting"] += 1
    else:
      assert expected is None
      tally[verdict.witness.construction] += 1
  for outcome in ["counting"] + Witness.PRIORITY:
    assert tally[outcome] >= 5, tally


def test_candidate_grid_has_other_values():
  grid = verify.candidate_grid(200, np.random.default_rng(42))
  values = {cand.spec_value(2) for _, cand, _ in grid}
  assert values == {0, 2, 3}
