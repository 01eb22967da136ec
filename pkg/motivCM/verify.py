"""Invariant campaigns run by ``motivCM verify``.

Each suite takes a RunConfig and a numpy Generator and returns a Campaign
holding the number of checks made and the failures found.
"""

import collections
import math
from fractions import Fraction

import numpy as np

from motivCM import geom
from motivCM import kring
from motivCM.falsify import certify_L_gap
from motivCM.falsify import classify
from motivCM.falsify import eliminate_nondivisors
from motivCM.falsify import force_top_spec
from motivCM.falsify import sandwich_check
from motivCM.ff import EnumerationLimitError
from motivCM.logger import logger
from motivCM.utils import divisors
from motivCM.utils import integer_log


class Campaign(object):

  def __init__(self, name):
    self.name = name
    self.checks = 0
    self.failures = []

  def check(self, condition, message):
    self.checks += 1
    if not condition:
      self.failures.append(message)
      logger.debug("{}: {}".format(self.name, message))

  @property
  def passed(self):
    return not self.failures

  def to_dict(self):
    return {
      "suite": self.name,
      "checks": str(self.checks),
      "passed": self.passed,
      "failures": list(self.failures),
    }


def omega_identity(config, rng):
  '''
  recursion == (L - q)(L - q^2)...(L - q^n), q in {2, 3, 4, 5}, n <= 4
  '''
  campaign = Campaign("omega-identity")
  for q in [2, 3, 4, 5]:
    for n in range(1, 5):
      recursive = kring.omega_class_recursive(q, n)
      product = kring.omega_class_product(q, n)
      campaign.check(
        recursive == product,
        "q={} n={}: {} != {}".format(q, n, recursive, product),
      )
  return campaign


def omega_emptiness(config, rng):
  '''
  |Omega^n(F_{q^d})| = 0 for d <= n and P_n(q^d) for n < d <= 5, q = 2
  '''
  campaign = Campaign("omega-emptiness")
  q = 2
  for n in range(1, 4):
    cset = geom.omega_set(q, n)
    cls = kring.omega_class(q, n)
    for d in range(1, 6):
      try:
        count = geom.count_points(
          cset, d, limit=config.enumeration_limit, workers=config.workers
        )
      except EnumerationLimitError as e:
        logger.warning("omega-emptiness: {}".format(e))
        continue
      expected = 0 if d <= n else kring.counting_measure(q, d).evaluate(cls)
      campaign.check(
        count == expected,
        "Omega^{} over F_{}^{}: {} points, expected {}".format(
          n, q, d, count, expected
        ),
      )
  return campaign


def divisor_sum(config, rng):
  '''
  sum_{d | k} d c_d = q^k, k <= 12;  d c_d <= q^d - 1 for d > 1
  '''
  campaign = Campaign("divisor-sum")
  for q in [2, 3, 4, 5]:
    for k in range(1, 13):
      total = sum(d * kring.closed_point_count(q, d) for d in divisors(k))
      campaign.check(
        total == q ** k, "q={} k={}: sum is {}".format(q, k, total)
      )
      if k > 1:
        c = kring.closed_point_count(q, k)
        campaign.check(
          k * c <= q ** k - 1, "q={} d={}: d c_d = {}".format(q, k, k * c)
        )
  return campaign


def xk_law(config, rng):
  '''
  mu_n(X_k) = |X_k(F_{q^n})| = q^n - q^gcd(k, n), q in {2, 3}, k <= 4, n <= 5
  '''
  campaign = Campaign("xk-law")
  for q in [2, 3]:
    for k in range(1, 5):
      cls = kring.class_X_k(q, k)
      cset = geom.x_k_set(q, k)
      for n in range(1, 6):
        symbolic = kring.counting_measure(q, n).evaluate(cls)
        counted = geom.count_points(cset, n, limit=config.enumeration_limit)
        closed = q ** n - q ** math.gcd(k, n)
        campaign.check(
          symbolic == counted == closed,
          "q={} k={} n={}: class {}, count {}, formula {}".format(
            q, k, n, symbolic, counted, closed
          ),
        )
  return campaign


def random_element(q, rng, max_exp=3, max_spec=6, max_terms=4):
  terms = {}
  for _ in range(int(rng.integers(0, max_terms + 1))):
    key = (int(rng.integers(0, max_exp + 1)), int(rng.integers(1, max_spec + 1)))
    terms[key] = terms.get(key, 0) + int(rng.integers(-5, 6))
  return kring.RingElement(q, terms)


def hom(config, rng):
  '''
  mu_n(x + y) = mu_n(x) + mu_n(y) and mu_n(x y) = mu_n(x) mu_n(y)
  '''
  campaign = Campaign("hom")
  for i in range(config.verify_option("hom_pairs", 1000)):
    q = [2, 3, 4, 5][int(rng.integers(0, 4))]
    n = int(rng.integers(1, 7))
    mu = kring.counting_measure(q, n)
    x = random_element(q, rng)
    y = random_element(q, rng)
    campaign.check(
      mu.evaluate(x + y) == mu.evaluate(x) + mu.evaluate(y),
      "pair {} (q={}, n={}): additivity fails for {} and {}".format(
        i, q, n, x, y
      ),
    )
    campaign.check(
      mu.evaluate(x * y) == mu.evaluate(x) * mu.evaluate(y),
      "pair {} (q={}, n={}): multiplicativity fails for {} and {}".format(
        i, q, n, x, y
      ),
    )
  return campaign


def basis_law(config, rng):
  '''
  |Spec F_{q^a} x Spec F_{q^b}| over F_{q^n} = mu_n(gcd(a, b) S_lcm(a, b))
  '''
  campaign = Campaign("basis-law")
  q = 2
  for a in range(1, 5):
    for b in range(a, 5):
      product = geom.spec_set(q, a) * geom.spec_set(q, b)
      cls = kring.class_spec(q, a) * kring.class_spec(q, b)
      for n in range(1, 7):
        counted = geom.count_points(
          product, n, limit=config.enumeration_limit, workers=config.workers
        )
        symbolic = kring.counting_measure(q, n).evaluate(cls)
        campaign.check(
          counted == symbolic,
          "S_{} * S_{} over F_2^{}: count {}, class {}".format(
            a, b, n, counted, symbolic
          ),
        )
  return campaign


def orbit_identity(config, rng):
  '''
  sum_{d | n} d N_d(V) = |V(F_{q^n})| and |V| + |A^m \\ V| = q^(mn)
  '''
  campaign = Campaign("orbit-identity")
  max_points = config.verify_option("max_points", 4096)
  for i in range(config.verify_option("random_systems", 50)):
    q = [2, 3][int(rng.integers(0, 2))]
    m = int(rng.integers(1, 4))
    system = geom.random_system(q, m, 3, rng)
    feasible = [n for n in range(1, 5) if q ** (n * m) <= max_points]
    n = feasible[int(rng.integers(0, len(feasible)))]
    campaign.check(
      sandwich_check(q, n, system, config.enumeration_limit, config.workers),
      "system {} over F_{}^{}: {}".format(i, q, n, system),
    )
  return campaign


def _random_non_power(q, rng):
  while True:
    den = int(rng.integers(1, 10))
    num = int(rng.integers(den + 1, q ** 5 * den))
    t = Fraction(num, den)
    if t.denominator != 1 or integer_log(t.numerator, q) is None:
      return t


def falsifier(config, rng):
  '''
  every emitted witness is exactly negative under its candidate
  '''
  campaign = Campaign("falsifier")
  for _ in range(config.verify_option("gap_samples", 100)):
    q = [2, 3][int(rng.integers(0, 2))]
    t = _random_non_power(q, rng)
    witness = certify_L_gap(q, t)
    campaign.check(
      witness is not None and witness.value < 0
      and witness.verify(kring.MeasureCandidate(t)),
      "q={} t={}: no negative Omega witness".format(q, t),
    )
  for q in [2, 3]:
    for n in range(1, 4):
      for m in range(2, 7):
        if n % m == 0:
          continue
        # s_m = m forces s_d = d for d | m
        s = {d: d for d in divisors(n) + divisors(m)}
        cand = kring.MeasureCandidate(q ** n, s)
        witness = eliminate_nondivisors(q, n, cand)
        first = min(d for d in s if n % d)
        expected = -kring.closed_point_count(q, first) * first
        campaign.check(
          witness is not None and witness.value == expected
          and witness.verify(cand),
          "q={} n={} m={}: expected Y value {}".format(q, n, m, expected),
        )
    cand = kring.MeasureCandidate(q ** 2, {1: 1})
    witness = force_top_spec(
      q, 2, cand, mode=config.curve_exclusion,
      max_exclusion_index=config.max_exclusion_index,
    )
    campaign.check(
      witness is not None and witness.value < 0 and witness.verify(cand),
      "q={} n=2: no negative curve-family witness".format(q),
    )
  return campaign


def curve_disjoint(config, rng):
  '''
  graphs y = P(x), deg P <= 2n, are disjoint once deg x | k is removed
  '''
  campaign = Campaign("curve-disjoint")
  for q, degrees in [(2, [3, 5]), (3, [3])]:
    family = geom.curve_family(q, 1, 2)
    campaign.check(
      len(family) == q ** 3, "q={}: {} curves".format(q, len(family))
    )
    campaign.check(
      geom.verify_disjoint(family, degrees, config.enumeration_limit),
      "q={}: curves meet over degrees {}".format(q, degrees),
    )
  return campaign


CANDIDATE_SECTIONS = ["free", "gap", "power", "low"]


def _closed_pattern(rng, indices):
  """s_m = m on a random set of indices closed under divisors."""
  chosen = set()
  for m in indices:
    if rng.integers(0, 2):
      chosen.update(divisors(m))
  return {m: m for m in chosen if m > 1}


def candidate_grid(size, rng):
  """(q, candidate, expected n or None) triples.

  Sections rotate: "free" draws each s_m from {0, m, m + 1}; "gap" pairs a
  non-power t with a consistent pattern; "power" uses t = q^n with a
  consistent pattern, exact a third of the time; "low" sets only s_m = m
  for m < n.
  """
  grid = []
  for i in range(size):
    section = CANDIDATE_SECTIONS[i % len(CANDIDATE_SECTIONS)]
    q = [2, 3][(i // len(CANDIDATE_SECTIONS)) % 2]
    n = int(rng.integers(1, 4))
    if section == "gap" or (section == "free" and rng.integers(0, 2)):
      n = None
      t = _random_non_power(q, rng)
    else:
      t = Fraction(q ** n)
    if section == "free":
      s = {}
      for m in range(2, 7):
        value = [0, m, m + 1][int(rng.integers(0, 3))]
        if value:
          s[m] = value
    elif section == "low":
      s = _closed_pattern(rng, range(2, n))
    elif section == "power" and not rng.integers(0, 3):
      s = {m: m for m in range(2, 7) if n % m == 0}
    else:
      s = _closed_pattern(rng, range(2, 7))
    cand = kring.MeasureCandidate(t, s)
    expected = None
    if n is not None and cand == kring.counting_measure(q, n):
      expected = n
    grid.append((q, cand, expected))
  return grid


def theorem(config, rng):
  '''
  classify accepts exactly the counting measures
  '''
  campaign = Campaign("theorem")
  grid = candidate_grid(config.verify_option("theorem_grid", 500), rng)
  for q, cand, expected in grid:
    verdict = classify(
      q,
      cand,
      spec_index_limit=config.spec_index_limit,
      curve_exclusion=config.curve_exclusion,
      max_exclusion_index=config.max_exclusion_index,
    )
    if expected is not None:
      campaign.check(
        verdict.is_counting_measure and verdict.n == expected,
        "q={} {}: expected counting measure n={}, got {}".format(
          q, cand, expected, verdict.describe()
        ),
      )
    else:
      campaign.check(
        not verdict.is_counting_measure and verdict.witness.verify(cand),
        "q={} {}: expected a verified witness, got {}".format(
          q, cand, verdict.describe()
        ),
      )
  return campaign


SUITES = collections.OrderedDict([
  ("omega-identity", omega_identity),
  ("omega-emptiness", omega_emptiness),
  ("divisor-sum", divisor_sum),
  ("xk-law", xk_law),
  ("hom", hom),
  ("basis-law", basis_law),
  ("orbit-identity", orbit_identity),
  ("falsifier", falsifier),
  ("curve-disjoint", curve_disjoint),
  ("theorem", theorem),
])


def run_suites(name, config, seed=None):
  if seed is None:
    seed = config.seed
  if name == "all":
    names = list(SUITES)
  elif name in SUITES:
    names = [name]
  else:
    raise ValueError("Unknown suite: {!r} (choose from {})".format(
      name, ", ".join(["all"] + list(SUITES))
    ))
  campaigns = []
  for suite in names:
    # each suite draws from its own stream so suites stay independent
    rng = np.random.default_rng([seed, list(SUITES).index(suite)])
    logger.info("Running suite {}".format(suite))
    campaigns.append(SUITES[suite](config, rng))
  return campaigns
