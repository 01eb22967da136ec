"""Refute positive measures that are not counting measures.

Given a candidate (t = mu(L), s_m = mu(S_m)) over F_q, ``classify`` either
certifies that it agrees with mu_{F_{q^n}} on every class generated by L and
S_m (m up to the configured bound), or returns a Witness: an explicit class
whose value under the candidate is negative, or a broken ring identity.

The checks run in a fixed order, the first witness wins:

  1. ring identities s_a s_b = gcd(a, b) s_lcm(a, b) for a | b
  2. mu(L) must be a power q^n            (Omega^n)
  3. s_m = 0 for m not dividing n          (Y_{n,m})
  4. s_n = n                               (A^2 minus the curve family)
"""

import math
from fractions import Fraction

from motivCM.geom import affine_space
from motivCM.geom import count_points
from motivCM.geom import decompose_closed_points
from motivCM.geom import named_set
from motivCM.geom import Variety
from motivCM.kring import class_curve_complement
from motivCM.kring import class_Y_km
from motivCM.kring import counting_measure
from motivCM.kring import candidate_pairs
from motivCM.kring import hom_consistency
from motivCM.kring import MeasureCandidate
from motivCM.kring import omega_class
from motivCM.kring import RingElement
from motivCM.logger import logger
from motivCM.utils import divisors
from motivCM.utils import format_rational
from motivCM.utils import integer_log
from motivCM.utils import lcm_range
from motivCM.utils import parse_rational

DEFAULT_SPEC_INDEX_LIMIT = 24
DEFAULT_MAX_EXCLUSION_INDEX = 10 ** 6


class FalsifyError(ValueError):
  pass


class Witness(object):

  HOM_VIOLATION = "HomViolation"
  OMEGA_GAP = "OmegaGap"
  Y_ELIMINATION = "YElimination"
  CURVE_FAMILY = "CurveFamily"
  COMPLEMENT_SANDWICH = "ComplementSandwich"

  # first found wins
  PRIORITY = [HOM_VIOLATION, OMEGA_GAP, Y_ELIMINATION, CURVE_FAMILY]

  def __init__(
    self, q, construction, class_expr, value, narrative, set_name=None,
  ):
    self.q = q
    self.construction = construction
    self.class_expr = class_expr
    self.value = Fraction(value)
    self.narrative = narrative
    self.set_name = set_name

  @property
  def is_positivity_witness(self):
    return isinstance(self.class_expr, RingElement)

  def verify(self, cand):
    """Re-evaluate the witness under cand."""
    if self.construction == self.HOM_VIOLATION:
      violation = self.class_expr
      again = hom_consistency(cand, [(violation.a, violation.b)])
      return bool(again) and again[0] == violation and (
        violation.lhs - violation.rhs == self.value
      )
    if not self.is_positivity_witness:
      return False
    return self.value < 0 and cand.evaluate(self.class_expr) == self.value

  def __repr__(self):
    return "Witness({}, value={})".format(
      self.construction, format_rational(self.value)
    )

  def to_dict(self):
    if self.class_expr is None:
      expr = None
    else:
      expr = (
        self.class_expr.to_list()
        if isinstance(self.class_expr, RingElement)
        else self.class_expr.to_dict()
      )
    data = {
      "construction": self.construction,
      "class": expr,
      "value": format_rational(self.value),
      "narrative": self.narrative,
    }
    if self.set_name is not None:
      data["set"] = self.set_name
    return data


class Verdict(object):

  def __init__(self, q, n=None, witness=None):
    if (n is None) == (witness is None):
      raise FalsifyError("a verdict is either a counting measure or a witness")
    self.q = q
    self.n = n
    self.witness = witness

  @property
  def is_counting_measure(self):
    return self.witness is None

  @property
  def exit_code(self):
    return 0 if self.is_counting_measure else 1

  def describe(self):
    if self.is_counting_measure:
      return "counting measure, n = {}".format(self.n)
    return "falsified by {} (value {})".format(
      self.witness.construction, format_rational(self.witness.value)
    )

  def __repr__(self):
    return "Verdict({})".format(self.describe())

  def to_dict(self):
    data = {"q": str(self.q), "verdict": self.describe()}
    if self.is_counting_measure:
      data["n"] = str(self.n)
    else:
      data["witness"] = self.witness.to_dict()
    return data


# -----------------------------------------------------------------------------
def _power_of_q(q, t):
  if t.denominator != 1:
    return None
  n = integer_log(t.numerator, q)
  if n is None or n < 1:
    return None
  return n


def _check_exponent(q, n, cand):
  if cand.t != q ** n:
    raise FalsifyError(
      "precondition violated: mu(L) = {} is not q^n = {}".format(
        format_rational(cand.t), q ** n
      )
    )


def _check_consistent(cand, limit):
  violations = hom_consistency(cand, candidate_pairs(cand, limit))
  if violations:
    raise FalsifyError(
      "precondition violated: candidate breaks {}".format(violations[0])
    )


def hom_witness(q, violation):
  return Witness(
    q,
    Witness.HOM_VIOLATION,
    violation,
    violation.lhs - violation.rhs,
    "S_{a} * S_{b} = {g} * S_{l} in the ring, but the candidate gives "
    "{lhs} on the left and {rhs} on the right, so it is not a ring "
    "homomorphism".format(
      a=violation.a,
      b=violation.b,
      g=math.gcd(violation.a, violation.b),
      l=violation.a * violation.b // math.gcd(violation.a, violation.b),
      lhs=format_rational(violation.lhs),
      rhs=format_rational(violation.rhs),
    ),
  )


def certify_L_gap(q, t):
  """None iff t = q^n for some n >= 1, else an Omega^n witness."""
  t = parse_rational(t)
  if t < 0:
    return Witness(
      q,
      Witness.OMEGA_GAP,
      RingElement.lefschetz(q),
      t,
      "mu(L) = {} is negative, and L is the class of the affine line".format(
        format_rational(t)
      ),
      set_name="affine:1",
    )
  n = 1
  while q ** n < t:
    n += 1
  if q ** n == t:
    return None
  cls = omega_class(q, n)
  value = MeasureCandidate(t).evaluate(cls)
  if value >= 0:
    raise FalsifyError("Omega^{} at t = {} is not negative".format(n, t))
  lower = "q^{} < ".format(n - 1) if t > 1 else ""
  witness = Witness(
    q,
    Witness.OMEGA_GAP,
    cls,
    value,
    "{}mu(L) = {} < q^{}: exactly one factor of (L - q)...(L - q^{}) is "
    "negative, so mu(Omega^{}) < 0".format(
      lower, format_rational(t), n, n, n
    ),
    set_name="omega:{}".format(n),
  )
  logger.info("mu(L) = {} is not a power of {}: {}".format(
    format_rational(t), q, witness
  ))
  return witness


def eliminate_nondivisors(q, n, cand, bound=None, consistent=False):
  """Y_{n,m} witness for the first m not dividing n with s_m != 0.

  With s_n = n the value is -c_m * m. Without it, only indices m > n are
  guaranteed a negative value; the others are left to force_top_spec.
  consistent=True skips the ring-identity check already made by the caller.
  """
  _check_exponent(q, n, cand)
  if not consistent:
    _check_consistent(cand, bound or DEFAULT_SPEC_INDEX_LIMIT)
  for m in cand.s:
    if n % m == 0:
      continue
    cls = class_Y_km(q, n, m)
    value = cand.evaluate(cls)
    if value >= 0:
      logger.debug("Y_({},{}) has value {} >= 0, skipped".format(
        n, m, format_rational(value)
      ))
      continue
    witness = Witness(
      q,
      Witness.Y_ELIMINATION,
      cls,
      value,
      "mu(S_{m}) = {m} although {m} does not divide n = {n}: removing the "
      "degree-{m} points from X_{n} leaves Y_({n},{m}) with negative "
      "measure".format(m=m, n=n),
      set_name="ykm:{}:{}".format(n, m),
    )
    logger.info("non-divisor index {}: {}".format(m, witness))
    return witness
  return None


def exclusion_index(n, mode="factorial", max_index=None):
  """Index k such that every degree <= 2n divides k."""
  if max_index is None:
    max_index = DEFAULT_MAX_EXCLUSION_INDEX
  k = math.factorial(2 * n) if mode == "factorial" else lcm_range(2 * n)
  if k > max_index and mode == "factorial":
    logger.warning(
      "(2n)! = {} exceeds {}; using lcm(1..{}) instead".format(
        k, max_index, 2 * n
      )
    )
    k = lcm_range(2 * n)
  if k > max_index:
    raise FalsifyError(
      "exclusion index {} for n = {} exceeds the limit {}".format(
        k, n, max_index
      )
    )
  return k


def force_top_spec(
  q, n, cand, bound=None, mode="factorial", max_exclusion_index=None,
  consistent=False,
):
  """Curve-family witness when s_n = 0.

  The q^(2n+1) graphs y = P(x), deg P <= 2n, become disjoint once x of
  degree dividing k is removed, each a copy of X_k. With s_i = 0 for i >= n,
  mu(X_k) >= 2, which leaves A^2 minus their union with negative measure.
  """
  _check_exponent(q, n, cand)
  if not consistent:
    _check_consistent(cand, bound or DEFAULT_SPEC_INDEX_LIMIT)
  if cand.spec_value(n) == n:
    return None
  high = [i for i in cand.s if i >= n and cand.spec_value(i) != 0]
  if high:
    raise FalsifyError(
      "precondition violated: s_{} != 0 while s_{} = 0".format(high[0], n)
    )
  k = exclusion_index(n, mode, max_exclusion_index)
  cls = class_curve_complement(q, n, k)
  value = cand.evaluate(cls)
  if value >= 0:
    raise FalsifyError("curve family at n = {} is not negative: {}".format(
      n, value
    ))
  witness = Witness(
    q,
    Witness.CURVE_FAMILY,
    cls,
    value,
    "mu(S_{n}) = 0: the {count} disjoint open curves y = P(x), deg P <= {d}, "
    "each a copy of X_{k}, outweigh A^2".format(
      n=n, count=q ** (2 * n + 1), d=2 * n, k=k
    ),
    set_name="curvecomp:{}:{}".format(n, k),
  )
  logger.info("mu(S_{}) = 0: {}".format(n, witness))
  return witness


def sandwich_check(q, n, system, limit=None, workers=1):
  """Orbit and complement identities for V = zero set of system over F_{q^n}.

  sum_{d | n} d N_d(V) = |V(F_{q^n})| and |V| + |A^m \\ V| = q^(mn).
  """
  if system.q != q:
    raise FalsifyError("system lives over F_{}, not F_{}".format(system.q, q))
  variety = Variety(system)
  m = system.num_vars
  inside = count_points(variety, n, limit=limit, workers=workers)
  tally = decompose_closed_points(
    variety, n, limit=limit, workers=workers, degrees=divisors(n)
  )
  outside = count_points(
    affine_space(q, m) - variety, n, limit=limit, workers=workers
  )
  orbits_ok = tally.points_over(n) == inside
  complement_ok = inside + outside == q ** (m * n)
  logger.debug(
    "sandwich over F_{}^{}: |V| = {}, orbits {}, |W| = {}".format(
      q, n, inside, tally.counts, outside
    )
  )
  return orbits_ok and complement_ok


def sandwich_witness(q, n, system, limit=None, workers=1):
  variety = Variety(system)
  inside = count_points(variety, n, limit=limit, workers=workers)
  outside = count_points(
    affine_space(q, system.num_vars) - variety, n, limit=limit, workers=workers
  )
  return Witness(
    q,
    Witness.COMPLEMENT_SANDWICH,
    None,
    inside + outside - q ** (system.num_vars * n),
    "|V| + |A^m \\ V| differs from q^(mn) for {}".format(system),
  )


def classify(
  q,
  cand,
  spec_index_limit=DEFAULT_SPEC_INDEX_LIMIT,
  curve_exclusion="factorial",
  max_exclusion_index=None,
  systems=(),
  enumeration_limit=None,
  workers=1,
):
  violations = hom_consistency(cand, candidate_pairs(cand, spec_index_limit))
  if violations:
    logger.info("ring identity fails: {}".format(violations[0]))
    return Verdict(q, witness=hom_witness(q, violations[0]))

  witness = certify_L_gap(q, cand.t)
  if witness is not None:
    return Verdict(q, witness=witness)
  n = _power_of_q(q, cand.t)

  witness = eliminate_nondivisors(q, n, cand, consistent=True)
  if witness is not None:
    return Verdict(q, witness=witness)

  witness = force_top_spec(
    q, n, cand, mode=curve_exclusion,
    max_exclusion_index=max_exclusion_index, consistent=True,
  )
  if witness is not None:
    return Verdict(q, witness=witness)

  expected = counting_measure(q, n)
  for m in sorted(set(range(1, spec_index_limit + 1)) | set(cand.s)):
    if cand.spec_value(m) != expected.spec_value(m):
      raise FalsifyError(
        "candidate survived every check but s_{} = {} != {}".format(
          m, cand.spec_value(m), expected.spec_value(m)
        )
      )

  for system in systems:
    size = q ** (n * system.num_vars)
    if enumeration_limit is not None and size > enumeration_limit:
      logger.debug("sandwich over F_{}^{} skipped: {} points".format(
        q, n, size
      ))
      continue
    if not sandwich_check(q, n, system, enumeration_limit, workers):
      return Verdict(
        q,
        witness=sandwich_witness(q, n, system, enumeration_limit, workers),
      )

  logger.info("candidate is the counting measure of F_{}^{}".format(q, n))
  return Verdict(q, n=n)


def witness_set(witness):
  """The constructible set whose class the witness evaluates."""
  if witness.set_name is None:
    return None
  return named_set(witness.set_name, witness.q)
