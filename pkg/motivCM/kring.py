"""The computable fragment of the Grothendieck ring K_0(Var_{F_q}).

Elements are integer combinations of L^a * S_m, where L = [A^1] and
S_m = [Spec F_{q^m}] (S_1 = 1). Products of Spec classes follow

    S_m * S_m' = gcd(m, m') * S_lcm(m, m')

since F_{q^m} (x) F_{q^m'} splits into gcd(m, m') copies of F_{q^lcm}.
"""

import functools
import math
from fractions import Fraction

from motivCM.utils import divisors
from motivCM.utils import format_rational
from motivCM.utils import mobius
from motivCM.utils import parse_name
from motivCM.utils import parse_rational
from motivCM.utils import prime_power


class RingError(ValueError):
  pass


class RingElement(object):

  def __init__(self, q, terms=None):
    prime_power(q)
    self.q = q
    self.terms = {}
    for (a, m), coeff in (terms or {}).items():
      if a < 0 or m < 1:
        raise RingError("bad basis element L^{} S_{}".format(a, m))
      coeff = int(coeff)
      if coeff:
        self.terms[(a, m)] = self.terms.get((a, m), 0) + coeff
    self.terms = {k: v for k, v in self.terms.items() if v}

  # constructors ----------------------------------------------------------------

  @staticmethod
  def constant(q, value):
    return RingElement(q, {(0, 1): value})

  @staticmethod
  def one(q):
    return RingElement.constant(q, 1)

  @staticmethod
  def lefschetz(q, a=1):
    return RingElement(q, {(a, 1): 1})

  @staticmethod
  def spec(q, m):
    return RingElement(q, {(0, m): 1})

  # ring operations -------------------------------------------------------------

  def _coerce(self, other):
    if isinstance(other, RingElement):
      if other.q != self.q:
        raise RingError("classes over F_{} and F_{} do not mix".format(
          self.q, other.q
        ))
      return other
    if isinstance(other, int) and not isinstance(other, bool):
      return RingElement.constant(self.q, other)
    return None

  def __add__(self, other):
    other = self._coerce(other)
    if other is None:
      return NotImplemented
    terms = dict(self.terms)
    for key, coeff in other.terms.items():
      terms[key] = terms.get(key, 0) + coeff
    return RingElement(self.q, terms)

  __radd__ = __add__

  def __neg__(self):
    return RingElement(self.q, {k: -v for k, v in self.terms.items()})

  def __sub__(self, other):
    other = self._coerce(other)
    if other is None:
      return NotImplemented
    return self + (-other)

  def __rsub__(self, other):
    return (-self) + other

  def __mul__(self, other):
    other = self._coerce(other)
    if other is None:
      return NotImplemented
    terms = {}
    for (a, m), x in self.terms.items():
      for (b, n), y in other.terms.items():
        g = math.gcd(m, n)
        key = (a + b, m * n // g)
        terms[key] = terms.get(key, 0) + g * x * y
    return RingElement(self.q, terms)

  __rmul__ = __mul__

  def __pow__(self, k):
    if not isinstance(k, int) or k < 0:
      return NotImplemented
    result = RingElement.one(self.q)
    for _ in range(k):
      result = result * self
    return result

  def __eq__(self, other):
    if isinstance(other, int) and not isinstance(other, bool):
      other = RingElement.constant(self.q, other)
    if not isinstance(other, RingElement):
      return NotImplemented
    return self.q == other.q and self.terms == other.terms

  def __ne__(self, other):
    result = self.__eq__(other)
    return result if result is NotImplemented else not result

  def __hash__(self):
    return hash((self.q, tuple(sorted(self.terms.items()))))

  def __bool__(self):
    return bool(self.terms)

  # inspection --------------------------------------------------------------------

  def coefficient(self, a, m=1):
    return self.terms.get((a, m), 0)

  def spec_indices(self):
    return sorted({m for _, m in self.terms})

  def is_lefschetz_polynomial(self):
    return all(m == 1 for _, m in self.terms)

  def lefschetz_coefficients(self):
    """Coefficients of a pure L-polynomial, constant term first."""
    if not self.is_lefschetz_polynomial():
      raise RingError("{} involves Spec classes".format(self))
    if not self.terms:
      return [0]
    top = max(a for a, _ in self.terms)
    return [self.coefficient(a) for a in range(top + 1)]

  def __repr__(self):
    if not self.terms:
      return "0"
    parts = []
    # highest power of L first
    order = sorted(self.terms.items(), key=lambda t: (-t[0][0], t[0][1]))
    for (a, m), coeff in order:
      factors = []
      if a:
        factors.append("L" if a == 1 else "L^{}".format(a))
      if m > 1:
        factors.append("S_{}".format(m))
      body = "*".join(factors)
      sign = "-" if coeff < 0 else "+"
      size = abs(coeff)
      if not body:
        text = str(size)
      elif size == 1:
        text = body
      else:
        text = "{}*{}".format(size, body)
      parts.append((sign, text))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in parts[1:]:
      out += " {} {}".format(sign, text)
    return out

  __str__ = __repr__

  # serialization ---------------------------------------------------------------

  def to_list(self):
    return [
      {"L_exp": str(a), "spec_m": str(m), "coeff": str(coeff)}
      for (a, m), coeff in sorted(self.terms.items())
    ]

  def to_dict(self):
    return {"q": str(self.q), "terms": self.to_list()}

  @staticmethod
  def from_list(q, items):
    terms = {}
    for item in items:
      key = (int(item["L_exp"]), int(item["spec_m"]))
      terms[key] = terms.get(key, 0) + int(item["coeff"])
    return RingElement(q, terms)


# -----------------------------------------------------------------------------
class MeasureCandidate(object):
  """A would-be motivic measure: t = mu(L), s[m] = mu(S_m).

  Indices not listed in s take the value 0; s_1 is always 1.
  """

  def __init__(self, t, s=None):
    self.t = parse_rational(t)
    spec_values = {}
    for m, value in (s or {}).items():
      m = int(m)
      if m < 1:
        raise RingError("Spec index must be positive, got {}".format(m))
      value = parse_rational(value)
      # zero entries read the same as unset ones
      if value or m == 1:
        spec_values[m] = value
    if spec_values.setdefault(1, Fraction(1)) != 1:
      raise RingError(
        "s_1 must be 1 (the unit class), got {}".format(spec_values[1])
      )
    self.s = dict(sorted(spec_values.items()))

  def spec_value(self, m):
    return self.s.get(m, Fraction(0))

  def evaluate(self, x):
    total = Fraction(0)
    for (a, m), coeff in x.terms.items():
      total += coeff * self.t ** a * self.spec_value(m)
    return total

  def __eq__(self, other):
    if not isinstance(other, MeasureCandidate):
      return NotImplemented
    indices = set(self.s) | set(other.s)
    return self.t == other.t and all(
      self.spec_value(m) == other.spec_value(m) for m in indices
    )

  def __ne__(self, other):
    result = self.__eq__(other)
    return result if result is NotImplemented else not result

  def __repr__(self):
    return "MeasureCandidate(t={}, s={})".format(
      format_rational(self.t),
      {m: format_rational(v) for m, v in self.s.items()},
    )

  def to_dict(self, bound=None):
    indices = list(self.s)
    if bound is not None:
      indices = sorted(set(indices) | set(range(1, bound + 1)))
    return {
      "t": format_rational(self.t),
      "s": {str(m): format_rational(self.spec_value(m)) for m in indices},
    }

  @staticmethod
  def from_dict(data):
    if "t" not in data:
      raise RingError("candidate lacks the value t of L")
    return MeasureCandidate(data["t"], data.get("s") or {})


class CountingMeasure(MeasureCandidate):
  """mu_{F_{q^n}}: L -> q^n, S_m -> m if m | n else 0."""

  def __init__(self, q, n):
    if n < 1:
      raise RingError("counting measure needs n >= 1, got {}".format(n))
    self.q = q
    self.n = n
    super(CountingMeasure, self).__init__(
      q ** n, {d: d for d in divisors(n)}
    )

  def spec_value(self, m):
    return Fraction(m) if self.n % m == 0 else Fraction(0)

  def __repr__(self):
    return "CountingMeasure(q={}, n={})".format(self.q, self.n)


def counting_measure(q, n):
  prime_power(q)
  return CountingMeasure(q, n)


class Violation(object):
  """s_a * s_b != gcd(a, b) * s_lcm(a, b)."""

  def __init__(self, a, b, lhs, rhs):
    self.a = a
    self.b = b
    self.lhs = lhs
    self.rhs = rhs

  def __eq__(self, other):
    if not isinstance(other, Violation):
      return NotImplemented
    return (self.a, self.b, self.lhs, self.rhs) == (
      other.a, other.b, other.lhs, other.rhs
    )

  def __repr__(self):
    return "Violation(s_{} * s_{} = {} != {})".format(
      self.a, self.b, format_rational(self.lhs), format_rational(self.rhs)
    )

  def to_dict(self):
    return {
      "a": str(self.a),
      "b": str(self.b),
      "lhs": format_rational(self.lhs),
      "rhs": format_rational(self.rhs),
    }


def divisor_pairs(bound):
  """(a, b) with a | b <= bound: the x^2 = mx and divisor identities."""
  return [(a, b) for b in range(1, bound + 1) for a in divisors(b)]


def all_pairs(bound):
  return [(a, b) for a in range(1, bound + 1) for b in range(a, bound + 1)]


def candidate_pairs(cand, limit):
  """Divisor pairs over 1..limit and the divisors of every index cand sets."""
  indices = set(range(1, limit + 1))
  for m in cand.s:
    indices.update(divisors(m))
  return [(a, b) for b in sorted(indices) for a in divisors(b)]


def hom_consistency(cand, test_pairs):
  violations = []
  for a, b in test_pairs:
    g = math.gcd(a, b)
    lhs = cand.spec_value(a) * cand.spec_value(b)
    rhs = g * cand.spec_value(a * b // g)
    if lhs != rhs:
      violations.append(Violation(a, b, lhs, rhs))
  return violations


# counts ------------------------------------------------------------------------
@functools.lru_cache(maxsize=None)
def closed_point_count(q, d):
  """c_d = (1/d) sum_{e | d} mu(d/e) q^e"""
  if d <= 0:
    raise RingError("degree must be positive, got {}".format(d))
  total = sum(mobius(d // e) * q ** e for e in divisors(d))
  c, rest = divmod(total, d)
  assert rest == 0
  return c


def gaussian_binomial(n, i, q):
  """[n choose i]_q"""
  if not 0 <= i <= n:
    raise RingError("need 0 <= i <= n, got n={}, i={}".format(n, i))
  num = 1
  den = 1
  for j in range(i):
    num *= q ** (n - j) - 1
    den *= q ** (j + 1) - 1
  return num // den


def affine_subspace_count(q, n, i):
  """a_{n,i} = q^(n-i) [n choose i]_q"""
  if not 0 <= i <= n:
    raise RingError("need 0 <= i <= n, got n={}, i={}".format(n, i))
  return q ** (n - i) * gaussian_binomial(n, i, q)


# named classes -----------------------------------------------------------------
def omega_class_product(q, n):
  """(L - q)(L - q^2)...(L - q^n)"""
  result = RingElement.one(q)
  L = RingElement.lefschetz(q)
  for i in range(1, n + 1):
    result = result * (L - q ** i)
  return result


@functools.lru_cache(maxsize=None)
def omega_class_recursive(q, n):
  """[Omega^n] = L^n - sum_{i=0}^{n-1} a_{n,i} [Omega^i], [Omega^0] = 1.

  Starting the sum at i = 0 removes the rational points; starting at i = 1
  would leave them in and miss the product formula.
  """
  if n == 0:
    return RingElement.one(q)
  result = RingElement.lefschetz(q, n)
  for i in range(n):
    result = result - affine_subspace_count(q, n, i) * omega_class_recursive(q, i)
  return result


def omega_class(q, n):
  if n < 0:
    raise RingError("n must be >= 0, got {}".format(n))
  recursive = omega_class_recursive(q, n)
  product = omega_class_product(q, n)
  if recursive != product:
    raise RingError(
      "Omega^{} recursion {} disagrees with product {}".format(
        n, recursive, product
      )
    )
  return recursive


def omega_polynomial(q, n):
  """Coefficients of P_n, constant term first."""
  return omega_class(q, n).lefschetz_coefficients()


def class_affine(q, m):
  return RingElement.lefschetz(q, m)


def class_spec(q, d):
  if d < 1:
    raise RingError("Spec index must be positive, got {}".format(d))
  return RingElement.spec(q, d)


def class_X_k(q, k):
  """L - sum_{d | k} c_d S_d"""
  if k < 1:
    raise RingError("k must be positive, got {}".format(k))
  terms = {(1, 1): 1}
  for d in divisors(k):
    terms[(0, d)] = terms.get((0, d), 0) - closed_point_count(q, d)
  return RingElement(q, terms)


def class_Y_km(q, k, m):
  """X_k minus the c_m closed points of degree m."""
  if m < 1:
    raise RingError("m must be positive, got {}".format(m))
  if k % m == 0:
    raise RingError("m = {} divides k = {}; Y_(k,m) is X_k".format(m, k))
  return class_X_k(q, k) - closed_point_count(q, m) * RingElement.spec(q, m)


def class_curve_complement(q, n, exclusion_k=None):
  """A^2 minus the q^(2n+1) disjoint open graphs, each a copy of X_k."""
  if exclusion_k is None:
    exclusion_k = math.factorial(2 * n)
  count = q ** (2 * n + 1)
  return RingElement.lefschetz(q, 2) - count * class_X_k(q, exclusion_k)


def class_curve_union(q, n, exclusion_k=None):
  return class_affine(q, 2) - class_curve_complement(q, n, exclusion_k)


def base_change(x, k):
  """Extension of scalars to F_{q^k}: S_m -> gcd(m, k) S_{m / gcd(m, k)}."""
  if k < 1:
    raise RingError("k must be positive, got {}".format(k))
  terms = {}
  for (a, m), coeff in x.terms.items():
    g = math.gcd(m, k)
    key = (a, m // g)
    terms[key] = terms.get(key, 0) + g * coeff
  return RingElement(x.q ** k, terms)


def named_class(name, q):
  """Symbolic class of the builtin set of the same name."""
  kind, args = parse_name(name)
  expected = {
    "affine": (1,), "point": (0,), "omega": (1,), "xk": (1,), "ykm": (2,),
    "spec": (1,), "curvefam": (1, 2), "curvecomp": (1, 2),
  }
  if kind not in expected:
    raise RingError("Unknown builtin class: {!r}".format(name))
  if len(args) not in expected[kind]:
    raise RingError("{!r} takes {} parameter(s)".format(
      kind, " or ".join(str(c) for c in expected[kind])
    ))
  if kind != "affine" and any(arg <= 0 for arg in args):
    raise RingError("parameters of {!r} must be positive".format(name))
  if kind == "affine":
    return class_affine(q, args[0])
  if kind == "point":
    return RingElement.one(q)
  if kind == "omega":
    return omega_class(q, args[0])
  if kind == "xk":
    return class_X_k(q, args[0])
  if kind == "ykm":
    return class_Y_km(q, args[0], args[1])
  if kind == "spec":
    return class_spec(q, args[0])
  k = args[1] if len(args) == 2 else None
  if kind == "curvefam":
    return class_curve_union(q, args[0], k)
  return class_curve_complement(q, args[0], k)
