"""Affine varieties and constructible sets over F_q, counted by brute force.

Everything here is evaluated point by point: a set is a tree of polynomial
zero sets combined by union, intersection, difference, products and
residue-degree filters. This is the oracle that symbolic classes in
``motivCM.kring`` are checked against.
"""

import functools
import itertools
import math
from concurrent.futures import ProcessPoolExecutor

from motivCM.ff import check_enumeration
from motivCM.ff import frobenius_degree
from motivCM.ff import make_field
from motivCM.logger import logger
from motivCM.utils import divisors
from motivCM.utils import lcm
from motivCM.utils import parse_name
from motivCM.utils import prime_power


class GeometryError(ValueError):
  pass


def _int(value, what):
  if isinstance(value, bool):
    raise GeometryError("Unexpected boolean for {}".format(what))
  try:
    return int(value)
  except (TypeError, ValueError):
    raise GeometryError("Unexpected value for {}: {!r}".format(what, value))


def base_field_elements(q):
  """F_q as coefficient tuples of make_field(p, e), in enumeration order."""
  p, e = prime_power(q)
  return [a.coeffs for a in make_field(p, e).elements()]


# -----------------------------------------------------------------------------
class PolySystem(object):
  """Polynomials over F_q in num_vars variables.

  A polynomial is a dict mapping exponent tuples to coefficients; a
  coefficient is an element of F_q given as its coefficient tuple in
  make_field(p, e) (a plain int is accepted when q is prime).
  """

  def __init__(self, q, num_vars, polys=()):
    self.p, self.e = prime_power(q)
    self.q = q
    if num_vars < 0:
      raise GeometryError("num_vars must be >= 0, got {}".format(num_vars))
    self.num_vars = num_vars
    self.polys = [self._normalize(poly) for poly in polys]
    self._compiled = {}

  def _coefficient(self, value):
    if isinstance(value, (list, tuple)):
      coeffs = tuple(_int(c, "coefficient") for c in value)
    else:
      coeffs = (_int(value, "coefficient"),)
    if len(coeffs) > self.e:
      raise GeometryError(
        "coefficient {} does not lie in F_{}".format(value, self.q)
      )
    coeffs = coeffs + (0,) * (self.e - len(coeffs))
    return tuple(c % self.p for c in coeffs)

  def _normalize(self, poly):
    terms = {}
    for exps, coeff in poly.items():
      exps = tuple(_int(k, "exponent") for k in exps)
      if len(exps) != self.num_vars or any(k < 0 for k in exps):
        raise GeometryError(
          "bad exponent vector {} for {} variables".format(exps, self.num_vars)
        )
      coeff = self._coefficient(coeff)
      if exps in terms:
        coeff = tuple(
          (a + b) % self.p for a, b in zip(terms[exps], coeff)
        )
      terms[exps] = coeff
    return {k: v for k, v in terms.items() if any(v)}

  @property
  def degree(self):
    return max(
      [sum(exps) for poly in self.polys for exps in poly] or [0]
    )

  def compiled(self, ctx):
    if ctx not in self._compiled:
      compiled = []
      for poly in self.polys:
        terms = []
        for exps, coeff in sorted(poly.items()):
          if self.e == 1:
            c = coeff[0]
          else:
            c = ctx.embed_base(coeff, self.e)
          terms.append((c, exps))
        compiled.append(terms)
      self._compiled[ctx] = compiled
    return self._compiled[ctx]

  def evaluate(self, point, ctx):
    values = []
    for terms in self.compiled(ctx):
      total = ctx.zero
      for c, exps in terms:
        total = total + _monomial(point, exps, ctx) * c
      values.append(total)
    return values

  def vanishes_at(self, point, ctx):
    for terms in self.compiled(ctx):
      total = ctx.zero
      for c, exps in terms:
        total = total + _monomial(point, exps, ctx) * c
      if total:
        return False
    return True

  def to_dict(self):
    polys = []
    for poly in self.polys:
      encoded = {}
      for exps, coeff in sorted(poly.items()):
        key = ",".join(str(k) for k in exps)
        if self.e == 1:
          encoded[key] = str(coeff[0])
        else:
          encoded[key] = [str(c) for c in coeff]
      polys.append(encoded)
    return {"num_vars": str(self.num_vars), "polys": polys}

  @staticmethod
  def from_dict(data, q):
    num_vars = _int(data.get("num_vars", 0), "num_vars")
    polys = []
    for encoded in data.get("polys", []):
      poly = {}
      for key, coeff in encoded.items():
        key = key.strip()
        exps = tuple(key.split(",")) if key else ()
        poly[exps] = coeff
      polys.append(poly)
    return PolySystem(q, num_vars, polys)

  def __repr__(self):
    return "PolySystem(q={}, num_vars={}, polys={})".format(
      self.q, self.num_vars, self.polys
    )


def _monomial(point, exps, ctx):
  value = None
  for x, k in zip(point, exps):
    if k:
      factor = x if k == 1 else x ** k
      value = factor if value is None else value * factor
  return ctx.one if value is None else value


# -----------------------------------------------------------------------------
class ConstructibleSet(object):

  kind = None

  def __init__(self, q, num_vars):
    prime_power(q)
    self.q = q
    self.num_vars = num_vars

  def contains(self, point, ctx):
    raise NotImplementedError

  def _check_compatible(self, other):
    if not isinstance(other, ConstructibleSet):
      raise GeometryError("not a constructible set: {!r}".format(other))
    if (self.q, self.num_vars) != (other.q, other.num_vars):
      raise GeometryError(
        "sets live in different ambients: (q={}, A^{}) and (q={}, A^{})".format(
          self.q, self.num_vars, other.q, other.num_vars
        )
      )

  def __or__(self, other):
    return Union([self, other])

  def __and__(self, other):
    return Intersection([self, other])

  def __sub__(self, other):
    return Difference(self, other)

  def __mul__(self, other):
    return Product([self, other])

  def to_dict(self):
    raise NotImplementedError

  @staticmethod
  def from_dict(data, q):
    kind = data.get("kind")
    if kind == "variety":
      return Variety(PolySystem.from_dict(data, q))
    if kind == "named":
      return named_set(data["name"], q)
    if kind in ["union", "intersection", "product"]:
      children = [ConstructibleSet.from_dict(c, q) for c in data["children"]]
      return {"union": Union, "intersection": Intersection,
              "product": Product}[kind](children)
    if kind == "difference":
      left, right = data["children"]
      return Difference(
        ConstructibleSet.from_dict(left, q),
        ConstructibleSet.from_dict(right, q),
      )
    if kind == "degree_filter":
      coordinate = data.get("coordinate")
      if coordinate is not None:
        coordinate = _int(coordinate, "coordinate")
      return DegreeFilter(
        ConstructibleSet.from_dict(data["child"], q),
        data["relation"],
        _int(data["k"], "k"),
        coordinate=coordinate,
      )
    raise GeometryError("Unexpected set kind: {!r}".format(kind))


class Variety(ConstructibleSet):

  kind = "variety"

  def __init__(self, system):
    super(Variety, self).__init__(system.q, system.num_vars)
    self.system = system

  def contains(self, point, ctx):
    return self.system.vanishes_at(point, ctx)

  def to_dict(self):
    data = self.system.to_dict()
    data["kind"] = self.kind
    return data


class _Combination(ConstructibleSet):

  def __init__(self, children):
    children = list(children)
    if not children:
      raise GeometryError("{} of no sets".format(self.kind))
    super(_Combination, self).__init__(children[0].q, children[0].num_vars)
    for child in children[1:]:
      children[0]._check_compatible(child)
    self.children = children

  def to_dict(self):
    return {
      "kind": self.kind,
      "children": [child.to_dict() for child in self.children],
    }


class Union(_Combination):

  kind = "union"

  def contains(self, point, ctx):
    return any(child.contains(point, ctx) for child in self.children)


class Intersection(_Combination):

  kind = "intersection"

  def contains(self, point, ctx):
    return all(child.contains(point, ctx) for child in self.children)


class Difference(ConstructibleSet):

  kind = "difference"

  def __init__(self, left, right):
    left._check_compatible(right)
    super(Difference, self).__init__(left.q, left.num_vars)
    self.left = left
    self.right = right

  def contains(self, point, ctx):
    return self.left.contains(point, ctx) and not self.right.contains(
      point, ctx
    )

  def to_dict(self):
    return {
      "kind": self.kind,
      "children": [self.left.to_dict(), self.right.to_dict()],
    }


class Product(ConstructibleSet):
  """V x W inside A^(m + m')."""

  kind = "product"

  def __init__(self, children):
    children = list(children)
    if not children:
      raise GeometryError("product of no sets")
    for child in children[1:]:
      if child.q != children[0].q:
        raise GeometryError("product of sets over different base fields")
    super(Product, self).__init__(
      children[0].q, sum(child.num_vars for child in children)
    )
    self.children = children

  def contains(self, point, ctx):
    start = 0
    for child in self.children:
      stop = start + child.num_vars
      if not child.contains(point[start:stop], ctx):
        return False
      start = stop
    return True

  def to_dict(self):
    return {
      "kind": self.kind,
      "children": [child.to_dict() for child in self.children],
    }


RELATIONS = {
  "divides": lambda d, k: k % d == 0,
  "not_divides": lambda d, k: k % d != 0,
  "equals": lambda d, k: d == k,
  "not_equals": lambda d, k: d != k,
}


class DegreeFilter(ConstructibleSet):
  """Points of child whose residue degree stands in relation to k.

  coordinate=None measures the degree of the whole point.
  """

  kind = "degree_filter"

  def __init__(self, child, relation, k, coordinate=None):
    super(DegreeFilter, self).__init__(child.q, child.num_vars)
    if relation not in RELATIONS:
      raise GeometryError("Unexpected degree relation: {!r}".format(relation))
    if k <= 0:
      raise GeometryError("degree bound must be positive, got {}".format(k))
    if coordinate is not None and not 0 <= coordinate < child.num_vars:
      raise GeometryError("coordinate {} out of range for A^{}".format(
        coordinate, child.num_vars
      ))
    self.child = child
    self.relation = relation
    self.k = k
    self.coordinate = coordinate

  def contains(self, point, ctx):
    if not self.child.contains(point, ctx):
      return False
    if self.coordinate is None:
      d = point_degree(point, self.q)
    else:
      d = frobenius_degree(point[self.coordinate], self.q)
    return RELATIONS[self.relation](d, self.k)

  def to_dict(self):
    return {
      "kind": self.kind,
      "relation": self.relation,
      "k": str(self.k),
      "coordinate": None if self.coordinate is None else str(self.coordinate),
      "child": self.child.to_dict(),
    }


class Named(ConstructibleSet):
  """A builtin set that serializes by its name."""

  kind = "named"

  def __init__(self, name, inner):
    super(Named, self).__init__(inner.q, inner.num_vars)
    self.name = name
    self.inner = inner

  def contains(self, point, ctx):
    return self.inner.contains(point, ctx)

  def to_dict(self):
    return {"kind": self.kind, "name": self.name}


# -----------------------------------------------------------------------------
def point_degree(point, q):
  """Residue degree of the closed point below point: lcm of coordinate degrees."""
  return lcm(*[frobenius_degree(x, q) for x in point])


def iter_points(ctx, num_vars, start=0, stop=None):
  elements = ctx.elements(ctx.order)
  size = ctx.order ** num_vars
  if stop is None:
    stop = size
  if start == 0 and stop == size:
    for point in itertools.product(elements, repeat=num_vars):
      yield point
    return
  order = ctx.order
  for index in range(start, stop):
    coords = []
    for _ in range(num_vars):
      index, i = divmod(index, order)
      coords.append(elements[i])
    yield tuple(reversed(coords))


def _count_range(cset, ctx, start, stop):
  if cset.num_vars == 0:
    return int(start == 0 and stop > 0 and cset.contains((), ctx))
  count = 0
  for point in iter_points(ctx, cset.num_vars, start, stop):
    if cset.contains(point, ctx):
      count += 1
  return count


def _count_range_star(args):
  return _count_range(*args)


def _partition(size, parts):
  step = -(-size // parts)
  return [(i, min(i + step, size)) for i in range(0, size, step)]


def extension_context(q, n):
  p, e = prime_power(q)
  return make_field(p, e * n)


def count_points(cset, n, limit=None, workers=1):
  """|cset(F_{q^n})| by exhaustive enumeration."""
  if n <= 0:
    raise GeometryError("extension degree must be positive, got {}".format(n))
  p, e = prime_power(cset.q)
  size = (cset.q ** n) ** cset.num_vars
  check_enumeration(size, limit, what="A^{}(F_{}^{})".format(
    cset.num_vars, cset.q, n
  ))
  ctx = make_field(p, e * n)
  logger.debug("Counting {} points of A^{} over {}".format(
    size, cset.num_vars, ctx
  ))
  if workers <= 1 or size < 2 * workers:
    return _count_range(cset, ctx, 0, size)
  jobs = [(cset, ctx, start, stop) for start, stop in _partition(size, workers)]
  with ProcessPoolExecutor(max_workers=workers) as pool:
    return sum(pool.map(_count_range_star, jobs))


class ClosedPointTally(object):
  """d -> number of closed points of residue degree d."""

  def __init__(self, q, counts):
    self.q = q
    self.counts = dict(sorted(counts.items()))

  def __getitem__(self, d):
    return self.counts[d]

  def __eq__(self, other):
    if isinstance(other, ClosedPointTally):
      return (self.q, self.counts) == (other.q, other.counts)
    if isinstance(other, dict):
      return self.counts == other
    return NotImplemented

  def __ne__(self, other):
    result = self.__eq__(other)
    return result if result is NotImplemented else not result

  def __repr__(self):
    return "ClosedPointTally(q={}, {})".format(self.q, self.counts)

  @property
  def max_degree(self):
    return max(self.counts) if self.counts else 0

  def points_over(self, n):
    """sum over d | n of d * N_d."""
    missing = [d for d in divisors(n) if d not in self.counts]
    if missing:
      raise GeometryError("tally lacks degrees {}".format(missing))
    return sum(d * self.counts[d] for d in divisors(n))

  def to_dict(self):
    return {str(d): str(c) for d, c in self.counts.items()}


def decompose_closed_points(cset, max_d, limit=None, workers=1, degrees=None):
  """Count closed points of each degree d <= max_d.

  The degree-d points over F_{q^d} are counted directly and split into
  Galois orbits of size d.
  """
  if degrees is None:
    degrees = range(1, max_d + 1)
  counts = {}
  for d in degrees:
    exact = DegreeFilter(cset, "equals", d)
    points = count_points(exact, d, limit=limit, workers=workers)
    if points % d:
      raise GeometryError(
        "{} points of degree {} do not split into orbits".format(points, d)
      )
    counts[d] = points // d
  return ClosedPointTally(cset.q, counts)


def omega_membership(point, q):
  """True iff 1, x_1, ..., x_n are linearly independent over F_q."""
  if not point:
    return True
  ctx = point[0].ctx
  p, e = prime_power(q)
  scalars = list(range(p)) if e == 1 else ctx.subfield(e)
  zero = scalars[0]
  for combo in itertools.product(scalars, repeat=len(point) + 1):
    if all(c == zero for c in combo):
      continue
    total = ctx.one * combo[0]
    for c, x in zip(combo[1:], point):
      total = total + x * c
    if not total:
      return False
  return True


# builtin sets -----------------------------------------------------------------
def affine_space(q, m):
  return Variety(PolySystem(q, m, []))


def _unit(num_vars, i):
  return tuple(1 if j == i else 0 for j in range(num_vars))


def omega_set(q, n):
  """A^n minus every F_q-rational affine hyperplane."""
  if n == 0:
    return affine_space(q, 0)
  field = base_field_elements(q)
  zero, one = field[0], field[1]
  hyperplanes = []
  for linear in itertools.product(field, repeat=n):
    nonzero = [c for c in linear if c != zero]
    if not nonzero or nonzero[0] != one:
      continue
    for constant in field:
      poly = {_unit(n, i): c for i, c in enumerate(linear) if c != zero}
      if constant != zero:
        poly[(0,) * n] = constant
      hyperplanes.append(Variety(PolySystem(q, n, [poly])))
  return Difference(affine_space(q, n), Union(hyperplanes))


def x_k_set(q, k):
  """A^1 minus the points whose residue degree divides k."""
  return DegreeFilter(affine_space(q, 1), "not_divides", k, coordinate=0)


def y_km_set(q, k, m):
  if k % m == 0:
    raise GeometryError("m = {} divides k = {}; Y_(k,m) is X_k".format(m, k))
  return DegreeFilter(x_k_set(q, k), "not_equals", m, coordinate=0)


@functools.lru_cache(maxsize=None)
def irreducible_poly(q, d):
  """Monic irreducible of degree d over F_q, lowest coefficient first."""
  p, e = prime_power(q)
  if e == 1:
    return tuple((c,) for c in make_field(p, d).modulus)
  one = base_field_elements(q)[1]
  field = base_field_elements(q)
  for low in itertools.product(field, repeat=d):
    coeffs = low + (one,)
    system = PolySystem(q, 1, [{(i,): c for i, c in enumerate(coeffs)}])
    if count_points(DegreeFilter(Variety(system), "equals", d), d) == d:
      return coeffs
  raise GeometryError("no irreducible of degree {} over F_{}".format(d, q))


def spec_set(q, d):
  """Spec F_{q^d}: the zero set of a degree-d irreducible in A^1."""
  coeffs = irreducible_poly(q, d)
  poly = {(i,): c for i, c in enumerate(coeffs)}
  return Variety(PolySystem(q, 1, [poly]))


def curve_family(q, n, exclusion_k):
  """The open graphs C_P = {(x, P(x)) : deg x does not divide exclusion_k}.

  One member per P over F_q of degree <= 2n, in coefficient order.
  """
  p, e = prime_power(q)
  field = base_field_elements(q)
  family = []
  for coeffs in itertools.product(field, repeat=2 * n + 1):
    poly = {(0, 1): field[1]}
    for i, c in enumerate(coeffs):
      if any(c):
        poly[(i, 0)] = tuple((-a) % p for a in c)
    graph = Variety(PolySystem(q, 2, [poly]))
    family.append(DegreeFilter(graph, "not_divides", exclusion_k, coordinate=0))
  return family


def verify_disjoint(family, degrees, limit=None):
  """No point over F_{q^d}, d in degrees, lies on two members."""
  if not family:
    return True
  first = family[0]
  for member in family[1:]:
    first._check_compatible(member)
  for d in degrees:
    size = (first.q ** d) ** first.num_vars
    check_enumeration(size, limit, what="A^{}(F_{}^{})".format(
      first.num_vars, first.q, d
    ))
    ctx = extension_context(first.q, d)
    for point in iter_points(ctx, first.num_vars):
      hits = 0
      for member in family:
        if member.contains(point, ctx):
          hits += 1
          if hits > 1:
            logger.debug("{} lies on two members over {}".format(point, ctx))
            return False
  return True


def default_exclusion(n):
  return math.factorial(2 * n)


def curve_union(q, n, exclusion_k=None):
  if exclusion_k is None:
    exclusion_k = default_exclusion(n)
  return Union(curve_family(q, n, exclusion_k))


def curve_complement(q, n, exclusion_k=None):
  return Difference(affine_space(q, 2), curve_union(q, n, exclusion_k))


def random_system(q, num_vars, max_degree, rng, max_polys=2, max_terms=4):
  """A seeded random PolySystem; rng is a numpy Generator."""
  field = base_field_elements(q)
  polys = []
  for _ in range(int(rng.integers(1, max_polys + 1))):
    poly = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
      exps = [0] * num_vars
      for _ in range(int(rng.integers(0, max_degree + 1))):
        if num_vars:
          exps[int(rng.integers(0, num_vars))] += 1
      poly[tuple(exps)] = field[int(rng.integers(1, len(field)))]
    polys.append(poly)
  return PolySystem(q, num_vars, polys)


def named_set(name, q):
  kind, args = parse_name(name)

  def arity(*counts):
    if len(args) not in counts:
      raise GeometryError("{!r} takes {} parameter(s)".format(
        kind, " or ".join(str(c) for c in counts)
      ))

  if kind != "affine" and any(arg <= 0 for arg in args):
    raise GeometryError("parameters of {!r} must be positive".format(name))
  if kind == "affine":
    arity(1)
    inner = affine_space(q, args[0])
  elif kind == "point":
    arity(0)
    inner = affine_space(q, 0)
  elif kind == "omega":
    arity(1)
    inner = omega_set(q, args[0])
  elif kind == "xk":
    arity(1)
    inner = x_k_set(q, args[0])
  elif kind == "ykm":
    arity(2)
    inner = y_km_set(q, args[0], args[1])
  elif kind == "spec":
    arity(1)
    inner = spec_set(q, args[0])
  elif kind in ["curvefam", "curvecomp"]:
    arity(1, 2)
    k = args[1] if len(args) == 2 else None
    if kind == "curvefam":
      inner = curve_union(q, args[0], k)
    else:
      inner = curve_complement(q, args[0], k)
  else:
    raise GeometryError("Unknown builtin set: {!r}".format(name))
  return Named(name, inner)
