"""Finite fields F_{p^N} realized as F_p[x] / (f).

A base field F_q with q = p^e is never built on its own: inside a context
F_{p^N} with e | N it is the fixed set of x -> x^q.
"""

import functools
import itertools

import numpy as np
import sympy

from motivCM.logger import logger
from motivCM.utils import prime_power

DEFAULT_ENUM_LIMIT = 1 << 22


class FieldError(ValueError):
  pass


class EnumerationLimitError(FieldError):
  pass


def check_enumeration(size, limit=None, what="set"):
  if limit is None:
    limit = DEFAULT_ENUM_LIMIT
  if size > limit:
    raise EnumerationLimitError(
      "Enumerating {} of {} elements exceeds the limit {}; "
      "use the symbolic path or raise the enumeration limit".format(
        what, size, limit
      )
    )


def is_irreducible(modulus, p):
  """modulus: monic coefficient vector, lowest degree first."""
  if len(modulus) < 2:
    return False
  if len(modulus) == 2:
    return True
  x = sympy.Symbol("x")
  poly = sympy.Poly(list(reversed(modulus)), x, modulus=p)
  return bool(poly.is_irreducible)


@functools.lru_cache(maxsize=None)
def make_field(p, N):
  if isinstance(p, bool) or not isinstance(p, int) or not sympy.isprime(p):
    raise FieldError("p must be prime, got {!r}".format(p))
  if isinstance(N, bool) or not isinstance(N, int) or N <= 0:
    raise FieldError("degree must be a positive integer, got {!r}".format(N))

  # least monic irreducible under the order of (c_0, ..., c_{N-1})
  for low in itertools.product(range(p), repeat=N):
    if N > 1 and low[0] == 0:
      continue
    modulus = low + (1,)
    if is_irreducible(modulus, p):
      logger.debug("GF({}^{}) modulus {}".format(p, N, modulus))
      return FieldCtx(p, N, modulus)
  raise FieldError("No irreducible polynomial of degree {} over F_{}".format(
    N, p
  ))


def _nullspace_mod_p(matrix, p):
  """Basis of {v : matrix . v = 0 (mod p)}, as rows of an int array."""
  a = np.array(matrix, dtype=np.int64) % p
  rows, cols = a.shape
  pivots = []
  r = 0
  for c in range(cols):
    hits = np.nonzero(a[r:, c])[0]
    if r >= rows or len(hits) == 0:
      continue
    k = r + hits[0]
    a[[r, k]] = a[[k, r]]
    a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
    for i in range(rows):
      if i != r and a[i, c]:
        a[i] = (a[i] - a[i, c] * a[r]) % p
    pivots.append(c)
    r += 1
    if r == rows:
      break
  free = [c for c in range(cols) if c not in pivots]
  basis = []
  for f in free:
    v = np.zeros(cols, dtype=np.int64)
    v[f] = 1
    for i, c in enumerate(pivots):
      v[c] = (-a[i, f]) % p
    basis.append(v)
  return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


class FieldCtx(object):

  def __init__(self, p, degree, modulus):
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != degree + 1 or modulus[-1] != 1:
      raise FieldError("modulus must be monic of degree {}: {}".format(
        degree, modulus
      ))
    self.p = p
    self.degree = degree
    self.modulus = modulus
    self.order = p ** degree
    self._frobenius = {}
    self._elements = None
    self._subfields = {}
    self._base_roots = {}

  def __eq__(self, other):
    return isinstance(other, FieldCtx) and (
      (self.p, self.degree, self.modulus)
      == (other.p, other.degree, other.modulus)
    )

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash((self.p, self.degree, self.modulus))

  def __repr__(self):
    return "GF({}^{})".format(self.p, self.degree)

  def __getstate__(self):
    # caches are rebuilt on demand in worker processes
    return {"p": self.p, "degree": self.degree, "modulus": self.modulus}

  def __setstate__(self, state):
    self.__init__(state["p"], state["degree"], state["modulus"])

  # serialization -------------------------------------------------------------

  def to_dict(self):
    return {
      "p": str(self.p),
      "N": str(self.degree),
      "modulus": [str(c) for c in self.modulus],
    }

  @staticmethod
  def from_dict(data):
    ctx = make_field(int(data["p"]), int(data["N"]))
    modulus = tuple(int(c) for c in data["modulus"])
    if modulus != ctx.modulus:
      raise FieldError(
        "modulus {} is not the deterministic modulus {} of {}".format(
          modulus, ctx.modulus, ctx
        )
      )
    return ctx

  # elements ------------------------------------------------------------------

  def element(self, coeffs):
    coeffs = tuple(int(c) % self.p for c in coeffs)
    if len(coeffs) != self.degree:
      raise FieldError("expected {} coefficients, got {}".format(
        self.degree, len(coeffs)
      ))
    return FieldElement(self, coeffs)

  def scalar(self, c):
    return FieldElement(self, (int(c) % self.p,) + (0,) * (self.degree - 1))

  @property
  def zero(self):
    return self.scalar(0)

  @property
  def one(self):
    return self.scalar(1)

  @property
  def gen(self):
    """The class of x."""
    if self.degree == 1:
      return self.scalar(-self.modulus[0])
    return self.element((0, 1) + (0,) * (self.degree - 2))

  def from_index(self, index):
    if not 0 <= index < self.order:
      raise FieldError("index {} out of range for {}".format(index, self))
    coeffs = []
    for _ in range(self.degree):
      index, c = divmod(index, self.p)
      coeffs.append(c)
    return FieldElement(self, tuple(coeffs))

  def elements(self, limit=None):
    check_enumeration(self.order, limit, what=repr(self))
    if self._elements is None:
      self._elements = [self.from_index(i) for i in range(self.order)]
    return self._elements

  # arithmetic on coefficient tuples ------------------------------------------

  def _mul(self, a, b):
    p, n = self.p, self.degree
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
      if ai:
        for j, bj in enumerate(b):
          if bj:
            prod[i + j] += ai * bj
    modulus = self.modulus
    for k in range(2 * n - 2, n - 1, -1):
      c = prod[k] % p
      if c:
        base = k - n
        for i in range(n):
          prod[base + i] -= c * modulus[i]
    return tuple(c % p for c in prod[:n])

  def frobenius_matrix(self, k=1):
    """Matrix of x -> x^(p^k) over F_p in the power basis."""
    k %= self.degree
    if k not in self._frobenius:
      if k == 0:
        matrix = np.eye(self.degree, dtype=np.int64)
      elif k == 1:
        gen_p = self.gen ** self.p
        columns = [self.one]
        for _ in range(1, self.degree):
          columns.append(columns[-1] * gen_p)
        matrix = np.array([c.coeffs for c in columns], dtype=np.int64).T
      else:
        matrix = self.frobenius_matrix(1)
        for _ in range(k - 1):
          matrix = matrix.dot(self.frobenius_matrix(1)) % self.p
      self._frobenius[k] = matrix
    return self._frobenius[k]

  def frobenius(self, alpha, k=1):
    """alpha^(p^k)"""
    matrix = self.frobenius_matrix(k)
    v = matrix.dot(np.array(alpha.coeffs, dtype=np.int64)) % self.p
    return FieldElement(self, tuple(int(c) for c in v))

  # subfields -----------------------------------------------------------------

  def subfield(self, e):
    """Elements of F_{p^e} inside this context, in enumeration order."""
    if e <= 0 or self.degree % e:
      raise FieldError("F_{}^{} is not a subfield of {}".format(
        self.p, e, self
      ))
    if e not in self._subfields:
      if e == 1:
        found = [self.scalar(c) for c in range(self.p)]
      else:
        fixed = self.frobenius_matrix(e) - np.eye(self.degree, dtype=np.int64)
        basis = _nullspace_mod_p(fixed, self.p)
        found = set()
        for combo in itertools.product(range(self.p), repeat=len(basis)):
          v = np.zeros(self.degree, dtype=np.int64)
          for c, row in zip(combo, basis):
            v = (v + c * row) % self.p
          found.add(FieldElement(self, tuple(int(c) for c in v)))
        found = sorted(found, key=lambda a: a.index)
      if len(found) != self.p ** e:
        raise FieldError("subfield of order {}^{} has {} elements".format(
          self.p, e, len(found)
        ))
      self._subfields[e] = found
    return self._subfields[e]

  def base_root(self, e):
    """Least-index root of make_field(p, e).modulus inside this context."""
    if e not in self._base_roots:
      modulus = make_field(self.p, e).modulus
      for beta in self.subfield(e):
        value = self.zero
        for c in reversed(modulus):
          value = value * beta + c
        if not value:
          self._base_roots[e] = beta
          break
      else:
        raise FieldError("no root of {} in {}".format(modulus, self))
    return self._base_roots[e]

  def embed_base(self, coeffs, e):
    """Embed an element of F_{p^e}, given in make_field(p, e), here."""
    if e == 1:
      return self.scalar(coeffs[0])
    beta = self.base_root(e)
    value = self.zero
    for c in reversed(tuple(coeffs)):
      value = value * beta + c
    return value


class FieldElement(object):

  __slots__ = ("ctx", "coeffs")

  def __init__(self, ctx, coeffs):
    self.ctx = ctx
    self.coeffs = coeffs

  @property
  def index(self):
    p = self.ctx.p
    value = 0
    for c in reversed(self.coeffs):
      value = value * p + c
    return value

  def _coerce(self, other):
    if isinstance(other, FieldElement):
      if other.ctx is not self.ctx and other.ctx != self.ctx:
        raise FieldError("elements of {} and {} do not mix".format(
          self.ctx, other.ctx
        ))
      return other
    if isinstance(other, int):
      return self.ctx.scalar(other)
    return None

  def __add__(self, other):
    other = self._coerce(other)
    if other is None:
      return NotImplemented
    p = self.ctx.p
    return FieldElement(
      self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
    )

  __radd__ = __add__

  def __neg__(self):
    p = self.ctx.p
    return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

  def __sub__(self, other):
    other = self._coerce(other)
    if other is None:
      return NotImplemented
    return self + (-other)

  def __rsub__(self, other):
    return (-self) + other

  def __mul__(self, other):
    if isinstance(other, int):
      p = self.ctx.p
      return FieldElement(self.ctx, tuple((a * other) % p for a in self.coeffs))
    other = self._coerce(other)
    if other is None:
      return NotImplemented
    return FieldElement(self.ctx, self.ctx._mul(self.coeffs, other.coeffs))

  __rmul__ = __mul__

  def __pow__(self, n):
    if not isinstance(n, int):
      return NotImplemented
    if n < 0:
      return self.inverse() ** (-n)
    result = self.ctx.one
    base = self
    while n:
      if n & 1:
        result = result * base
      base = base * base
      n >>= 1
    return result

  def inverse(self):
    if not self:
      raise ZeroDivisionError("inverse of zero in {}".format(self.ctx))
    return self ** (self.ctx.order - 2)

  def __truediv__(self, other):
    other = self._coerce(other)
    if other is None:
      return NotImplemented
    return self * other.inverse()

  def __rtruediv__(self, other):
    return self.inverse() * other

  def __eq__(self, other):
    if isinstance(other, int):
      other = self.ctx.scalar(other)
    if not isinstance(other, FieldElement):
      return NotImplemented
    return self.coeffs == other.coeffs and (
      self.ctx is other.ctx or self.ctx == other.ctx
    )

  def __ne__(self, other):
    result = self.__eq__(other)
    if result is NotImplemented:
      return result
    return not result

  def __hash__(self):
    return hash((self.ctx.p, self.ctx.degree, self.coeffs))

  def __bool__(self):
    return any(self.coeffs)

  def __repr__(self):
    terms = []
    for i, c in enumerate(self.coeffs):
      if not c:
        continue
      if i == 0:
        terms.append(str(c))
      else:
        mono = "x" if i == 1 else "x^{}".format(i)
        terms.append(mono if c == 1 else "{}*{}".format(c, mono))
    return " + ".join(reversed(terms)) or "0"

  def to_list(self):
    return [str(c) for c in self.coeffs]


def enumerate_elements(ctx, limit=None):
  """All elements of ctx, ordered by index: 0, 1, x, x + 1, ..."""
  return list(ctx.elements(limit))


def frobenius_degree(alpha, q):
  """Least d >= 1 with alpha^(q^d) == alpha."""
  p, e = prime_power(q)
  ctx = alpha.ctx
  if p != ctx.p:
    raise FieldError("q = {} is not a power of the characteristic {}".format(
      q, ctx.p
    ))
  if ctx.degree % e:
    raise FieldError("F_{} is not a subfield of {}".format(q, ctx))
  beta = alpha
  for d in range(1, ctx.degree // e + 1):
    beta = ctx.frobenius(beta, e)
    if beta == alpha:
      return d
  raise FieldError("Frobenius orbit of {} did not close".format(alpha))
