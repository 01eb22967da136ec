import functools
import math

import sympy


@functools.lru_cache(maxsize=None)
def prime_power(q):
  """Return (p, e) with q = p**e, p prime, e >= 1."""
  if isinstance(q, bool) or not isinstance(q, int) or q < 2:
    raise ValueError("q must be an integer >= 2, got {!r}".format(q))
  factors = sympy.factorint(q)
  if len(factors) != 1:
    raise ValueError("q must be a prime power, got {}".format(q))
  (p, e), = factors.items()
  return int(p), int(e)


def is_prime_power(q):
  try:
    prime_power(q)
  except ValueError:
    return False
  return True


@functools.lru_cache(maxsize=4096)
def divisors(n):
  if n <= 0:
    raise ValueError("divisors of non-positive integer: {}".format(n))
  return tuple(int(d) for d in sympy.divisors(n))


@functools.lru_cache(maxsize=4096)
def mobius(n):
  if n <= 0:
    raise ValueError("mobius of non-positive integer: {}".format(n))
  factors = sympy.factorint(n)
  if any(k > 1 for k in factors.values()):
    return 0
  return -1 if len(factors) % 2 else 1


def lcm(*values):
  return functools.reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def lcm_range(n):
  """lcm(1, 2, ..., n)"""
  return lcm(*range(1, n + 1))


def integer_log(value, base):
  """Return k if value == base**k for some k >= 0, else None."""
  if value < 1:
    return None
  k = 0
  power = 1
  while power < value:
    power *= base
    k += 1
  return k if power == value else None
