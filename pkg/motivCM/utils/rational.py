import numbers
from fractions import Fraction


def parse_rational(value):
  """Parse an exact rational from an int or a "num/den" / decimal string.

  Floats are rejected: they are not exact.
  """
  if isinstance(value, bool):
    raise ValueError("Unexpected boolean where a rational was expected")
  if isinstance(value, (int, Fraction)):
    return Fraction(value)
  if isinstance(value, numbers.Real):
    raise ValueError(
      "Inexact number {!r}; write rationals as strings like \"3/2\"".format(
        value
      )
    )
  if isinstance(value, str):
    text = value.strip()
    if not text:
      raise ValueError("Empty rational")
    try:
      return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
      raise ValueError("Malformed rational {!r}: {}".format(value, e))
  raise ValueError("Unexpected rational value: {!r}".format(value))


def format_rational(value):
  value = Fraction(value)
  if value.denominator == 1:
    return str(value.numerator)
  return "{}/{}".format(value.numerator, value.denominator)
