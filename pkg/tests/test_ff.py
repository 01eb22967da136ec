import pickle

import pytest

from motivCM import ff
from motivCM.ff import enumerate_elements
from motivCM.ff import frobenius_degree
from motivCM.ff import make_field


@pytest.mark.parametrize(
  "p, N, modulus",
  [
    (2, 1, (0, 1)),
    (2, 2, (1, 1, 1)),
    (3, 2, (1, 0, 1)),
    (2, 3, (1, 1, 0, 1)),
  ],
)
def test_make_field_modulus(p, N, modulus):
  ctx = make_field(p, N)
  assert ctx.modulus == modulus
  assert ctx.order == p ** N


def test_make_field_is_deterministic():
  assert make_field(5, 2) is make_field(5, 2)
  assert ff.is_irreducible(make_field(5, 2).modulus, 5)


@pytest.mark.parametrize("p, N", [(4, 1), (1, 2), (2, 0), (2, -1)])
def test_make_field_rejects_bad_input(p, N):
  with pytest.raises(ff.FieldError):
    make_field(p, N)


def test_enumeration_order():
  ctx = make_field(2, 2)
  elements = enumerate_elements(ctx)
  assert [a.index for a in elements] == [0, 1, 2, 3]
  assert elements[0] == ctx.zero
  assert elements[1] == ctx.one
  assert elements[2] == ctx.gen
  assert enumerate_elements(make_field(2, 1)) == [0, 1]


def test_enumeration_limit():
  with pytest.raises(ff.EnumerationLimitError):
    enumerate_elements(make_field(2, 5), limit=16)


def test_arithmetic_gf4():
  ctx = make_field(2, 2)
  x = ctx.gen
  # x^2 = x + 1
  assert x * x == x + 1
  assert x ** 3 == ctx.one
  assert x.inverse() == x + 1
  assert (x + 1) / x == x
  assert x ** -1 == x + 1
  assert x - x == 0
  assert 1 + x == x + 1


def test_field_axioms_gf9():
  ctx = make_field(3, 2)
  elements = enumerate_elements(ctx)
  for a in elements:
    assert a * ctx.one == a
    assert a + (-a) == ctx.zero
    if a:
      assert a * a.inverse() == ctx.one
    for b in elements[:4]:
      assert a * b == b * a
      assert (a + b) * b == a * b + b * b


def test_inverse_of_zero():
  with pytest.raises(ZeroDivisionError):
    make_field(2, 3).zero.inverse()


def test_elements_do_not_mix():
  with pytest.raises(ff.FieldError):
    make_field(2, 2).gen + make_field(2, 3).gen


def test_frobenius_is_pth_power():
  ctx = make_field(3, 3)
  for a in enumerate_elements(ctx):
    assert ctx.frobenius(a) == a ** 3
    assert ctx.frobenius(a, 2) == a ** 9


def test_frobenius_degree_examples():
  assert frobenius_degree(make_field(2, 4).one, 2) == 1
  # root of x^2 + x + 1
  assert frobenius_degree(make_field(2, 2).gen, 2) == 2


def test_frobenius_degree_over_f4():
  ctx = make_field(2, 4)
  degrees = [frobenius_degree(a, 4) for a in enumerate_elements(ctx)]
  assert set(degrees) <= {1, 2}
  assert degrees.count(1) == 4


@pytest.mark.parametrize("N, outside", [(2, 2), (3, 6)])
def test_frobenius_degree_counts(N, outside):
  ctx = make_field(2, N)
  degrees = [frobenius_degree(a, 2) for a in enumerate_elements(ctx)]
  assert degrees.count(N) == outside


def test_frobenius_degree_errors():
  with pytest.raises(ff.FieldError):
    frobenius_degree(make_field(2, 3).gen, 3)
  with pytest.raises(ff.FieldError):
    frobenius_degree(make_field(2, 3).gen, 4)


def test_subfield():
  ctx = make_field(2, 4)
  f4 = ctx.subfield(2)
  assert len(f4) == 4
  assert f4[0] == ctx.zero and f4[1] == ctx.one
  for a in f4:
    assert a ** 4 == a
  with pytest.raises(ff.FieldError):
    ctx.subfield(3)


def test_embed_base_is_a_homomorphism():
  ctx = make_field(2, 4)
  small = make_field(2, 2)
  images = {a: ctx.embed_base(a.coeffs, 2) for a in enumerate_elements(small)}
  assert len(set(images.values())) == 4
  for a in images:
    for b in images:
      assert images[a * b] == images[a] * images[b]
      assert images[a + b] == images[a] + images[b]


def test_pickle_drops_caches():
  ctx = make_field(2, 3)
  ctx.elements()
  clone = pickle.loads(pickle.dumps(ctx))
  assert clone == ctx
  assert clone._elements is None


def test_field_dict():
  ctx = make_field(3, 2)
  assert ctx.to_dict() == {"p": "3", "N": "2", "modulus": ["1", "0", "1"]}
  assert ff.FieldCtx.from_dict(ctx.to_dict()) == ctx
  with pytest.raises(ff.FieldError):
    ff.FieldCtx.from_dict({"p": "3", "N": "2", "modulus": ["2", "0", "1"]})
