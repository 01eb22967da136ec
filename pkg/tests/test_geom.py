import numpy as np
import pytest

from motivCM import geom
from motivCM.ff import EnumerationLimitError
from motivCM.ff import make_field


def test_count_affine_line():
  assert geom.count_points(geom.affine_space(2, 1), 3) == 8
  assert geom.count_points(geom.affine_space(3, 1), 2) == 9
  assert geom.count_points(geom.affine_space(2, 0), 4) == 1


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 0), (3, 24), (4, 168)])
def test_count_omega2_over_f2(n, expected):
  assert geom.count_points(geom.omega_set(2, 2), n) == expected


def test_omega_over_f4():
  # (16 - 4) points of A^1 outside F_4
  assert geom.count_points(geom.omega_set(4, 1), 2) == 12
  assert geom.count_points(geom.omega_set(4, 1), 1) == 0


def test_count_x2():
  assert geom.count_points(geom.x_k_set(2, 2), 6) == 60
  assert geom.count_points(geom.x_k_set(2, 2), 3) == 6


def test_count_with_workers():
  cset = geom.x_k_set(2, 2) * geom.affine_space(2, 1)
  assert geom.count_points(cset, 4, workers=3) == geom.count_points(cset, 4)


def test_enumeration_limit():
  with pytest.raises(EnumerationLimitError):
    geom.count_points(geom.affine_space(2, 3), 4, limit=1000)


def test_count_needs_positive_degree():
  with pytest.raises(geom.GeometryError):
    geom.count_points(geom.affine_space(2, 1), 0)


def test_omega_membership():
  ctx = make_field(2, 3)
  alpha = ctx.gen
  assert not geom.omega_membership((ctx.zero, ctx.zero), 2)
  assert not geom.omega_membership((alpha, ctx.one), 2)
  assert geom.omega_membership((alpha, alpha ** 2), 2)
  assert not geom.omega_membership((alpha, alpha + 1), 2)


def test_omega_membership_agrees_with_set():
  ctx = make_field(2, 3)
  cset = geom.omega_set(2, 2)
  for point in geom.iter_points(ctx, 2):
    assert cset.contains(point, ctx) == geom.omega_membership(point, 2)


def test_decompose_affine_line():
  tally = geom.decompose_closed_points(geom.affine_space(2, 1), 3)
  assert tally == {1: 2, 2: 1, 3: 2}
  assert tally.points_over(3) == 8
  assert tally.max_degree == 3


def test_decompose_x2():
  tally = geom.decompose_closed_points(geom.x_k_set(2, 2), 3)
  assert tally == {1: 0, 2: 0, 3: 2}


@pytest.mark.parametrize("q", [2, 3, 5])
def test_rational_points(q):
  tally = geom.decompose_closed_points(geom.affine_space(q, 1), 1)
  assert tally[1] == q


def test_tally_missing_degree():
  tally = geom.decompose_closed_points(geom.affine_space(2, 1), 2, degrees=[2])
  with pytest.raises(geom.GeometryError):
    tally.points_over(2)


def test_y_km():
  # X_1 minus the degree-2 points: 16 - 2 - 2 over F_16
  assert geom.count_points(geom.y_km_set(2, 1, 2), 4) == 12
  with pytest.raises(geom.GeometryError):
    geom.y_km_set(2, 4, 2)


@pytest.mark.parametrize("q, d", [(2, 1), (2, 3), (3, 2), (4, 2)])
def test_spec_set(q, d):
  cset = geom.spec_set(q, d)
  assert geom.count_points(cset, d) == d
  if d > 1:
    assert geom.count_points(cset, 1) == 0


def test_irreducible_poly():
  assert geom.irreducible_poly(2, 2) == ((1,), (1,), (1,))
  coeffs = geom.irreducible_poly(4, 2)
  assert len(coeffs) == 3
  assert coeffs[-1] == (1, 0)


def test_product_of_specs():
  product = geom.spec_set(2, 2) * geom.spec_set(2, 3)
  assert product.num_vars == 2
  assert geom.count_points(product, 6) == 6
  assert geom.count_points(product, 3) == 0


def test_point_degree():
  ctx = make_field(2, 6)
  a = ctx.subfield(2)[2]
  b = ctx.subfield(3)[2]
  assert geom.point_degree((a, b), 2) == 6
  assert geom.point_degree((a, ctx.one), 2) == 2


def test_degree_filter_on_whole_point():
  cset = geom.DegreeFilter(geom.affine_space(2, 2), "equals", 2)
  # F_4^2 minus F_2^2
  assert geom.count_points(cset, 2) == 12


def test_degree_filter_errors():
  with pytest.raises(geom.GeometryError):
    geom.DegreeFilter(geom.affine_space(2, 1), "between", 2)
  with pytest.raises(geom.GeometryError):
    geom.DegreeFilter(geom.affine_space(2, 1), "equals", 0)
  with pytest.raises(geom.GeometryError):
    geom.DegreeFilter(geom.affine_space(2, 1), "equals", 2, coordinate=1)


def test_set_algebra():
  line = geom.affine_space(3, 1)
  zero = geom.Variety(geom.PolySystem(3, 1, [{(1,): 1}]))
  one = geom.Variety(geom.PolySystem(3, 1, [{(1,): 1, (0,): 2}]))
  assert geom.count_points(zero | one, 1) == 2
  assert geom.count_points(zero & one, 1) == 0
  assert geom.count_points(line - zero, 2) == 8


def test_incompatible_sets():
  with pytest.raises(geom.GeometryError):
    geom.affine_space(2, 1) | geom.affine_space(2, 2)
  with pytest.raises(geom.GeometryError):
    geom.affine_space(2, 1) - geom.affine_space(3, 1)


def test_coefficients_over_f4():
  # x - a for a generator a of F_4
  system = geom.PolySystem(4, 1, [{(1,): 1, (0,): (0, 1)}])
  assert geom.count_points(geom.Variety(system), 1) == 1
  assert geom.count_points(geom.Variety(system), 2) == 1
  with pytest.raises(geom.GeometryError):
    geom.PolySystem(4, 1, [{(1,): (1, 0, 1)}])


def test_bad_exponents():
  with pytest.raises(geom.GeometryError):
    geom.PolySystem(2, 2, [{(1,): 1}])
  with pytest.raises(geom.GeometryError):
    geom.PolySystem(2, 1, [{(-1,): 1}])


def test_set_dict():
  cset = geom.DegreeFilter(
    geom.Variety(geom.PolySystem(2, 2, [{(2, 0): 1, (0, 1): 1}])),
    "not_divides", 2, coordinate=0,
  ) | geom.named_set("xk:2", 2) * geom.affine_space(2, 1)
  again = geom.ConstructibleSet.from_dict(cset.to_dict(), 2)
  assert again.to_dict() == cset.to_dict()
  assert geom.count_points(again, 3) == geom.count_points(cset, 3)


def test_named_set_serializes_by_name():
  assert geom.named_set("omega:2", 2).to_dict() == {
    "kind": "named", "name": "omega:2",
  }


@pytest.mark.parametrize(
  "name", ["omega:0", "ykm:2:1", "ykm:2", "bogus:1", "point:1", "spec:0"],
)
def test_named_set_errors(name):
  with pytest.raises(ValueError):
    geom.named_set(name, 2)


def test_curve_family_size():
  assert len(geom.curve_family(2, 1, 2)) == 8
  assert len(geom.curve_family(3, 1, 2)) == 27


def test_curve_family_excludes_small_degrees():
  ctx = make_field(2, 2)
  family = geom.curve_family(2, 1, 2)
  for member in family:
    for x in ctx.elements():
      for y in ctx.elements():
        assert not member.contains((x, y), ctx)


def test_curve_family_graph():
  ctx = make_field(2, 3)
  alpha = ctx.gen
  # P = 1 + x^2 is the member with coefficients (1, 0, 1)
  member = geom.curve_family(2, 1, 2)[5]
  assert member.contains((alpha, 1 + alpha ** 2), ctx)
  assert not member.contains((alpha, alpha), ctx)


@pytest.mark.parametrize("q, degrees", [(2, [3, 5]), (3, [3])])
def test_curve_family_disjoint(q, degrees):
  assert geom.verify_disjoint(geom.curve_family(q, 1, 2), degrees)


def test_duplicated_curve_is_not_disjoint():
  family = geom.curve_family(2, 1, 2)
  assert not geom.verify_disjoint(family + [family[3]], [3])


def test_curve_complement_count():
  # 64 - 8 * |X_2(F_8)|
  assert geom.count_points(geom.curve_complement(2, 1, 2), 3) == 64 - 8 * 6


def test_random_system_is_seeded():
  a = geom.random_system(3, 2, 3, np.random.default_rng(7))
  b = geom.random_system(3, 2, 3, np.random.default_rng(7))
  assert repr(a) == repr(b)
  assert a.degree <= 3
  assert 1 <= len(a.polys) <= 2


def test_inclusion_exclusion():
  def count(cset):
    return geom.count_points(cset, 2)

  rng = np.random.default_rng(13)
  for _ in range(10):
    a = geom.Variety(geom.random_system(2, 2, 3, rng))
    b = geom.Variety(geom.random_system(2, 2, 3, rng))
    assert count(a | b) == count(a) + count(b) - count(a & b)
    assert count(a) + count(geom.affine_space(2, 2) - a) == 16


@pytest.mark.parametrize("d, expected", [(1, 0), (2, 0), (3, 0), (4, 1344)])
def test_count_omega3_over_f2(d, expected):
  # (16 - 2)(16 - 4)(16 - 8) at d = 4
  assert geom.count_points(geom.omega_set(2, 3), d) == expected
