from fractions import Fraction

import pytest

from holodense.curve_places import LPoly, l_polynomial, validate_curve
from holodense.errors import InputError
from holodense.field_tower import make_prime_field
from holodense.zeta_density import (GenericRing, affine_place_counts, density_elliptic, density_enclosure,
                                    density_finite_complement, density_finite_support, density_rational,
                                    round_outward, tail_bound, to_decimal, truncated_density)

RANDOM_CURVES = [(5, 1, 1), (5, 2, 1), (5, 1, 3), (7, 3, 2), (7, 1, 0), (7, 2, 3),
                 (11, 1, 6), (11, 2, 7), (11, 5, 1), (11, 0, 3)]


def test_rational_closed_form():
    assert density_rational(2, 2) == Fraction(1, 2)
    assert density_rational(3, 3) == Fraction(8, 9)
    assert density_rational(2, 3) == Fraction(3, 4)
    with pytest.raises(InputError):
        density_rational(2, 1)
    with pytest.raises(InputError):
        density_rational(6, 2)


def test_elliptic_density_uses_the_class_number_sign(E5):
    assert density_elliptic(E5, 2) == Fraction(100, 141)
    assert density_elliptic(E5, 2) != Fraction(100, 111)


@pytest.mark.parametrize("q, a, b", RANDOM_CURVES)
def test_elliptic_density_is_the_one_point_complement(q, a, b):
    E = validate_curve(make_prime_field(q), a, b)
    for m in (2, 3):
        assert density_elliptic(E, m) == density_finite_complement(l_polynomial(E), [1], m)


def test_projective_line_minus_two_points():
    assert density_finite_complement(LPoly(2, 0, (1,)), [1, 1], 2) == Fraction(2, 3)


def test_empty_removed_set_is_rejected():
    with pytest.raises(InputError):
        density_finite_complement(LPoly(2, 0, (1,)), [], 2)


def test_finite_support():
    assert density_finite_support(2, [1, 1], 2) == Fraction(9, 16)
    assert density_finite_support(3, [2], 2) == Fraction(80, 81)
    with pytest.raises(InputError):
        density_finite_support(2, [], 2)


def test_densities_lie_strictly_between_zero_and_one(E5):
    for m in range(2, 7):
        for value in (density_rational(5, m), density_elliptic(E5, m)):
            assert 0 < value < 1


def test_densities_increase_with_m(E5):
    values = [density_elliptic(E5, m) for m in range(2, 7)]
    assert values == sorted(values) and len(set(values)) == len(values)
    values = [density_rational(3, m) for m in range(2, 7)]
    assert values == sorted(values)


def test_truncated_density(E5):
    q, B = affine_place_counts(E5, 3)
    assert (q, B) == (5, [8, 9, 33])
    assert truncated_density([], 5, 2) == 1
    assert truncated_density(B[:1], 5, 2) == Fraction(24, 25) ** 8
    assert truncated_density(B, 5, 2) == (Fraction(24, 25) ** 8 * Fraction(624, 625) ** 9
                                          * (1 - Fraction(1, 5 ** 6)) ** 33)


def test_truncated_density_decreases_towards_the_limit(E5):
    q, B = affine_place_counts(E5, 8)
    values = [truncated_density(B[:t], q, 2) for t in range(0, 9)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] > density_elliptic(E5, 2)


def test_tail_bound_decreases_in_t():
    for g, q in ((0, 2), (1, 5), (2, 3)):
        bounds = [tail_bound(q, g, 2, t) for t in range(0, 12)]
        assert all(a > b > 0 for a, b in zip(bounds, bounds[1:]))
    assert tail_bound(2, 0, 2, 40) < Fraction(1, 10 ** 10)


def test_tail_bound_accepts_explicit_place_counts(E5):
    q, B = affine_place_counts(E5, 8)
    sharper = tail_bound(q, 1, 2, 4, bd_bounds=B[4:8])
    assert sharper <= tail_bound(q, 1, 2, 4)
    with pytest.raises(InputError):
        tail_bound(q, 1, 1, 4)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("t", range(1, 9))
def test_sandwich_on_the_rational_line(m, t):
    enclosure = density_enclosure(make_prime_field(2), m, t)
    assert enclosure.contains(Fraction(1) - Fraction(1, 2 ** (m - 1)))
    if t == 8:
        assert enclosure.width < Fraction(1, 1000)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("t", range(1, 9))
def test_sandwich_on_the_reference_curve(E5, m, t):
    enclosure = density_enclosure(E5, m, t)
    assert enclosure.contains(density_elliptic(E5, m))
    if t == 8:
        assert enclosure.width < Fraction(1, 1000)


def test_truncated_product_rules_out_the_literal_sign(E5):
    enclosure = density_enclosure(E5, 2, 6)
    assert enclosure.contains(Fraction(100, 141))
    assert not enclosure.contains(Fraction(100, 111))


def test_enclosure_width_shrinks(E5):
    assert density_enclosure(E5, 2, 6).width < density_enclosure(E5, 2, 2).width
    assert density_enclosure(make_prime_field(2), 3, 5).contains(Fraction(3, 4))
    assert density_enclosure(E5, 2, 4).contains(Fraction(100, 141))


def test_generic_ring_enclosure():
    ring = GenericRing(LPoly(2, 0, (1,)), (1, 1))
    enclosure = density_enclosure(ring, 2, 8)
    assert enclosure.exact == Fraction(2, 3)
    assert enclosure.contains(Fraction(2, 3))
    assert affine_place_counts(ring, 2) == (2, [1, 1])


def test_generic_ring_matches_the_curve(E5):
    ring = GenericRing(l_polynomial(E5), (1,))
    for t in (1, 4, 7):
        assert density_enclosure(ring, 2, t) == density_enclosure(E5, 2, t)


def test_removing_more_places_than_exist():
    ring = GenericRing(LPoly(2, 0, (1,)), (1, 1, 1, 1))
    with pytest.raises(InputError):
        affine_place_counts(ring, 2)


def test_enclosure_json_form(E5):
    data = density_enclosure(E5, 2, 6).to_dict(precision=12)
    assert data['exact'] == "100/141"
    assert data['decimal'] == "0.709219858156"
    assert data['truncated_t'] == 6
    lower, upper = (Fraction(v) for v in data['interval'])
    assert lower <= Fraction(100, 141) <= upper


def test_decimal_rendering():
    assert to_decimal(Fraction(1, 2)) == "0.5"
    assert to_decimal(Fraction(2, 3), 5) == "0.66667"


def test_enclosure_json_endpoints_are_rounded_outward(E5):
    enclosure = density_enclosure(E5, 2, 6)
    data = enclosure.to_dict(precision=30)
    lower, upper = (Fraction(v) for v in data['interval'])
    assert lower <= enclosure.lower and enclosure.upper <= upper
    assert (10 ** 30) % lower.denominator == 0 and (10 ** 30) % upper.denominator == 0
    assert Fraction(data['tail']) >= enclosure.tail
    assert upper - lower < enclosure.width + Fraction(2, 10 ** 30)


def test_round_outward():
    assert round_outward(Fraction(2, 3), 3, up=False) == Fraction(666, 1000)
    assert round_outward(Fraction(2, 3), 3, up=True) == Fraction(667, 1000)
    assert round_outward(Fraction(1, 4), 2, up=True) == Fraction(1, 4)
    assert round_outward(Fraction(0), 5, up=False) == 0
