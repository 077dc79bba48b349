import pytest
from sympy import divisors

from holodense.curve_places import (AffinePoint, LPoly, count_points_bruteforce, counts_from_lpoly,
                                    enumerate_affine_places, evaluate_at_place, frobenius_traces,
                                    hasse_holds, l_polynomial, place_counts, places_of_degree,
                                    projective_place_counts, split_range, traces_and_counts,
                                    validate_curve)
from holodense.errors import GuardLimitExceeded, InconsistentCounts, InputError
from holodense.field_tower import make_extension, make_prime_field
from holodense.rr_space import rr_basis, rr_element

CURVES = [(5, 1, 1), (5, 2, 1), (7, 3, 2), (7, 1, 0), (11, 1, 6), (11, 2, 7)]


def _curve(q, a, b):
    return validate_curve(make_prime_field(q), a, b)


def test_point_counts_of_the_reference_curve(E5):
    assert [count_points_bruteforce(E5, d) for d in (1, 2, 3)] == [9, 27, 108]
    assert traces_and_counts(E5, 3) == [9, 27, 108]
    assert place_counts(E5, 3) == [8, 9, 33]
    assert l_polynomial(E5).coefficients == (1, 3, 5)
    assert l_polynomial(E5)(1) == 9
    assert l_polynomial(E5).class_number == 9


@pytest.mark.parametrize("q, a, b", CURVES)
def test_recursion_matches_brute_force(q, a, b):
    E = _curve(q, a, b)
    dmax = 3 if q < 11 else 2
    assert traces_and_counts(E, dmax) == [count_points_bruteforce(E, d) for d in range(1, dmax + 1)]


@pytest.mark.slow
@pytest.mark.parametrize("d", [4, 5, 6])
def test_recursion_matches_brute_force_to_degree_six(E5, d):
    assert traces_and_counts(E5, d)[-1] == count_points_bruteforce(E5, d)


def test_parallel_count_matches_serial(E5):
    assert count_points_bruteforce(E5, 3, workers=3) == count_points_bruteforce(E5, 3) == 108


@pytest.mark.parametrize("q, a, b", CURVES)
def test_hasse_bound_and_place_count_identity(q, a, b):
    E = _curve(q, a, b)
    counts = traces_and_counts(E, 8)
    places = projective_place_counts(counts)
    for d, n_d in enumerate(counts, start=1):
        assert hasse_holds(q, d, q ** d + 1 - n_d)
        assert sum(e * places[e - 1] for e in divisors(d)) == n_d


@pytest.mark.parametrize("q, a, b", CURVES)
def test_counts_from_lpoly_reproduce_the_trace_recursion(q, a, b):
    E = _curve(q, a, b)
    assert counts_from_lpoly(l_polynomial(E), 7) == traces_and_counts(E, 7)


def test_frobenius_traces(E5):
    assert frobenius_traces(5, -3, 3) == [-3, -1, 18]


def test_genus_zero_lpoly_counts_the_projective_line():
    L = LPoly.from_coefficients(2, [1])
    assert counts_from_lpoly(L, 4) == [3, 5, 9, 17]
    assert projective_place_counts(counts_from_lpoly(L, 4)) == [3, 1, 2, 3]


@pytest.mark.parametrize("coefficients", [[2, 3, 5], [1, 3], [1, 3, 4], []])
def test_invalid_lpolys(coefficients):
    with pytest.raises(InputError):
        LPoly.from_coefficients(5, coefficients)


def test_inconsistent_counts_are_rejected():
    with pytest.raises(InconsistentCounts):
        projective_place_counts([1, 2])


def test_singular_and_small_characteristic_curves_are_rejected():
    with pytest.raises(InputError):
        validate_curve(make_prime_field(5), 0, 0)
    with pytest.raises(InputError):
        validate_curve(make_prime_field(3), 1, 1)


def test_curves_over_extension_fields():
    F25 = make_extension(make_prime_field(5), 2)
    E = validate_curve(F25, 1, 1)
    # base change of E/F_5: #E(F_25) = N_2 = 27
    assert count_points_bruteforce(E, 1) == 27


def test_places_of_degree_match_the_counts(E5):
    for d, expected in enumerate([8, 9, 33], start=1):
        found = places_of_degree(E5, d)
        assert len(found) == expected
        assert all(P.degree == d and P.representative.on_curve(E5) for P in found)
        assert all(len(P.orbit()) == d for P in found)


def test_rational_places_of_the_reference_curve(E5):
    points = {(int(P.representative.x.rep), int(P.representative.y.rep)) for P in places_of_degree(E5, 1)}
    assert points == {(0, 1), (0, 4), (2, 1), (2, 4), (3, 1), (3, 4), (4, 2), (4, 3)}


def test_place_enumeration_guard(E5):
    assert len(list(enumerate_affine_places(E5, 2))) == 17
    with pytest.raises(GuardLimitExceeded):
        list(enumerate_affine_places(E5, 4, guard=100))
    with pytest.raises(GuardLimitExceeded):
        count_points_bruteforce(E5, 4, guard=100)


def test_evaluation_at_a_place(E5):
    space = rr_basis(E5, 3)
    P = next(P for P in places_of_degree(E5, 1)
             if (P.representative.x.rep, P.representative.y.rep) == (2, 1))
    assert not evaluate_at_place(rr_element(space, [-2, 1, 0]), P)
    assert not evaluate_at_place(rr_element(space, [-1, 0, 1]), P)
    assert evaluate_at_place(rr_element(space, [0, 1, 0]), P) == 2


def test_points_off_the_curve(E5):
    F5 = E5.field
    assert not AffinePoint(F5, F5(1), F5(1)).on_curve(E5)


def test_split_range_covers_everything():
    ranges = split_range(10, 3)
    assert ranges == [(0, 4), (4, 7), (7, 10)]
    assert split_range(2, 5) == [(0, 1), (1, 2)]
