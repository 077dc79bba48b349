"""Coprimality oracles: does an m-tuple generate the unit ideal of its holomorphy ring?"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import List, Optional, Sequence, Tuple, Union

from .curve_places import (AffinePoint, CurveDesc, Place, evaluate_at_place, places_of_degree,
                           place_of_point)
from .errors import GuardLimitExceeded, InputError
from .field_tower import FieldDesc, make_extension, make_residue_field
from .poly import Poly, distinct_irreducible_factors, evaluate, gcd, gcdex, monic_irreducibles
from .rr_space import ELLIPTIC, RATIONAL, RRElement, SpaceDesc, pole_degree

NORM_SEARCH = 'norm'
SCAN_SEARCH = 'scan'
DEFAULT_PLACE_GUARD = 10 ** 6

RationalPlace = Poly
AnyPlace = Union[Place, RationalPlace]


@dataclass(frozen=True)
class TupleSample:
    components: Tuple[RRElement, ...]

    def __post_init__(self):
        if len(self.components) < 2:
            raise InputError(f"tuples need m >= 2 components, got {len(self.components)}")
        space = self.components[0].space
        if any(f.space != space for f in self.components):
            raise InputError("tuple components live in different spaces")

    @property
    def space(self) -> SpaceDesc:
        return self.components[0].space

    @property
    def m(self) -> int:
        return len(self.components)

    def nonzero(self) -> List[RRElement]:
        return [f for f in self.components if not f.is_zero()]

    def __repr__(self):
        return "(" + ", ".join(repr(f) for f in self.components) + ")"


# -- rational ring F_q[x]

def coprime_gcd_oracle(sample: TupleSample) -> bool:
    """gcd of the nonzero components is a constant; the zero tuple is not coprime."""
    if sample.space.kind != RATIONAL:
        raise InputError("the gcd oracle needs the rational space")
    polys = [f.to_poly() for f in sample.nonzero()]
    if not polys:
        return False
    return reduce(gcd, polys).degree == 0


def _trial_division_factors(f: Poly) -> List[Poly]:
    """Distinct monic irreducible factors of f by trial division with enumerated irreducibles."""
    factors = []
    rest = f.monic()
    d = 1
    while 2 * d <= rest.degree:
        for h in monic_irreducibles(f.field, d):
            quotient, remainder = divmod(rest, h)
            if remainder.is_zero():
                factors.append(h)
                rest = quotient
                while True:
                    quotient, remainder = divmod(rest, h)
                    if not remainder.is_zero():
                        break
                    rest = quotient
        d += 1
    if rest.degree >= 1:
        factors.append(rest.monic())
    return factors


def irreducible_divisor_oracle(sample: TupleSample) -> bool:
    """No monic irreducible of degree <= n divides every component."""
    if sample.space.kind != RATIONAL:
        raise InputError("the irreducible-divisor oracle needs the rational space")
    polys = [f.to_poly() for f in sample.nonzero()]
    if not polys:
        return False
    shortest = min(polys, key=lambda p: p.degree)
    for h in _trial_division_factors(shortest):
        if all((p % h).is_zero() for p in polys):
            return False
    return True


# -- elliptic ring A(E)

def _norm(f: RRElement, w: Poly) -> Poly:
    u, v = f.xy_parts()
    return u * u - v * v * w


def _residue_root(h: Poly) -> Tuple[FieldDesc, object]:
    """A field K = F[x]/(h) and the rep of a root of h in it."""
    F = h.field
    if h.degree == 1:
        return F, F.neg(h.coeffs[0])
    K = make_residue_field(F, h.coeffs)
    return K, (F.zero, F.one) + (F.zero,) * (h.degree - 2)


def _common_zero_over(E: CurveDesc, parts, h: Poly) -> Optional[AffinePoint]:
    K, x0 = _residue_root(h)
    xe = K.elem(x0)
    values = [(evaluate(u, xe).rep, evaluate(v, xe).rep) for u, v in parts]
    c = E.rhs(K, x0)
    forced = next(((a, b) for a, b in values if b != K.zero), None)
    if forced is not None:
        a, b = forced
        y0 = K.neg(K.div(a, b))
        if K.mul(y0, y0) != c:
            return None
        if all(K.add(ua, K.mul(vb, y0)) == K.zero for ua, vb in values):
            return AffinePoint(K, K.elem(x0), K.elem(y0))
        return None
    if any(a != K.zero for a, _ in values):
        return None
    # every component vanishes above x0 whatever y is
    y0 = K.sqrt(c)
    if y0 is None:
        K2 = make_extension(K, 2)
        return AffinePoint(K2, K2.elem(K2.lift(x0, K)), K2.elem(K2.sqrt(K2.lift(c, K))))
    return AffinePoint(K, K.elem(x0), K.elem(y0))


def _norm_search(sample: TupleSample) -> Optional[Place]:
    E = sample.space.curve
    w = E.rhs_poly()
    nonzero = sample.nonzero()
    g = reduce(gcd, (_norm(f, w) for f in nonzero))
    if g.degree < 1:
        return None
    parts = [f.xy_parts() for f in nonzero]
    for h in distinct_irreducible_factors(g):
        point = _common_zero_over(E, parts, h)
        if point is not None:
            return place_of_point(E, point)
    return None


def _scan_search(sample: TupleSample, dbound: int, guard: int) -> Optional[Place]:
    E = sample.space.curve
    size = E.field.order ** dbound
    if size > guard:
        raise GuardLimitExceeded(f"place scan up to degree {dbound}", size, guard)
    nonzero = sample.nonzero()
    for d in range(1, dbound + 1):
        for P in places_of_degree(E, d):
            if all(not evaluate_at_place(f, P) for f in nonzero):
                return P
    return None


def find_common_zero(sample: TupleSample, search: str = NORM_SEARCH,
                     guard: int = DEFAULT_PLACE_GUARD) -> Optional[Place]:
    """An affine place where every component vanishes, re-verified, or None."""
    if sample.space.kind != ELLIPTIC:
        raise InputError("the place oracle needs an elliptic space")
    nonzero = sample.nonzero()
    if not nonzero or any(f.is_constant() for f in nonzero):
        return None
    dbound = min(pole_degree(f) for f in nonzero)
    if search == SCAN_SEARCH:
        place = _scan_search(sample, dbound, guard)
    elif search == NORM_SEARCH:
        place = _norm_search(sample)
    else:
        raise InputError(f"unknown place search {search!r}")
    if place is not None:
        if place.degree > dbound or any(evaluate_at_place(f, place) for f in nonzero):
            raise AssertionError(f"witness {place} does not annihilate {sample}")
    return place


def coprime_place_oracle(sample: TupleSample, search: str = NORM_SEARCH,
                         guard: int = DEFAULT_PLACE_GUARD) -> bool:
    if not sample.nonzero():
        return False
    return find_common_zero(sample, search, guard) is None


def coprime_module_oracle(sample: TupleSample) -> bool:
    """Unit ideal iff the F_q[x]-module spanned by f_i and y f_i has unit Hermite diagonal."""
    if sample.space.kind != ELLIPTIC:
        raise InputError("the module oracle needs an elliptic space")
    nonzero = sample.nonzero()
    if not nonzero:
        return False
    w = sample.space.curve.rhs_poly()
    rows = []
    for f in nonzero:
        u, v = f.xy_parts()
        rows.append((u, v))
        rows.append((v * w, u))
    pivot = None
    second = []
    for a, b in rows:
        if a.is_zero():
            second.append(b)
        elif pivot is None:
            pivot = (a, b)
        else:
            a1, b1 = pivot
            d, s, t = gcdex(a1, a)
            pivot = (d, s * b1 + t * b)
            second.append((a // d) * b1 - (a1 // d) * b)
    if pivot is None:
        return False
    g1 = reduce(gcd, second, Poly(pivot[0].field))
    return pivot[0].degree == 0 and g1.degree == 0


# -- truncated conditions U_t

def vanishes_at(f: RRElement, place: AnyPlace) -> bool:
    if isinstance(place, Place):
        return not evaluate_at_place(f, place)
    return (f.to_poly() % place).is_zero()


def truncation_member(sample: TupleSample, places: Sequence[AnyPlace]) -> bool:
    """For every given place, some component does not vanish there."""
    return all(not all(vanishes_at(f, P) for f in sample.components) for P in places)


def first_places(space: SpaceDesc, t: int) -> List[AnyPlace]:
    """The first t places of S, ordered by degree then enumeration order."""
    places = []
    d = 1
    while len(places) < t:
        if space.kind == RATIONAL:
            batch = monic_irreducibles(space.field, d)
        else:
            batch = places_of_degree(space.curve, d)
        places.extend(batch[:t - len(places)])
        d += 1
    return places


def is_coprime(sample: TupleSample, search: str = NORM_SEARCH, guard: int = DEFAULT_PLACE_GUARD) -> bool:
    if sample.space.kind == RATIONAL:
        return coprime_gcd_oracle(sample)
    return coprime_place_oracle(sample, search, guard)
