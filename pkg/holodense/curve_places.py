"""Curve Places: elliptic curves y^2 = x^3 + ax + b, point counts, L-polynomials, closed points"""
from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator, List, Optional, Sequence, Tuple

from sympy import divisors
from sympy.ntheory import mobius

from .errors import GuardLimitExceeded, InconsistentCounts, InputError
from .field_tower import FieldDesc, FieldElem, extension_of_degree
from .poly import Poly

if TYPE_CHECKING:
    from .rr_space import RRElement

DEFAULT_POINT_GUARD = 10 ** 7


@dataclass(frozen=True)
class CurveDesc:
    field: FieldDesc
    a: FieldElem
    b: FieldElem
    genus: int = 1

    @property
    def q(self) -> int:
        return self.field.order

    def rhs(self, K: FieldDesc, x):
        """x^3 + a x + b for a rep x of K."""
        a = K.lift(self.a.rep, self.field)
        b = K.lift(self.b.rep, self.field)
        x2 = K.mul(x, x)
        return K.add(K.mul(K.add(x2, a), x), b)

    def rhs_poly(self) -> Poly:
        F = self.field
        return Poly(F, [self.b.rep, self.a.rep, F.zero, F.one])

    def __repr__(self):
        return f"E: y^2 = x^3 + {self.a!r}x + {self.b!r} over {self.field!r}"


@dataclass(frozen=True)
class AffinePoint:
    field: FieldDesc
    x: FieldElem
    y: FieldElem

    def on_curve(self, E: CurveDesc) -> bool:
        K = self.field
        return K.mul(self.y.rep, self.y.rep) == E.rhs(K, self.x.rep)

    def conjugate(self, E: CurveDesc) -> 'AffinePoint':
        q = E.field.order
        return AffinePoint(self.field, self.x ** q, self.y ** q)


@dataclass(frozen=True)
class Place:
    """A closed point of degree d, held by one representative over F_{q^d}."""
    curve: CurveDesc
    degree: int
    representative: AffinePoint

    def orbit(self) -> Tuple[AffinePoint, ...]:
        return frobenius_orbit(self.curve, self.representative)


@dataclass(frozen=True)
class LPoly:
    q: int
    genus: int
    coefficients: Tuple[int, ...]

    @classmethod
    def from_coefficients(cls, q: int, coefficients: Sequence[int]) -> 'LPoly':
        """Validate L(0) = 1, degree 2g and the functional equation c_{2g-i} = q^{g-i} c_i."""
        coefficients = tuple(int(c) for c in coefficients)
        if not coefficients or coefficients[0] != 1:
            raise InputError("L-polynomial must satisfy L(0) = 1")
        if len(coefficients) % 2 == 0:
            raise InputError("L-polynomial must have even degree 2g")
        g = (len(coefficients) - 1) // 2
        for i in range(g):
            if coefficients[2 * g - i] != q ** (g - i) * coefficients[i]:
                raise InputError(f"coefficients {list(coefficients)} violate the functional equation for q = {q}")
        return cls(q, g, coefficients)

    def __call__(self, T) -> Fraction:
        T = Fraction(T)
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * T + c
        return value

    @property
    def class_number(self) -> int:
        return sum(self.coefficients)


def validate_curve(base: FieldDesc, a, b) -> CurveDesc:
    if base.p in (2, 3):
        raise InputError(f"characteristic {base.p} is not supported (need >= 5)")
    a, b = base(a), base(b)
    if 4 * a ** 3 + 27 * b ** 2 == 0:
        raise InputError(f"singular curve: 4a^3 + 27b^2 = 0 for a={a!r}, b={b!r}")
    return CurveDesc(base, a, b)


def _count_affine_range(E: CurveDesc, d: int, start: int, stop: int) -> int:
    K = extension_of_degree(E.field, d)
    total = 0
    for i in range(start, stop):
        total += 1 + K.quadratic_character(E.rhs(K, K.element_at(i)))
    return total


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """Contiguous [start, stop) ranges covering range(total)."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    ranges, start = [], 0
    for k in range(parts):
        stop = start + step + (1 if k < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def count_points_bruteforce(E: CurveDesc, d: int, guard: int = DEFAULT_POINT_GUARD,
                            workers: int = 1) -> int:
    """#E(F_{q^d}) by scanning x with the quadratic character of x^3 + ax + b, plus P_inf."""
    if d < 1:
        raise InputError(f"extension degree must be >= 1, got {d}")
    size = E.field.order ** d
    if size > guard:
        raise GuardLimitExceeded(f"point scan over F_{E.field.order}^{d}", size, guard)
    K = extension_of_degree(E.field, d)
    ranges = split_range(K.order, workers)
    if workers <= 1 or len(ranges) == 1:
        affine = _count_affine_range(E, d, 0, K.order)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_count_affine_range, E, d, lo, hi) for lo, hi in ranges]
            affine = sum(f.result() for f in futures)
    return 1 + affine


def frobenius_traces(q: int, a1: int, dmax: int) -> List[int]:
    """a_1..a_dmax with a_0 = 2, a_{k+1} = a_1 a_k - q a_{k-1}."""
    traces = [2, a1]
    while len(traces) <= dmax:
        traces.append(a1 * traces[-1] - q * traces[-2])
    return traces[1:dmax + 1]


def traces_and_counts(E: CurveDesc, dmax: int, n1: Optional[int] = None,
                      guard: int = DEFAULT_POINT_GUARD) -> List[int]:
    q = E.field.order
    if n1 is None:
        n1 = count_points_bruteforce(E, 1, guard)
    traces = frobenius_traces(q, q + 1 - n1, dmax)
    return [q ** k + 1 - a for k, a in enumerate(traces, start=1)]


def l_polynomial(E: CurveDesc, n1: Optional[int] = None) -> LPoly:
    """L(T) = 1 - a_q T + q T^2 with a_q = q + 1 - #E(F_q), so that L(1) = #E(F_q)."""
    q = E.field.order
    if n1 is None:
        n1 = count_points_bruteforce(E, 1)
    return LPoly(q, 1, (1, -(q + 1 - n1), q))


def counts_from_lpoly(L: LPoly, dmax: int) -> List[int]:
    """N_1..N_dmax from Newton's identities on T L'(T)/L(T) = -sum s_k T^k."""
    c = list(L.coefficients) + [0] * max(0, dmax + 1 - len(L.coefficients))
    s = [0]
    for k in range(1, dmax + 1):
        s.append(-k * c[k] - sum(c[i] * s[k - i] for i in range(1, k)))
    return [L.q ** k + 1 - s[k] for k in range(1, dmax + 1)]


def projective_place_counts(counts: Sequence[int]) -> List[int]:
    """Invert sum_{e | d} e B_e = N_d."""
    places = []
    for d in range(1, len(counts) + 1):
        total = sum(int(mobius(d // e)) * counts[e - 1] for e in divisors(d))
        if total < 0 or total % d:
            raise InconsistentCounts(f"counts {list(counts)} give {total}/{d} places of degree {d}")
        places.append(total // d)
    return places


def place_counts(E: CurveDesc, dmax: int, counts: Optional[Sequence[int]] = None) -> List[int]:
    """Affine place counts B_1..B_dmax (P_inf removed from degree 1)."""
    if counts is None:
        counts = traces_and_counts(E, dmax)
    places = projective_place_counts(list(counts)[:dmax])
    places[0] -= 1
    if places[0] < 0:
        raise InconsistentCounts("no rational point left after removing P_inf")
    return places


def frobenius_orbit(E: CurveDesc, point: AffinePoint, limit: Optional[int] = None) -> Tuple[AffinePoint, ...]:
    orbit = [point]
    current = point.conjugate(E)
    while current != point:
        orbit.append(current)
        if limit is not None and len(orbit) > limit:
            break
        current = current.conjugate(E)
    return tuple(orbit)


def place_of_point(E: CurveDesc, point: AffinePoint) -> Place:
    return Place(E, len(frobenius_orbit(E, point)), point)


def _places_of_degree(E: CurveDesc, d: int) -> Iterator[Place]:
    K = extension_of_degree(E.field, d)
    seen = set()
    for i in range(K.order):
        x = K.element_at(i)
        c = E.rhs(K, x)
        root = K.sqrt(c)
        if root is None:
            continue
        ys = [root] if root == K.zero else [root, K.neg(root)]
        for y in ys:
            if (x, y) in seen:
                continue
            point = AffinePoint(K, K.elem(x), K.elem(y))
            orbit = frobenius_orbit(E, point, limit=d)
            seen.update((p.x.rep, p.y.rep) for p in orbit)
            if len(orbit) == d:
                yield Place(E, d, point)


@functools.lru_cache(maxsize=128)
def places_of_degree(E: CurveDesc, d: int) -> Tuple[Place, ...]:
    return tuple(_places_of_degree(E, d))


def enumerate_affine_places(E: CurveDesc, dmax: int, guard: int = DEFAULT_POINT_GUARD) -> Iterator[Place]:
    """One representative per Frobenius orbit of exact degree d, for d = 1..dmax."""
    size = E.field.order ** dmax
    if size > guard:
        raise GuardLimitExceeded(f"place scan over F_{E.field.order}^{dmax}", size, guard)
    for d in range(1, dmax + 1):
        yield from places_of_degree(E, d)


def evaluate_at_place(f: 'RRElement', P: Place) -> FieldElem:
    """f(representative); zero iff f lies in the maximal ideal of P."""
    if f.space.curve != P.curve:
        raise InputError("element and place belong to different curves")
    F = f.space.field
    K = P.representative.field
    x, y = P.representative.x.rep, P.representative.y.rep
    total = K.zero
    for (i, j), c in zip(f.space.basis, f.coeffs):
        if c == F.zero:
            continue
        term = K.mul(K.lift(c, F), K.pow(x, i))
        if j:
            term = K.mul(term, y)
        total = K.add(total, term)
    return K.elem(total)


def hasse_holds(q: int, k: int, a_k: int, genus: int = 1) -> bool:
    """|a_k| <= 2g q^(k/2), in exact integers."""
    return a_k * a_k <= 4 * genus * genus * q ** k
