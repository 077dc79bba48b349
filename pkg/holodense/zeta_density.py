"""Zeta Density: closed-form densities, truncated Euler products and their tail bounds

All values are exact Fractions; decimal rendering happens at the CLI boundary.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from decimal import Context
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .curve_places import (CurveDesc, LPoly, counts_from_lpoly, l_polynomial, place_counts,
                           projective_place_counts)
from .errors import EnclosureViolation, InputError
from .field_tower import FieldDesc, prime_power
from .poly import count_monic_irreducibles


@dataclass(frozen=True)
class GenericRing:
    """Holomorphy ring known only through its L-polynomial and the degrees of the removed places."""
    lpoly: LPoly
    removed: Tuple[int, ...]


DensityKind = Union[FieldDesc, CurveDesc, GenericRing]


@dataclass(frozen=True)
class DensityEnclosure:
    exact: Optional[Fraction]
    truncated: Fraction
    tail: Fraction
    t: int

    @property
    def lower(self) -> Fraction:
        return max(Fraction(0), self.truncated - self.tail)

    @property
    def upper(self) -> Fraction:
        return self.truncated

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, value) -> bool:
        return self.lower <= Fraction(value) <= self.upper

    def to_dict(self, precision: int = 30) -> Dict:
        shown = self.exact if self.exact is not None else self.truncated
        return {
            'exact': str(self.exact) if self.exact is not None else None,
            'decimal': to_decimal(shown, precision),
            'truncated_t': self.t,
            'interval': [str(round_outward(self.lower, precision, up=False)),
                         str(round_outward(self.upper, precision, up=True))],
            'tail': str(round_outward(self.tail, precision, up=True)),
        }


def round_outward(value: Fraction, digits: int, up: bool) -> Fraction:
    """Floor (or ceil) of value on the grid 10^-digits; exact products outgrow int-to-str limits."""
    scale = 10 ** digits
    quotient, remainder = divmod(value.numerator * scale, value.denominator)
    return Fraction(quotient + (1 if up and remainder else 0), scale)


def to_decimal(value: Fraction, precision: int = 30) -> str:
    ctx = Context(prec=precision)
    return str(ctx.divide(ctx.create_decimal(value.numerator), ctx.create_decimal(value.denominator)))


def _check_m(m: int):
    if m < 2:
        raise InputError(f"densities need m >= 2, got {m}")


def density_rational(q: int, m: int) -> Fraction:
    """1 - q^(1-m), the coprime density of F_q[x]."""
    _check_m(m)
    prime_power(q)
    return 1 - Fraction(1, q ** (m - 1))


def density_elliptic(E: CurveDesc, m: int, L: Optional[LPoly] = None) -> Fraction:
    """(1 - q^(1-m)) / L(q^-m) with L(T) = 1 - a_q T + q T^2."""
    _check_m(m)
    L = L or l_polynomial(E)
    q = E.field.order
    return (1 - Fraction(1, q ** (m - 1))) / L(Fraction(1, q ** m))


def density_finite_complement(L: LPoly, removed: Sequence[int], m: int) -> Fraction:
    """1/Z_H(q^-m) when finitely many places (of the given degrees) are removed."""
    _check_m(m)
    if not removed:
        raise InputError("the removed set must be nonempty")
    if any(d < 1 for d in removed):
        raise InputError(f"place degrees must be positive, got {list(removed)}")
    q = L.q
    T = Fraction(1, q ** m)
    zeta_h = L(T) / ((1 - T) * (1 - q * T))
    for d in removed:
        zeta_h *= 1 - T ** d
    return 1 / zeta_h


def density_finite_support(q: int, degrees: Sequence[int], m: int) -> Fraction:
    """prod_{P in S} (1 - q^(-m deg P)) when S itself is finite."""
    _check_m(m)
    if not degrees:
        raise InputError("S must be nonempty")
    value = Fraction(1)
    for d in degrees:
        value *= 1 - Fraction(1, q ** (m * d))
    return value


def truncated_density(B: Sequence[int], q: int, m: int) -> Fraction:
    """prod_{d=1..t} (1 - q^(-md))^(B_d), the density of U_t for all places up to degree t."""
    _check_m(m)
    value = Fraction(1)
    for d, count in enumerate(B, start=1):
        value *= (1 - Fraction(1, q ** (m * d))) ** count
    return value


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def _geometric_tail(ratio: Fraction, start: int) -> Fraction:
    """sum_{d >= start} ratio^d for 0 <= ratio < 1."""
    return ratio ** start / (1 - ratio)


def tail_bound(q: int, g: int, m: int, t: int, bd_bounds: Optional[Sequence[int]] = None) -> Fraction:
    """Rational U >= q^(gm) * sum_{d > t} B_d q^(-md).

    bd_bounds optionally gives upper bounds for B_{t+1}, ..., B_{t+k}; later degrees use
    B_d <= (q^d + 2g q^(d/2) + 1)/d with q^(d/2) <= ceil(sqrt q)^d and 1/d <= 1/(first degree).
    """
    _check_m(m)
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    bd_bounds = list(bd_bounds or [])
    head = sum((Fraction(b, q ** (m * d)) for d, b in enumerate(bd_bounds, start=t + 1)), Fraction(0))
    start = t + len(bd_bounds) + 1
    r = _ceil_sqrt(q)
    weil = (_geometric_tail(Fraction(q, q ** m), start)
            + 2 * g * _geometric_tail(Fraction(r, q ** m), start)
            + _geometric_tail(Fraction(1, q ** m), start)) / start
    return q ** (g * m) * (head + weil)


def affine_place_counts(kind: DensityKind, t: int) -> Tuple[int, List[int]]:
    """(q, [B_1..B_t]) for the places of S."""
    if isinstance(kind, FieldDesc):
        q = kind.order
        return q, [count_monic_irreducibles(q, d) for d in range(1, t + 1)]
    if isinstance(kind, CurveDesc):
        return kind.field.order, place_counts(kind, t) if t else []
    if isinstance(kind, GenericRing):
        L = kind.lpoly
        if not t:
            return L.q, []
        places = projective_place_counts(counts_from_lpoly(L, t))
        for d, k in Counter(kind.removed).items():
            if d <= t:
                if k > places[d - 1]:
                    raise InputError(f"cannot remove {k} places of degree {d}; only {places[d - 1]} exist")
                places[d - 1] -= k
        return L.q, places
    raise InputError(f"unknown density kind {kind!r}")


def exact_density(kind: DensityKind, m: int) -> Fraction:
    if isinstance(kind, FieldDesc):
        return density_rational(kind.order, m)
    if isinstance(kind, CurveDesc):
        return density_elliptic(kind, m)
    return density_finite_complement(kind.lpoly, kind.removed, m)


def genus_of(kind: DensityKind) -> int:
    if isinstance(kind, FieldDesc):
        return 0
    if isinstance(kind, CurveDesc):
        return kind.genus
    return kind.lpoly.genus


def density_enclosure(kind: DensityKind, m: int, t: int) -> DensityEnclosure:
    """[D(U_t) - tail, D(U_t)] around the exact density, which is checked to lie inside."""
    _check_m(m)
    q, B = affine_place_counts(kind, t)
    enclosure = DensityEnclosure(
        exact=exact_density(kind, m),
        truncated=truncated_density(B, q, m),
        tail=tail_bound(q, genus_of(kind), m, t),
        t=t,
    )
    if not enclosure.contains(enclosure.exact):
        raise EnclosureViolation(
            f"exact density {enclosure.exact} outside [{enclosure.lower}, {enclosure.upper}] at t={t}")
    return enclosure
