"""Dense univariate polynomials over a FieldDesc"""
from __future__ import annotations

import functools
import itertools
import re
from typing import Iterator, List, Sequence, Tuple

import numpy as np
from sympy import divisors, primefactors
from sympy.ntheory import mobius

from .errors import InputError
from .field_tower import (FieldDesc, FieldElem, raw_add, raw_divmod, raw_mul, raw_scale,
                          raw_sub, raw_xgcd, strip)


class _MinusInfinity:
    """Degree of the zero polynomial: below every integer, no arithmetic."""
    __slots__ = ()

    def __lt__(self, other):
        return not isinstance(other, _MinusInfinity)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _MinusInfinity)

    def __eq__(self, other):
        return isinstance(other, _MinusInfinity)

    def __hash__(self):
        return hash('-oo')

    def __repr__(self):
        return '-oo'


MINUS_INFINITY = _MinusInfinity()


class Poly:
    """Immutable polynomial; coefficients are reps of `field`, low degree first, no trailing zeros."""
    __slots__ = ('field', 'coeffs')

    def __init__(self, field: FieldDesc, coeffs: Sequence = ()):
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'coeffs', tuple(strip(field, coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.field, self.coeffs))

    # -- constructors

    @classmethod
    def from_ints(cls, field: FieldDesc, ints: Sequence[int]) -> 'Poly':
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def from_elems(cls, field: FieldDesc, elems: Sequence[FieldElem]) -> 'Poly':
        return cls(field, [field.coerce(e) for e in elems])

    @classmethod
    def x(cls, field: FieldDesc) -> 'Poly':
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field: FieldDesc, value) -> 'Poly':
        return cls(field, [field.coerce(value)])

    # -- structure

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> FieldElem:
        if not self.coeffs:
            raise InputError("zero polynomial has no leading coefficient")
        return FieldElem(self.field, self.coeffs[-1])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> 'Poly':
        if not self.coeffs or self.is_monic():
            return self
        return Poly(self.field, raw_scale(self.field, self.coeffs, self.field.inv(self.coeffs[-1])))

    def coefficients(self) -> List[FieldElem]:
        return [FieldElem(self.field, c) for c in self.coeffs]

    # -- ring operations

    def _check(self, other) -> 'Poly':
        if isinstance(other, (int, FieldElem)):
            return Poly.constant(self.field, other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.field != self.field:
            raise InputError(f"mixed owners: {self.field!r} and {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.field, raw_add(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.field, raw_sub(self.field, self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Poly(self.field, raw_mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        q, r = raw_divmod(self.field, self.coeffs, other.coeffs)
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def pow_mod(self, e: int, modulus: 'Poly') -> 'Poly':
        result = Poly.constant(self.field, 1) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self == Poly.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __call__(self, a: FieldElem) -> FieldElem:
        return evaluate(self, a)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == F.zero:
                continue
            coeff = F.format_rep(c)
            if i == 0:
                terms.append(coeff)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == F.one else f"{coeff}*{mono}")
        return " + ".join(reversed(terms))


def poly_arith(op: str, f: Poly, g: Poly):
    if op == 'add':
        return f + g
    if op == 'sub':
        return f - g
    if op == 'mul':
        return f * g
    if op == 'divmod':
        return divmod(f, g)
    raise InputError(f"unknown polynomial operation {op!r}")


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    if f.field != g.field:
        raise InputError(f"mixed owners: {f.field!r} and {g.field!r}")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def gcdex(f: Poly, g: Poly) -> Tuple[Poly, Poly, Poly]:
    """(d, s, t) with d = gcd(f, g) monic and s*f + t*g = d."""
    if f.field != g.field:
        raise InputError(f"mixed owners: {f.field!r} and {g.field!r}")
    F = f.field
    d, s, t = raw_xgcd(F, f.coeffs, g.coeffs)
    if not d:
        return Poly(F), Poly(F), Poly(F)
    inv_lc = F.inv(d[-1])
    return (Poly(F, raw_scale(F, d, inv_lc)), Poly(F, raw_scale(F, s, inv_lc)),
            Poly(F, raw_scale(F, t, inv_lc)))


def _frobenius_powers_of_x(f: Poly, count: int) -> List[Poly]:
    """[x^(Q^1), ..., x^(Q^count)] mod f with Q = |field|."""
    Q = f.field.order
    h = Poly.x(f.field) % f
    powers = []
    for _ in range(count):
        h = h.pow_mod(Q, f)
        powers.append(h)
    return powers


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^(Q^n) = x mod f and gcd(x^(Q^(n/r)) - x, f) = 1 for primes r | n."""
    if f.is_zero() or f.degree < 1:
        raise InputError("irreducibility is undefined for constants")
    f = f.monic()
    n = f.degree
    if n == 1:
        return True
    x = Poly.x(f.field) % f
    powers = _frobenius_powers_of_x(f, n)
    if powers[n - 1] != x:
        return False
    for r in primefactors(n):
        if gcd(powers[n // r - 1] - x, f).degree > 0:
            return False
    return True


def _monic_candidates(F: FieldDesc, d: int) -> Iterator[Poly]:
    # (c_0, ..., c_{d-1}) lexicographic with c_0 most significant
    for digits in itertools.product(range(F.order), repeat=d):
        yield Poly(F, [F.element_at(i) for i in digits] + [F.one])


def first_monic_irreducible(F: FieldDesc, d: int) -> Poly:
    for candidate in _monic_candidates(F, d):
        if is_irreducible(candidate):
            return candidate
    raise InputError(f"no irreducible of degree {d} over {F!r}")


@functools.lru_cache(maxsize=256)
def monic_irreducibles(F: FieldDesc, d: int) -> Tuple[Poly, ...]:
    if d < 1:
        raise InputError(f"degree must be >= 1, got {d}")
    return tuple(c for c in _monic_candidates(F, d) if is_irreducible(c))


def enumerate_monic_irreducibles(F: FieldDesc, d: int) -> Iterator[Poly]:
    return iter(monic_irreducibles(F, d))


def count_monic_irreducibles(q: int, d: int) -> int:
    """(1/d) * sum_{e | d} mu(d/e) q^e."""
    return sum(int(mobius(d // e)) * q ** e for e in divisors(d)) // d


def evaluate(f: Poly, a: FieldElem) -> FieldElem:
    """Horner evaluation in a's owner, which must be f's field or an extension of it."""
    K = a.field
    if f.field not in K.tower():
        raise InputError(f"cannot evaluate a polynomial over {f.field!r} at a point of {K!r}")
    acc = K.zero
    for c in reversed(f.coeffs):
        acc = K.add(K.mul(acc, a.rep), K.lift(c, f.field))
    return FieldElem(K, acc)


def distinct_degree_parts(f: Poly) -> List[Tuple[int, Poly]]:
    """[(e, P_e)]: P_e is the product of the distinct monic irreducible factors of degree e."""
    f = f.monic()
    if f.degree < 1:
        return []
    x = Poly.x(f.field) % f
    parts, found = [], {}
    h = x
    for e in range(1, f.degree + 1):
        h = h.pow_mod(f.field.order, f)
        part = gcd(h - x, f)
        for k, prev in found.items():
            if e % k == 0:
                part = part // gcd(part, prev)
        if part.degree > 0:
            found[e] = part
            parts.append((e, part))
    return parts


def _equal_degree_split(f: Poly, e: int, rng) -> List[Poly]:
    # Cantor-Zassenhaus, odd characteristic
    if f.degree == e:
        return [f]
    F = f.field
    exponent = (F.order ** e - 1) // 2
    while True:
        a = Poly(F, F.random_reps(rng, f.degree))
        if a.degree < 1:
            continue
        d = gcd(a, f)
        if 0 < d.degree < f.degree:
            break
        d = gcd(a.pow_mod(exponent, f) - 1, f)
        if 0 < d.degree < f.degree:
            break
    return _equal_degree_split(d, e, rng) + _equal_degree_split(f // d, e, rng)


def distinct_irreducible_factors(f: Poly, seed: int = 0) -> List[Poly]:
    """Monic irreducible factors of f without multiplicity (odd characteristic)."""
    if f.field.p == 2:
        raise InputError("equal-degree splitting needs odd characteristic")
    rng = np.random.default_rng(seed)
    factors = []
    for e, part in distinct_degree_parts(f):
        factors.extend(h.monic() for h in _equal_degree_split(part, e, rng))
    return sorted(factors, key=lambda h: (h.degree, h.coeffs))


_INT_LIST = re.compile(r'^\s*-?\d+(\s*,\s*-?\d+)*\s*$')


def parse_poly(F: FieldDesc, text: str) -> Poly:
    """'1,1,0,1' -> 1 + x + x^3 over the prime field of F."""
    if not _INT_LIST.match(text or ''):
        raise InputError(f"expected comma-separated integers, got {text!r}")
    return Poly.from_ints(F, [int(t) for t in text.split(',')])


def format_poly(f: Poly) -> str:
    if not f.field.is_prime:
        raise InputError("integer text form only covers prime-field coefficients")
    return ",".join(str(c) for c in f.coeffs) if f.coeffs else "0"
