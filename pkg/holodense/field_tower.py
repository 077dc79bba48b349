"""Field Tower: prime fields F_p and relative extensions base[t]/(modulus)

Elements are stored as raw representations ("reps"): an int in [0, p) for a
prime field, a tuple of exactly d base reps (low degree first) for an
extension. FieldDesc does arithmetic on reps; FieldElem wraps a rep together
with its owner for operator use.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from sympy import factorint, isprime

from .errors import InputError


# -- coefficient-list helpers (lists of reps over one FieldDesc, low degree first)

def strip(F: 'FieldDesc', coeffs) -> list:
    n = len(coeffs)
    zero = F.zero
    while n and coeffs[n - 1] == zero:
        n -= 1
    return list(coeffs[:n])


def raw_add(F, f, g) -> list:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return strip(F, out)


def raw_sub(F, f, g) -> list:
    out = list(f) + [F.zero] * (len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = F.sub(out[i], c)
    return strip(F, out)


def raw_mul(F, f, g) -> list:
    if not f or not g:
        return []
    zero = F.zero
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == zero:
            continue
        for j, b in enumerate(g):
            if b != zero:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return strip(F, out)


def raw_scale(F, f, c) -> list:
    return strip(F, [F.mul(a, c) for a in f])


def raw_divmod(F, f, g) -> Tuple[list, list]:
    """Quotient and remainder of f by a nonzero stripped g."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    if len(f) <= dg:
        return [], strip(F, f)
    zero = F.zero
    inv_lc = F.inv(g[-1])
    r = list(f)
    q = [zero] * (len(f) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c == zero:
            continue
        c = F.mul(c, inv_lc)
        q[k - dg] = c
        for i in range(dg + 1):
            r[k - dg + i] = F.sub(r[k - dg + i], F.mul(c, g[i]))
    return strip(F, q), strip(F, r[:dg])


def raw_xgcd(F, f, g) -> Tuple[list, list, list]:
    """(d, s, t) with s*f + t*g = d; d is not normalised."""
    r0, r1 = strip(F, f), strip(F, g)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = raw_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, raw_sub(F, s0, raw_mul(F, q, s1))
        t0, t1 = t1, raw_sub(F, t0, raw_mul(F, q, t1))
    return r0, s0, t0


@dataclass(frozen=True, eq=False)
class FieldDesc:
    """F_p when base is None, otherwise base[t]/(modulus) with [F : base] = degree."""
    p: int
    base: Optional['FieldDesc'] = None
    modulus: Tuple = ()
    degree: int = 1
    order: int = field(init=False, repr=False)
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if self.base is None:
            order, key = self.p, (self.p,)
        else:
            order, key = self.base.order ** self.degree, (self.base._key, self.modulus)
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, '_key', key)

    def __eq__(self, other):
        return isinstance(other, FieldDesc) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.base is None:
            return f"F_{self.p}"
        return f"F_{self.order}[{self.base!r}, deg {self.degree}]"

    @property
    def is_prime(self) -> bool:
        return self.base is None

    @functools.cached_property
    def zero(self):
        return 0 if self.base is None else (self.base.zero,) * self.degree

    @functools.cached_property
    def one(self):
        if self.base is None:
            return 1
        return (self.base.one,) + (self.base.zero,) * (self.degree - 1)

    @property
    def modulus_poly(self):
        from .poly import Poly
        return Poly(self.base, self.modulus) if self.base is not None else None

    def tower(self) -> Tuple['FieldDesc', ...]:
        """This field followed by every field below it, down to F_p."""
        fields, F = [], self
        while F is not None:
            fields.append(F)
            F = F.base
        return tuple(fields)

    # -- arithmetic on reps

    def add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.base is None:
            return (a - b) % self.p
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.base is None:
            return -a % self.p
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        if self.base is None:
            return a * b % self.p
        return self._reduce(raw_mul(self.base, a, b))

    def _reduce(self, coeffs):
        B, d, m = self.base, self.degree, self.modulus
        zero = B.zero
        r = list(coeffs)
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if c == zero:
                continue
            for i in range(d):
                r[k - d + i] = B.sub(r[k - d + i], B.mul(c, m[i]))
        r = r[:d]
        return tuple(r) + (zero,) * (d - len(r))

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        if self.base is None:
            return pow(a, -1, self.p)
        B = self.base
        d, s, _ = raw_xgcd(B, a, self.modulus)
        # d is a nonzero constant because the modulus is irreducible
        return self._reduce(raw_scale(B, s, B.inv(d[0])))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        if self.base is None:
            return pow(a, e, self.p)
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        if self.base is None:
            return n % self.p
        return (self.base.from_int(n),) + (self.base.zero,) * (self.degree - 1)

    def lift(self, rep, source: 'FieldDesc'):
        """Embed a rep of a field lower in this tower as a constant."""
        if source == self:
            return rep
        if self.base is None:
            raise InputError(f"{source!r} is not a subfield of {self!r}")
        inner = self.base.lift(rep, source)
        return (inner,) + (self.base.zero,) * (self.degree - 1)

    def is_base_constant(self, rep) -> bool:
        return self.base is not None and all(c == self.base.zero for c in rep[1:])

    # -- enumeration and sampling

    def element_at(self, index: int):
        """Rep number `index` in the canonical order (zero first)."""
        if not 0 <= index < self.order:
            raise InputError(f"index {index} outside {self!r}")
        if self.base is None:
            return index
        b = self.base.order
        digits = []
        for _ in range(self.degree):
            index, digit = divmod(index, b)
            digits.append(self.base.element_at(digit))
        return tuple(digits)

    def index_of(self, rep) -> int:
        if self.base is None:
            return rep
        b = self.base.order
        index = 0
        for c in reversed(rep):
            index = index * b + self.base.index_of(c)
        return index

    def elements(self) -> Iterator:
        for i in range(self.order):
            yield self.element_at(i)

    def random_reps(self, rng, count: int) -> List:
        """`count` independent uniform reps drawn from a numpy Generator."""
        if self.base is None:
            return [int(v) for v in rng.integers(0, self.p, size=count)]
        d = self.degree
        flat = self.base.random_reps(rng, count * d)
        return [tuple(flat[k * d:(k + 1) * d]) for k in range(count)]

    # -- squares

    def quadratic_character(self, a) -> int:
        if self.order % 2 == 0:
            raise InputError("quadratic character needs odd characteristic")
        if a == self.zero:
            return 0
        return 1 if self.pow(a, (self.order - 1) // 2) == self.one else -1

    @functools.cached_property
    def _non_residue(self):
        for i in range(2, self.order):
            z = self.element_at(i)
            if self.quadratic_character(z) == -1:
                return z
        raise InputError(f"{self!r} has no quadratic non-residue")

    def sqrt(self, a):
        """A square root of a (Tonelli-Shanks), or None when a is a non-square."""
        if a == self.zero:
            return self.zero
        if self.quadratic_character(a) != 1:
            return None
        Q = self.order
        if Q % 4 == 3:
            return self.pow(a, (Q + 1) // 4)
        s, t = 0, Q - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        M = s
        c = self.pow(self._non_residue, t)
        T = self.pow(a, t)
        R = self.pow(a, (t + 1) // 2)
        while T != self.one:
            i, T2 = 0, T
            while T2 != self.one:
                T2 = self.mul(T2, T2)
                i += 1
            b = self.pow(c, 1 << (M - i - 1))
            M, c = i, self.mul(b, b)
            T, R = self.mul(T, c), self.mul(R, b)
        return R

    # -- FieldElem construction and text form

    def coerce(self, value):
        if isinstance(value, FieldElem):
            if value.field != self:
                raise InputError(f"mixed owners: {value.field!r} and {self!r}")
            return value.rep
        if isinstance(value, int) and not isinstance(value, bool):
            return self.from_int(value)
        raise InputError(f"cannot interpret {value!r} as an element of {self!r}")

    def __call__(self, value) -> 'FieldElem':
        return FieldElem(self, self.coerce(value))

    def elem(self, rep) -> 'FieldElem':
        return FieldElem(self, rep)

    def embed(self, a: 'FieldElem') -> 'FieldElem':
        return FieldElem(self, self.lift(a.rep, a.field))

    def format_rep(self, rep) -> str:
        if self.base is None:
            return str(rep)
        return "[" + " ".join(self.base.format_rep(c) for c in rep) + "]"


@dataclass(frozen=True)
class FieldElem:
    field: FieldDesc
    rep: object

    def _other(self, other):
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.rep, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.rep, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.rep))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.rep, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.rep, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElem(self.field, self.field.div(self._other(other), self.rep))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.rep))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.rep, e))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.rep))

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.rep == self.field.from_int(other)
        if isinstance(other, FieldElem):
            return self.field == other.field and self.rep == other.rep
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.rep))

    def __bool__(self):
        return self.rep != self.field.zero

    def __repr__(self):
        return self.field.format_rep(self.rep)


def field_arith(op: str, a: FieldElem, b=None) -> FieldElem:
    """Dispatch one of add/sub/mul/div/inv/pow on field elements."""
    if op == 'inv':
        return a.inverse()
    if op == 'pow':
        if not isinstance(b, int):
            raise InputError("pow needs an integer exponent")
        return a ** b
    ops = {
        'add': FieldElem.__add__,
        'sub': FieldElem.__sub__,
        'mul': FieldElem.__mul__,
        'div': FieldElem.__truediv__,
    }
    if op not in ops:
        raise InputError(f"unknown field operation {op!r}")
    return ops[op](a, b)


def frobenius(a: FieldElem, over: FieldDesc) -> FieldElem:
    """a^q with q = |over|; `over` must lie in the tower of a's owner."""
    if over not in a.field.tower():
        raise InputError(f"{a.field!r} is not an extension of {over!r}")
    return a ** over.order


def enumerate_elements(F: FieldDesc) -> Iterator[FieldElem]:
    for rep in F.elements():
        yield FieldElem(F, rep)


@functools.lru_cache(maxsize=None)
def make_prime_field(p: int) -> FieldDesc:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2 or not isprime(p):
        raise InputError(f"{p!r} is not prime")
    return FieldDesc(p)


@functools.lru_cache(maxsize=None)
def make_extension(base: FieldDesc, d: int) -> FieldDesc:
    """base[t]/(m) for the canonically smallest monic irreducible m of degree d."""
    if d < 2:
        raise InputError(f"extension degree must be >= 2, got {d}")
    from .poly import first_monic_irreducible
    modulus = first_monic_irreducible(base, d)
    return FieldDesc(base.p, base, tuple(modulus.coeffs), d)


@functools.lru_cache(maxsize=None)
def make_residue_field(base: FieldDesc, modulus: tuple) -> FieldDesc:
    """base[t]/(modulus) for a caller-supplied monic irreducible (residue field of a place)."""
    d = len(modulus) - 1
    if d < 2 or modulus[-1] != base.one:
        raise InputError("residue field modulus must be monic of degree >= 2")
    return FieldDesc(base.p, base, tuple(modulus), d)


def extension_of_degree(base: FieldDesc, d: int) -> FieldDesc:
    return base if d == 1 else make_extension(base, d)


def prime_power(q: int) -> Tuple[int, int]:
    """(p, k) with q = p^k, or InputError."""
    if not isinstance(q, int) or q < 2:
        raise InputError(f"{q!r} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise InputError(f"{q} is not a prime power")
    (p, k), = factors.items()
    return p, k


def field_of_order(q: int) -> FieldDesc:
    p, k = prime_power(q)
    return extension_of_degree(make_prime_field(p), k)
