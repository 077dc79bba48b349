"""Riemann-Roch spaces L(nP_inf) for F_q[x] and for elliptic coordinate rings"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple, Union

from .curve_places import CurveDesc
from .errors import GuardLimitExceeded, InputError
from .field_tower import FieldDesc, FieldElem
from .poly import Poly

RATIONAL = 'rational'
ELLIPTIC = 'elliptic'
DEFAULT_SPACE_GUARD = 10 ** 6

SpaceKind = Union[FieldDesc, CurveDesc]


@dataclass(frozen=True)
class SpaceDesc:
    kind: str
    field: FieldDesc
    n: int
    basis: Tuple[Tuple[int, int], ...]
    curve: Optional[CurveDesc] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def q(self) -> int:
        return self.field.order

    def pole_order(self, monomial: Tuple[int, int]) -> int:
        i, j = monomial
        return i if self.kind == RATIONAL else 2 * i + 3 * j

    @property
    def size(self) -> int:
        return self.field.order ** self.dimension

    def label(self) -> str:
        return self.kind


@dataclass(frozen=True)
class RRElement:
    space: SpaceDesc
    coeffs: Tuple

    def is_zero(self) -> bool:
        zero = self.space.field.zero
        return all(c == zero for c in self.coeffs)

    def is_constant(self) -> bool:
        zero = self.space.field.zero
        return all(c == zero for c in self.coeffs[1:])

    def coefficients(self) -> Tuple[FieldElem, ...]:
        F = self.space.field
        return tuple(F.elem(c) for c in self.coeffs)

    def to_poly(self) -> Poly:
        if self.space.kind != RATIONAL:
            raise InputError("only rational-space elements are polynomials in x")
        return Poly(self.space.field, self.coeffs)

    def xy_parts(self) -> Tuple[Poly, Poly]:
        """(u, v) with f = u(x) + v(x) y."""
        F = self.space.field
        u = [F.zero] * (self.space.n + 1)
        v = [F.zero] * (self.space.n + 1)
        for (i, j), c in zip(self.space.basis, self.coeffs):
            (v if j else u)[i] = c
        return Poly(F, u), Poly(F, v)

    def __repr__(self):
        F = self.space.field
        terms = []
        for (i, j), c in zip(self.space.basis, self.coeffs):
            if c == F.zero:
                continue
            mono = ("" if i == 0 else "x" if i == 1 else f"x^{i}") + ("y" if j else "")
            coeff = F.format_rep(c)
            terms.append(coeff if not mono else mono if c == F.one else f"{coeff}*{mono}")
        return " + ".join(terms) if terms else "0"


def _elliptic_basis(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((i, j) for j in (0, 1) for i in range(n // 2 + 1) if 2 * i + 3 * j <= n)


def rr_basis(kind: SpaceKind, n: int) -> SpaceDesc:
    """Canonical monomial basis of L(nP_inf): x^i (rational) or x^i y^j, 2i + 3j <= n (elliptic)."""
    if n < 0:
        raise InputError(f"n must be >= 0, got {n}")
    if isinstance(kind, CurveDesc):
        return SpaceDesc(ELLIPTIC, kind.field, n, _elliptic_basis(n), kind)
    if isinstance(kind, FieldDesc):
        return SpaceDesc(RATIONAL, kind, n, tuple((i, 0) for i in range(n + 1)))
    raise InputError(f"unknown space kind {kind!r}")


def rr_dimension(kind: SpaceKind, n: int) -> int:
    if n < 0:
        raise InputError(f"n must be >= 0, got {n}")
    if isinstance(kind, CurveDesc):
        return max(1, n)
    return n + 1


def rr_element(space: SpaceDesc, values: Sequence) -> RRElement:
    if len(values) != space.dimension:
        raise InputError(f"expected {space.dimension} coefficients, got {len(values)}")
    return RRElement(space, tuple(space.field.coerce(v) for v in values))


def element_at_index(space: SpaceDesc, index: int) -> RRElement:
    F = space.field
    digits = []
    for _ in range(space.dimension):
        index, digit = divmod(index, F.order)
        digits.append(F.element_at(digit))
    return RRElement(space, tuple(digits))


def index_of_element(f: RRElement) -> int:
    F = f.space.field
    index = 0
    for c in reversed(f.coeffs):
        index = index * F.order + F.index_of(c)
    return index


def enumerate_space(space: SpaceDesc, start: int = 0, stop: Optional[int] = None,
                    guard: int = DEFAULT_SPACE_GUARD) -> Iterator[RRElement]:
    """Elements number start..stop-1 of L(nP_inf); restartable from any index."""
    if space.size > guard:
        raise GuardLimitExceeded(f"enumeration of L({space.n}P_inf)", space.size, guard)
    stop = space.size if stop is None else min(stop, space.size)
    for index in range(start, stop):
        yield element_at_index(space, index)


def sample_uniform(space: SpaceDesc, rng) -> RRElement:
    """Independent uniform coefficients from a numpy Generator."""
    return RRElement(space, tuple(space.field.random_reps(rng, space.dimension)))


def pole_degree(f: RRElement) -> int:
    """Pole order at P_inf; basis pole orders are pairwise distinct so no cancellation occurs."""
    zero = f.space.field.zero
    orders = [f.space.pole_order(mono) for mono, c in zip(f.space.basis, f.coeffs) if c != zero]
    if not orders:
        raise InputError("the zero element has no pole degree")
    return max(orders)


def rr_multiply(f: RRElement, g: RRElement) -> RRElement:
    """f * g in L((n_f + n_g)P_inf), with y^2 rewritten as x^3 + ax + b."""
    if f.space.kind != g.space.kind or f.space.field != g.space.field or f.space.curve != g.space.curve:
        raise InputError("factors live in different rings")
    F = f.space.field
    target = rr_basis(f.space.curve or F, f.space.n + g.space.n)
    acc = {mono: F.zero for mono in target.basis}

    def bump(i, j, c):
        acc[(i, j)] = F.add(acc[(i, j)], c)

    for (i, j), a in zip(f.space.basis, f.coeffs):
        if a == F.zero:
            continue
        for (k, l), b in zip(g.space.basis, g.coeffs):
            if b == F.zero:
                continue
            c = F.mul(a, b)
            if j + l < 2:
                bump(i + k, j + l, c)
            else:
                E = f.space.curve
                bump(i + k + 3, 0, c)
                bump(i + k + 1, 0, F.mul(c, E.a.rep))
                bump(i + k, 0, F.mul(c, E.b.rep))
    return RRElement(target, tuple(acc[mono] for mono in target.basis))
