"""Parameter Parsing: CLI text forms for fields, curves, L-polynomials and degree lists"""
import re
from typing import List

from .curve_places import CurveDesc, LPoly, validate_curve
from .errors import InputError
from .field_tower import FieldDesc, field_of_order
from .zeta_density import GenericRing

_INT = r'-?\d+'
_INT_LIST = re.compile(rf'^\s*{_INT}(?:\s*,\s*{_INT})*\s*$')
_CURVE = re.compile(rf'^\s*(\d+)\s*,\s*({_INT})\s*,\s*({_INT})\s*$')


def parse_int_list(text: str, what: str = "list") -> List[int]:
    """'1, 2,3' -> [1, 2, 3]"""
    if not _INT_LIST.match(text or ''):
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}")
    return [int(t) for t in text.split(',')]


def parse_field(q) -> FieldDesc:
    try:
        q = int(q)
    except (TypeError, ValueError):
        raise InputError(f"field size must be an integer, got {q!r}")
    return field_of_order(q)


def parse_curve(text: str) -> CurveDesc:
    """'Q,A,B' -> y^2 = x^3 + Ax + B over F_Q (A, B read in the prime field)."""
    match = _CURVE.match(text or '')
    if not match:
        raise InputError(f"curve: expected Q,A,B, got {text!r}")
    q, a, b = (int(g) for g in match.groups())
    return validate_curve(parse_field(q), a, b)


def parse_lpoly(text: str, q) -> LPoly:
    return LPoly.from_coefficients(parse_field(q).order, parse_int_list(text, "lpoly"))


def parse_removed(text: str) -> List[int]:
    degrees = parse_int_list(text, "removed")
    if any(d < 1 for d in degrees):
        raise InputError(f"removed place degrees must be positive, got {degrees}")
    return degrees


def parse_generic(lpoly_text: str, removed_text: str, q) -> GenericRing:
    return GenericRing(parse_lpoly(lpoly_text, q), tuple(parse_removed(removed_text)))
