"""Density Agent: exact densities and their truncated-product enclosures"""
from typing import Dict, Optional, Sequence

from .curve_places import CurveDesc
from .field_tower import FieldDesc
from .zeta_density import (DensityKind, density_enclosure, density_finite_support,
                           to_decimal)


def _describe(kind: DensityKind) -> Dict:
    if isinstance(kind, FieldDesc):
        return {'space': 'rational', 'q': kind.order}
    if isinstance(kind, CurveDesc):
        return {'space': 'elliptic', 'q': kind.q, 'a': repr(kind.a), 'b': repr(kind.b)}
    return {'space': 'generic', 'q': kind.lpoly.q, 'lpoly': list(kind.lpoly.coefficients),
            'removed': list(kind.removed)}


class DensityAgent:
    def __init__(self, config):
        self.config = config
        self.default_t = config['density']['default_t']
        self.precision = config['density']['decimal_precision']

    def enclosure(self, kind: DensityKind, m: int, t: Optional[int] = None, log_capture=None) -> Dict:
        """Exact density plus [D(U_t) - tail, D(U_t)], checked to contain it."""
        t = self.default_t if t is None else t
        enclosure = density_enclosure(kind, m, t)
        if log_capture:
            log_capture.add(f"✓ density {enclosure.exact} inside enclosure of width "
                            f"{float(enclosure.width):.3e} at t={t}", "SUCCESS")
        return {**_describe(kind), 'm': m, **enclosure.to_dict(self.precision)}

    def finite_support(self, q: int, degrees: Sequence[int], m: int) -> Dict:
        value = density_finite_support(q, degrees, m)
        return {'space': 'finite', 'q': q, 'degrees': list(degrees), 'm': m,
                'exact': str(value), 'decimal': to_decimal(value, self.precision)}
