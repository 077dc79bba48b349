"""holodense: exact and empirical density of coprime m-tuples in holomorphy rings over finite fields"""
from .curve_places import CurveDesc, LPoly, validate_curve
from .errors import (EnclosureViolation, GuardLimitExceeded, HolodenseError, InconsistentCounts,
                     InputError, OracleDisagreement)
from .field_tower import FieldDesc, FieldElem, field_of_order, make_extension, make_prime_field
from .poly import Poly
from .rr_space import rr_basis
from .zeta_density import GenericRing, density_elliptic, density_enclosure, density_rational

__version__ = '1.0'
