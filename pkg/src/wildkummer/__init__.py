"""Invariant rings of wild involutions and singularities of Kummer varieties in characteristic 2."""

from .field import FieldDesc, FieldElem, field_make
from .groebner import GroebnerBasis, Limits, ResourceLimitExceeded, buchberger, eliminate, ideal_equal
from .kummer import CurveConfig, relation_set, verify_containment, verify_kernel
from .poly import GREVLEX, LEX, MonomialOrder, MultiPoly, PolyRing, RingMap

__version__ = "0.1.0"

__all__ = [
    "CurveConfig", "FieldDesc", "FieldElem", "GREVLEX", "GroebnerBasis", "LEX", "Limits",
    "MonomialOrder", "MultiPoly", "PolyRing", "ResourceLimitExceeded", "RingMap", "buchberger",
    "eliminate", "field_make", "ideal_equal", "relation_set", "verify_containment", "verify_kernel",
]
