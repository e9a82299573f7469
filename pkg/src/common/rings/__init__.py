from common.rings.context import (
    ZZ,
    IntegerRing,
    IntegersModN,
    RingContext,
    RingElement,
    generates_unit_ideal,
    is_unit,
    make_context,
    reduce_to,
)
from common.rings.matrix import Matrix2

__all__ = [
    "ZZ",
    "IntegerRing",
    "IntegersModN",
    "Matrix2",
    "RingContext",
    "RingElement",
    "generates_unit_ideal",
    "is_unit",
    "make_context",
    "reduce_to",
]
