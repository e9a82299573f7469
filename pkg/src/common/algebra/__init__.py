from common.algebra.quadratic_algebra import (
    AlgebraDiscriminant,
    QuadraticAlgebra,
    ShiftRecord,
    Traceability,
    TraceableModule,
    algebra_discriminant,
    algebra_is_domain,
    flip_module,
    flip_orientation,
    is_traceable,
    make_algebra,
    make_module,
    module_isomorphic,
    scale_generator,
    scale_module,
    shift_generator,
    shift_module,
)
from common.algebra.correspondence import (
    CorrespondencePair,
    act_on_pair,
    cyclic_generator,
    form_to_pair,
    is_invertible_module,
    normalize_pair,
    pair_to_form,
    pair_to_form_global,
)
from common.algebra.kneser import QuadraticMap, form_to_quadratic_map, is_primitive_map, quadratic_map_to_form
from common.algebra.base_change import base_change

__all__ = [
    "AlgebraDiscriminant",
    "CorrespondencePair",
    "QuadraticAlgebra",
    "QuadraticMap",
    "ShiftRecord",
    "Traceability",
    "TraceableModule",
    "act_on_pair",
    "algebra_discriminant",
    "algebra_is_domain",
    "base_change",
    "cyclic_generator",
    "flip_module",
    "flip_orientation",
    "form_to_pair",
    "form_to_quadratic_map",
    "is_invertible_module",
    "is_primitive_map",
    "is_traceable",
    "make_algebra",
    "make_module",
    "module_isomorphic",
    "normalize_pair",
    "pair_to_form",
    "pair_to_form_global",
    "quadratic_map_to_form",
    "scale_generator",
    "scale_module",
    "shift_generator",
    "shift_module",
]
