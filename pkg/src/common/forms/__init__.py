from common.forms.forms import (
    ActionMode,
    BQForm,
    Flavor,
    GL2Element,
    apply_gl1,
    apply_gl2,
    default_mode,
    discriminant,
    is_definite,
    is_positive_definite,
    is_primitive,
    make_form,
    negate,
    principal_form,
    scale_form,
)
from common.forms.equivalence import (
    DEFAULT_SEARCH_BOUND,
    EquivalenceWitness,
    apply_witness,
    default_search_bound,
    equivalent,
)
from common.forms.reduction import is_reduced, reduce_posdef, reduced_forms

__all__ = [
    "ActionMode",
    "BQForm",
    "DEFAULT_SEARCH_BOUND",
    "EquivalenceWitness",
    "Flavor",
    "GL2Element",
    "apply_gl1",
    "apply_gl2",
    "apply_witness",
    "default_mode",
    "default_search_bound",
    "discriminant",
    "equivalent",
    "is_definite",
    "is_positive_definite",
    "is_primitive",
    "is_reduced",
    "make_form",
    "negate",
    "principal_form",
    "reduce_posdef",
    "reduced_forms",
    "scale_form",
]
