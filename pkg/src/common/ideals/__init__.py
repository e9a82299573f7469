from common.ideals.lattice import IdealLattice, hermite_normal_form, hnf_lattice, lattice_contains
from common.ideals.ideal_arithmetic import (
    conjugate_ideal,
    ideal_norm,
    ideal_to_module,
    multiply_ideals,
    realize_as_ideal,
    same_ideal_class,
    scale_ideal,
)
from common.ideals.class_group import ClassGroupResult, class_group, compose_forms, invariant_factors

__all__ = [
    "ClassGroupResult",
    "IdealLattice",
    "class_group",
    "compose_forms",
    "conjugate_ideal",
    "hermite_normal_form",
    "hnf_lattice",
    "ideal_norm",
    "ideal_to_module",
    "invariant_factors",
    "lattice_contains",
    "multiply_ideals",
    "realize_as_ideal",
    "same_ideal_class",
    "scale_ideal",
]
