import itertools

import numpy as np
import pytest

from common.errors import (
    DegenerateError,
    DiscriminantMismatchError,
    ImprimitiveError,
    InvalidDiscriminantError,
    UnsupportedRingError,
)
from common.forms import discriminant, make_form, principal_form
from common.ideals import class_group, compose_forms, invariant_factors
from common.rings import ZZ, make_context

DISCRIMINANTS = [-3, -4, -7, -8, -15, -20, -23, -47, -71, -84]


def form(*coeffs):
    return make_form(ZZ, coeffs)


def test_composition_examples():
    """Test small compositions at D = -23, -15 and -4."""
    assert compose_forms(form(1, 1, 6), form(2, 1, 3)).coeffs() == (2, 1, 3), "The principal form is the identity"
    assert compose_forms(form(2, 1, 3), form(2, 1, 3)).coeffs() == (2, -1, 3), "Incorrect square of (2, 1, 3)"
    assert compose_forms(form(2, 1, 2), form(2, 1, 2)).coeffs() == (1, 1, 4)
    assert compose_forms(form(1, 0, 1), form(1, 0, 1)).coeffs() == (1, 0, 1)


def test_composition_with_an_inverse():
    """Test if (a, b, c) composed with (a, -b, c) is the principal class."""
    for D in DISCRIMINANTS:
        principal = principal_form(D)
        for f in class_group(D).forms:
            a, b, c = f.coeffs()
            assert compose_forms(form(a, b, c), form(a, -b, c)).coeffs() == principal.coeffs(), f"{f} times its inverse"


def test_indefinite_composition_keeps_discriminant():
    h = compose_forms(form(1, 0, -3), form(1, 0, -3))
    assert discriminant(h) == ZZ(12)


def test_composition_errors():
    with pytest.raises(DiscriminantMismatchError):
        compose_forms(form(1, 1, 6), form(1, 0, 1))
    with pytest.raises(ImprimitiveError):
        compose_forms(form(1, 0, 3), form(2, 2, 2))
    with pytest.raises(DegenerateError):
        compose_forms(form(1, 2, 1), form(1, 2, 1))
    with pytest.raises(UnsupportedRingError):
        z5 = make_context(5)
        compose_forms(make_form(z5, (1, 1, 1)), make_form(z5, (1, 1, 1)))


@pytest.mark.parametrize(
    "D, h, invariants",
    [(-23, 3, (3,)), (-15, 2, (2,)), (-47, 5, (5,)), (-71, 7, (7,)), (-4, 1, ()), (-84, 4, (2, 2))],
)
def test_class_groups(D, h, invariants):
    """Test class numbers, invariant factors and the identity element."""
    result = class_group(D)
    assert result.class_number == h, "Incorrect class number"
    assert result.invariants == invariants, "Incorrect invariant factors"
    assert result.forms[0] == principal_form(D), "The principal form should come first"


@pytest.mark.parametrize("D", DISCRIMINANTS)
def test_group_axioms(D):
    """Test identity, commutativity, associativity and inverses of the table."""
    result = class_group(D)
    table = result.table
    h = result.class_number
    assert np.array_equal(table[0], np.arange(h))
    assert np.array_equal(table, table.T)
    for i, j, k in itertools.product(range(h), repeat=3):
        assert table[table[i, j], k] == table[i, table[j, k]], f"Associativity fails at {(i, j, k)}"
    for i in range(h):
        assert table[i, result.inverse(i)] == result.identity
        assert result.power(i, h) == result.identity
        assert result.power(i, -1) == result.inverse(i)


def test_element_lookup():
    result = class_group(-23)
    assert result.index(form(2, -1, 3)) == 2
    assert result.power(1, 2) == 2
    with pytest.raises(KeyError):
        result.index(form(1, 0, 1))


def test_threads_do_not_change_the_table():
    assert np.array_equal(class_group(-71, jobs=3).table, class_group(-71, jobs=1).table)


def test_bad_discriminants():
    with pytest.raises(InvalidDiscriminantError):
        class_group(5)
    with pytest.raises(InvalidDiscriminantError):
        class_group(-5)


def test_invariant_factors_of_known_tables():
    """Test invariant factors of Z/4, Z/2 x Z/4 and the trivial group."""
    z4 = np.array([[(i + j) % 4 for j in range(4)] for i in range(4)])
    assert invariant_factors(z4) == [4]
    elements = [(a, b) for a in range(2) for b in range(4)]
    z2z4 = np.array(
        [[elements.index(((x[0] + y[0]) % 2, (x[1] + y[1]) % 4)) for y in elements] for x in elements]
    )
    assert invariant_factors(z2z4) == [2, 4]
    assert invariant_factors(np.array([[0]])) == []
