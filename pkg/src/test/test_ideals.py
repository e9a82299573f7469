import math
import random
from fractions import Fraction

import pytest

from common.algebra import (
    CorrespondencePair,
    form_to_pair,
    is_traceable,
    make_algebra,
    make_module,
    module_isomorphic,
    pair_to_form,
)
from common.errors import NotFullError, NotIdealError, NotRealizableError, UnsupportedRingError
from common.forms import Flavor, discriminant, make_form
from common.ideals import (
    IdealLattice,
    conjugate_ideal,
    hnf_lattice,
    ideal_norm,
    ideal_to_module,
    lattice_contains,
    multiply_ideals,
    realize_as_ideal,
    same_ideal_class,
    scale_ideal,
)
from common.rings import ZZ, make_context

C = make_algebra(1, 6)


def test_hnf_of_small_ideals():
    """Test if generating sets of small ideals of Z[t]/(t^2 + t + 6) reach their HNF."""
    assert hnf_lattice(C, [(2, 0), (0, 1)]).hnf == [[2, 0], [0, 1]]
    assert hnf_lattice(C, [(1, 0), (0, 1)]).hnf == [[1, 0], [0, 1]]
    assert hnf_lattice(C, [(0, 1), (2, 0), (4, 1)]).hnf == [[2, 0], [0, 1]]


def test_hnf_of_redundant_generators():
    I = hnf_lattice(C, [(4, 0), (0, 2), (-6, -1)])
    assert I.hnf == [[4, 2], [0, 1]]
    assert lattice_contains(I, (6, 1))
    assert not lattice_contains(I, (1, 0))


def test_lattice_errors():
    """Test the rejection of rank-one lattices, lattices not closed under t, and rings other than Z."""
    with pytest.raises(NotFullError):
        hnf_lattice(C, [(2, 0), (4, 0)])
    with pytest.raises(NotIdealError):
        hnf_lattice(C, [(5, 0), (0, 1)])
    with pytest.raises(UnsupportedRingError):
        hnf_lattice(make_algebra(1, 1, 1, make_context(3)), [(1, 0), (0, 1)])


def test_fractional_lattice():
    I = hnf_lattice(C, [(4, 0), (0, 2)], den=2)
    assert (I.hnf, I.den) == ([[2, 0], [0, 1]], 1)
    half = hnf_lattice(C, [(1, 0), (0, 1)], den=2)
    assert half.den == 2
    assert lattice_contains(half, (Fraction(1, 2), 0))
    assert not lattice_contains(half, (Fraction(1, 3), 0))
    assert ideal_norm(half) == Fraction(1, 4)


def test_products_of_the_prime_above_two():
    """Test products of the prime (2, t) with itself, with C and with its conjugate."""
    P = hnf_lattice(C, [(2, 0), (0, 1)])
    square = multiply_ideals(C, P, P)
    assert square.hnf == [[4, 2], [0, 1]], "Incorrect square of (2, t)"
    assert lattice_contains(square, (6, 1))
    unit = hnf_lattice(C, [(1, 0), (0, 1)])
    assert multiply_ideals(C, P, unit) == P
    conjugate = conjugate_ideal(C, P)
    assert conjugate.hnf == [[2, 1], [0, 1]]
    assert multiply_ideals(C, P, conjugate).hnf == [[2, 0], [0, 2]], "P times its conjugate should be (2)"
    assert ideal_norm(square) == 4


def test_ideal_to_module():
    P = hnf_lattice(C, [(2, 0), (0, 1)])
    M = ideal_to_module(C, P)
    assert M.T.rows() == [[0, -3], [2, -1]]
    assert is_traceable(C, M)
    unit = hnf_lattice(C, [(1, 0), (0, 1)])
    assert ideal_to_module(C, unit).T == C.regular_matrix()


def test_ideal_to_module_keeps_the_discriminant():
    I = hnf_lattice(C, [(4, 0), (2, 1)])
    f = pair_to_form(CorrespondencePair.of(ideal_to_module(C, I)))
    assert discriminant(f) == ZZ(-23)


def test_every_ideal_lattice_gives_a_traceable_module():
    for algebra in (C, make_algebra(0, 5), make_algebra(0, -3)):
        for a in range(1, 13):
            for b in range(a):
                for d in range(1, 7):
                    try:
                        I = hnf_lattice(algebra, [(a, 0), (b, d)])
                    except NotIdealError:
                        continue
                    assert is_traceable(algebra, ideal_to_module(algebra, I))


def test_realize_examples():
    """Test if the form (2, 1, 3) and the regular module realize as (2, t) and C."""
    assert realize_as_ideal(form_to_pair(make_form(ZZ, (2, 1, 3)))).hnf == [[2, 0], [0, 1]]
    regular = CorrespondencePair.of(make_module(C, C.regular_matrix().rows()))
    assert realize_as_ideal(regular).hnf == [[1, 0], [0, 1]]


def test_scalar_action_is_not_realizable():
    with pytest.raises(NotRealizableError):
        realize_as_ideal(form_to_pair(make_form(ZZ, (0, 0, 0))))


def test_degenerate_algebra_is_realized():
    zero = make_algebra(0, 0)
    I = realize_as_ideal(CorrespondencePair.of(make_module(zero, [[0, 1], [0, 0]])))
    assert I.hnf == [[1, 0], [0, 1]]


def test_realize_random_pairs():
    """Test if random traceable pairs over Z realize as ideals with traceable modules."""
    rng = random.Random(12)
    seen = 0
    while seen < 200:
        t11, t12, t21, t22 = (rng.randint(-20, 20) for _ in range(4))
        q, r = -(t11 + t22), t11 * t22 - t12 * t21
        if q * q - 4 * r == 0:
            continue
        algebra = make_algebra(q, r)
        pair = CorrespondencePair.of(make_module(algebra, [[t11, t12], [t21, t22]]), Flavor.TWISTED)
        I = realize_as_ideal(pair)
        M = ideal_to_module(algebra, I)
        assert is_traceable(algebra, M), f"Module of {I} is not traceable"
        if q * q - 4 * r < 0:
            assert module_isomorphic(algebra, pair.module, M) is not None, f"{I} does not match T={pair.T.rows()}"
        seen += 1



def test_realized_ideals_of_indefinite_pairs_are_isomorphic_modules():
    """Test if the module of the realized ideal is GL2(Z)-conjugate to T for real quadratic algebras."""
    rng = random.Random(21)
    seen = 0
    while seen < 100:
        t11, t12, t21, t22 = (rng.randint(-6, 6) for _ in range(4))
        q, r = -(t11 + t22), t11 * t22 - t12 * t21
        D = q * q - 4 * r
        if D <= 0 or math.isqrt(D) ** 2 == D:
            continue
        algebra = make_algebra(q, r)
        pair = CorrespondencePair.of(make_module(algebra, [[t11, t12], [t21, t22]]), Flavor.TWISTED)
        M = ideal_to_module(algebra, realize_as_ideal(pair))
        P = module_isomorphic(algebra, pair.module, M, bound=30)
        assert P is not None, f"No witness for T={pair.T.rows()} and {M.T.rows()}"
        assert P @ pair.T == M.T @ P, "Witness does not conjugate the actions"
        assert abs(P.det().value) == 1, "Witness is not invertible over Z"
        seen += 1

def test_same_ideal_class():
    """Test the ideal-class criterion on (2, t), its multiple by 1 + t, and its conjugate."""
    P = hnf_lattice(C, [(2, 0), (0, 1)])
    moved = scale_ideal(C, P, (1, 1))
    assert moved.hnf == [[6, 2], [0, 2]]
    found = same_ideal_class(C, P, moved)
    assert found is not None
    phi_d, d = found
    assert scale_ideal(C, P, phi_d) == scale_ideal(C, moved, (d, 0))

    principal = hnf_lattice(C, [(2, 0), (0, 2)])
    unit = hnf_lattice(C, [(1, 0), (0, 1)])
    assert same_ideal_class(C, principal, unit) is not None
    assert same_ideal_class(C, P, conjugate_ideal(C, P)) is None


def test_ideal_string():
    assert str(IdealLattice(C, 2, 0, 1)) == "(2, 1t)"
    assert str(IdealLattice(C, 4, 2, 1)) == "(4, 2 + 1t)"
