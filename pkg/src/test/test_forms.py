import itertools

import pytest

from common.errors import ContextMismatchError, FlavorError, InvalidDiscriminantError, NonUnitError
from common.forms import (
    ActionMode,
    Flavor,
    GL2Element,
    apply_gl1,
    apply_gl2,
    discriminant,
    is_definite,
    is_positive_definite,
    is_primitive,
    make_form,
    principal_form,
)
from common.rings import ZZ, make_context


def all_forms(ctx, flavor=Flavor.LINEAR):
    n = ctx.modulus
    return [make_form(ctx, c, flavor) for c in itertools.product(range(n), repeat=3)]


def all_gl2(ctx):
    n = ctx.modulus
    out = []
    for k, l, m, nn in itertools.product(range(n), repeat=4):
        if ctx.is_unit_value(k * nn - l * m):
            out.append(GL2Element.of(ctx, k, l, m, nn))
    return out


@pytest.mark.parametrize(
    "ring, coeffs, expected",
    [("Z", (1, 1, 6), -23), ("Z", (0, 0, 0), 0), ("Z", (2, 1, 3), -23), ("zmod:5", (2, 1, 3), 2)],
)
def test_discriminant(ring, coeffs, expected):
    """Test if discriminant computes b^2 - 4ac in the ring of the form."""
    ctx = make_context(ring)
    assert discriminant(make_form(ctx, coeffs)) == ctx(expected), f"Incorrect discriminant of {coeffs} over {ring}"


def test_twisted_flip():
    """Test if a determinant -1 matrix negates the form only under the twisted action."""
    f = make_form(ZZ, (1, 0, -3), Flavor.TWISTED)
    g = GL2Element.of(ZZ, 1, 0, 0, -1)
    assert apply_gl2(f, g, ActionMode.TWISTED).coeffs() == (-1, 0, 3), "Twisted action should negate the form"
    assert apply_gl2(f, g, ActionMode.PLAIN).coeffs() == (1, 0, -3), "Plain action should fix the form"


def test_identity_acts_trivially():
    f = make_form(ZZ, (2, 1, 3))
    for mode in (ActionMode.PLAIN, ActionMode.TWISTED):
        assert apply_gl2(f, GL2Element.identity(ZZ), mode) == f


def test_translation():
    f = make_form(ZZ, (2, 1, 3))
    assert apply_gl2(f, GL2Element.of(ZZ, 1, 1, 0, 1), ActionMode.PLAIN).coeffs() == (2, 5, 6)


def test_gl1_scaling():
    """Test if a unit scales the coefficients and the discriminant by its square."""
    f = make_form(ZZ, (2, 1, 3), Flavor.LINEAR)
    assert apply_gl1(f, -1).coeffs() == (-2, -1, -3), "Incorrect scaling by -1"
    z5 = make_context(5)
    g = apply_gl1(make_form(z5, (1, 0, 1)), 2)
    assert g.coeffs() == (2, 0, 2), "Incorrect scaling by 2 mod 5"
    assert discriminant(g) == z5(4), "Discriminant should scale by u^2"


def test_gl1_rejects_other_flavors_and_non_units():
    with pytest.raises(FlavorError):
        apply_gl1(make_form(ZZ, (1, 0, 1), Flavor.TWISTED), -1)
    with pytest.raises(NonUnitError):
        apply_gl1(make_form(ZZ, (1, 0, 1)), 2)


def test_singular_matrix_is_rejected():
    with pytest.raises(NonUnitError):
        GL2Element.of(ZZ, 2, 0, 0, 1)


def test_sl2_mode_needs_determinant_one():
    f = make_form(ZZ, (1, 0, 1))
    with pytest.raises(NonUnitError):
        apply_gl2(f, GL2Element.of(ZZ, 0, 1, 1, 0), ActionMode.SL2)


def test_ring_mismatch():
    with pytest.raises(ContextMismatchError):
        apply_gl2(make_form(ZZ, (1, 0, 1)), GL2Element.identity(make_context(3)))


@pytest.mark.parametrize("n", [2, 3])
def test_discriminant_transforms_under_actions(n):
    """Test if the twisted action keeps D and the plain action scales it by det(g)^2."""
    ctx = make_context(n)
    group = all_gl2(ctx)
    for f in all_forms(ctx):
        D = discriminant(f)
        for g in group:
            assert discriminant(apply_gl2(f, g, ActionMode.TWISTED)) == D, f"Twisted action by {g} changed D of {f}"
            assert discriminant(apply_gl2(f, g, ActionMode.PLAIN)) == g.det() ** 2 * D, f"Plain action by {g} on {f}"


@pytest.mark.parametrize("mode", [ActionMode.PLAIN, ActionMode.TWISTED])
def test_right_action_law(mode):
    """Test if acting by h and then by g equals acting by hg, over Z/2."""
    ctx = make_context(2)
    group = all_gl2(ctx)
    for f in all_forms(ctx):
        for g, h in itertools.product(group, repeat=2):
            assert apply_gl2(apply_gl2(f, h, mode), g, mode) == apply_gl2(f, h @ g, mode), f"Right action fails on {f}"


def test_primitivity_is_invariant():
    ctx = make_context(4)
    group = all_gl2(ctx)[::7]
    for f in all_forms(ctx):
        for g in group:
            assert is_primitive(apply_gl2(f, g, ActionMode.TWISTED)) == is_primitive(f)


def test_is_primitive():
    """Test primitivity over Z and over Z/4."""
    assert is_primitive(make_form(ZZ, (2, 1, 3))), "(2, 1, 3) is primitive"
    assert not is_primitive(make_form(ZZ, (2, 2, 2))), "(2, 2, 2) has content 2"
    assert not is_primitive(make_form(ZZ, (0, 0, 0)))
    assert not is_primitive(make_form(make_context(4), (2, 0, 2)))


@pytest.mark.parametrize("D, coeffs", [(-23, (1, 1, 6)), (-4, (1, 0, 1)), (12, (1, 0, -3)), (5, (1, 1, -1))])
def test_principal_form(D, coeffs):
    f = principal_form(D)
    assert f.coeffs() == coeffs
    assert discriminant(f) == ZZ(D)


def test_principal_form_rejects_bad_discriminant():
    with pytest.raises(InvalidDiscriminantError):
        principal_form(2)


def test_definiteness():
    """Test if definiteness needs D < 0 over Z and never holds over Z/n."""
    assert is_definite(make_form(ZZ, (-2, 1, -3)))
    assert not is_positive_definite(make_form(ZZ, (-2, 1, -3)))
    assert is_positive_definite(make_form(ZZ, (2, 1, 3)))
    assert not is_definite(make_form(ZZ, (1, 0, -3)))
    assert not is_definite(make_form(make_context(7), (1, 0, 1)))
