"""Formas cuadráticas binarias ax^2 + bxy + cy^2 y las acciones de grupo sobre ellas."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple, Union

from common.errors import ContextMismatchError, FlavorError, InvalidDiscriminantError, NonUnitError
from common.rings import ZZ, Matrix2, RingContext, RingElement, generates_unit_ideal, is_unit


class Flavor(str, Enum):
    PLAIN = "plain"
    TWISTED = "twisted"
    LINEAR = "linear"


class ActionMode(str, Enum):
    SL2 = "sl2"
    PLAIN = "plain"
    TWISTED = "twisted"
    LINEAR = "linear"


def default_mode(flavor: Flavor) -> ActionMode:
    return ActionMode(Flavor(flavor).value)


@dataclass(frozen=True)
class BQForm:
    context: RingContext
    a: RingElement
    b: RingElement
    c: RingElement
    flavor: Flavor = Flavor.LINEAR

    def __post_init__(self):
        for x in (self.a, self.b, self.c):
            if x.context != self.context:
                raise ContextMismatchError(
                    "form coefficient outside the form's ring",
                    {"expected": self.context.descriptor, "got": x.context.descriptor},
                )
        object.__setattr__(self, "flavor", Flavor(self.flavor))

    def coeffs(self) -> Tuple[int, int, int]:
        return (self.a.value, self.b.value, self.c.value)

    def evaluate(self, x, y) -> RingElement:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def with_coeffs(self, a, b, c) -> "BQForm":
        ctx = self.context
        return BQForm(ctx, ctx(a), ctx(b), ctx(c), self.flavor)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def make_form(ctx: RingContext, coeffs: Sequence, flavor: Union[Flavor, str] = Flavor.LINEAR) -> BQForm:
    a, b, c = coeffs
    return BQForm(ctx, ctx(a), ctx(b), ctx(c), Flavor(flavor))


@dataclass(frozen=True, eq=False)
class GL2Element(Matrix2):
    """Matriz invertible (k l; m n) que actúa sobre formas por sustitución."""

    def __post_init__(self):
        super().__post_init__()
        if not is_unit(self.det()):
            raise NonUnitError(
                f"matrix {self.rows()} has non-unit determinant {self.det()}",
                {"matrix": self.rows(), "det": self.det().value},
            )

    @classmethod
    def of(cls, ctx: RingContext, k, l, m, n) -> "GL2Element":
        return cls(ctx(k), ctx(l), ctx(m), ctx(n))

    @classmethod
    def from_matrix(cls, matrix: Matrix2) -> "GL2Element":
        return cls(*matrix.entries())

    @classmethod
    def identity(cls, ctx: RingContext) -> "GL2Element":
        return cls.of(ctx, 1, 0, 0, 1)

    @property
    def k(self) -> RingElement:
        return self.e11

    @property
    def l(self) -> RingElement:
        return self.e12

    @property
    def m(self) -> RingElement:
        return self.e21

    @property
    def n(self) -> RingElement:
        return self.e22

    def __matmul__(self, other):
        product = super().__matmul__(other)
        return GL2Element.from_matrix(product) if isinstance(other, GL2Element) else product

    def inverse(self) -> "GL2Element":
        return GL2Element.from_matrix(super().inverse())

    def transpose(self) -> "GL2Element":
        return GL2Element.from_matrix(super().transpose())


def discriminant(f: BQForm) -> RingElement:
    return f.b * f.b - 4 * f.a * f.c


def _substitute(f: BQForm, g: Matrix2) -> Tuple[RingElement, RingElement, RingElement]:
    # f(kx + ly, mx + ny)
    a, b, c = f.a, f.b, f.c
    k, l, m, n = g.entries()
    return (
        a * k * k + b * k * m + c * m * m,
        2 * a * k * l + b * (k * n + l * m) + 2 * c * m * n,
        a * l * l + b * l * n + c * n * n,
    )


def apply_gl2(f: BQForm, g: Matrix2, mode: Union[ActionMode, str] = ActionMode.TWISTED) -> BQForm:
    """
    Aplica ``g`` a la forma ``f``.

    Parámetros:
      f    : forma sobre el mismo anillo que ``g``.
      g    : matriz invertible; en modo sl2 debe tener determinante 1.
      mode : twisted -> (1/det g) f(kx + ly, mx + ny)  (por defecto)
             plain   -> f(kx + ly, mx + ny)
             sl2     -> como plain, solo para det g = 1

    Retorna:
      La forma transformada. Las dos acciones son por la derecha: aplicar h y
      luego g es lo mismo que aplicar h @ g.
    """
    mode = ActionMode(mode)
    if g.context != f.context:
        raise ContextMismatchError(
            "matrix and form over different rings",
            {"form": f.context.descriptor, "matrix": g.context.descriptor},
        )
    if not isinstance(g, GL2Element):
        g = GL2Element.from_matrix(g)
    a, b, c = _substitute(f, g)
    if mode is ActionMode.TWISTED:
        d_inv = f.context.inverse(g.det())
        a, b, c = a * d_inv, b * d_inv, c * d_inv
    elif mode is ActionMode.SL2:
        if g.det() != 1:
            raise NonUnitError("SL2 action needs determinant 1", {"det": g.det().value})
    elif mode is not ActionMode.PLAIN:
        raise FlavorError(f"apply_gl2 does not take mode {mode.value}", {"mode": mode.value})
    return BQForm(f.context, a, b, c, f.flavor)


def apply_gl1(f: BQForm, u) -> BQForm:
    """Escala una forma linear por una unidad: (u) o f = uf."""
    if f.flavor is not Flavor.LINEAR:
        raise FlavorError(
            f"GL1 acts on linear forms only, got a {f.flavor.value} form", {"flavor": f.flavor.value}
        )
    u = f.context(u)
    if not is_unit(u):
        raise NonUnitError(f"{u} is not a unit in {f.context.descriptor}", {"value": u.value})
    return BQForm(f.context, u * f.a, u * f.b, u * f.c, f.flavor)


def scale_form(f: BQForm, u) -> BQForm:
    """Multiplica cada coeficiente por ``u``, sin mirar el flavor."""
    u = f.context(u)
    return BQForm(f.context, u * f.a, u * f.b, u * f.c, f.flavor)


def negate(f: BQForm) -> BQForm:
    return scale_form(f, -1)


def is_primitive(f: BQForm) -> bool:
    return generates_unit_ideal([f.a, f.b, f.c])


def is_definite(f: BQForm) -> bool:
    return f.context.modulus is None and discriminant(f).value < 0


def is_positive_definite(f: BQForm) -> bool:
    return f.context.modulus is None and discriminant(f).value < 0 and f.a.value > 0


def principal_form(D: int, flavor: Union[Flavor, str] = Flavor.TWISTED) -> BQForm:
    """La forma (1, 0, -D/4) o (1, 1, (1-D)/4) de discriminante D."""
    if D % 4 == 0:
        return make_form(ZZ, (1, 0, -D // 4), flavor)
    if D % 4 == 1:
        return make_form(ZZ, (1, 1, (1 - D) // 4), flavor)
    raise InvalidDiscriminantError(f"discriminant {D} is not 0 or 1 mod 4", {"D": D})
