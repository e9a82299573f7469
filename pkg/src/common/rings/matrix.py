from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from common.errors import ContextMismatchError, NonUnitError
from common.rings.context import RingContext, RingElement, is_unit


@dataclass(frozen=True, eq=False)
class Matrix2:
    """Matriz 2x2 inmutable sobre un contexto.

    Las entradas se guardan por filas: ``[[e11, e12], [e21, e22]]``. Cuando la
    matriz es la acción sobre un módulo con base (x, y), sus columnas son las
    coordenadas de las imágenes de x e y.
    """

    e11: RingElement
    e12: RingElement
    e21: RingElement
    e22: RingElement

    def __post_init__(self):
        ctx = self.e11.context
        for e in (self.e12, self.e21, self.e22):
            if e.context != ctx:
                raise ContextMismatchError(
                    "matrix entries from different rings",
                    {"left": ctx.descriptor, "right": e.context.descriptor},
                )

    @classmethod
    def from_rows(cls, ctx: RingContext, rows: Sequence[Sequence]) -> "Matrix2":
        (a, b), (c, d) = rows
        return cls(ctx(a), ctx(b), ctx(c), ctx(d))

    @classmethod
    def identity(cls, ctx: RingContext) -> "Matrix2":
        return cls.from_rows(ctx, [[1, 0], [0, 1]])

    @classmethod
    def scalar(cls, ctx: RingContext, s) -> "Matrix2":
        return cls.from_rows(ctx, [[s, 0], [0, s]])

    @property
    def context(self) -> RingContext:
        return self.e11.context

    def entries(self) -> Tuple[RingElement, RingElement, RingElement, RingElement]:
        return (self.e11, self.e12, self.e21, self.e22)

    def rows(self) -> List[List[int]]:
        return [[self.e11.value, self.e12.value], [self.e21.value, self.e22.value]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix2):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash(self.entries())

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def __add__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(*(x + y for x, y in zip(self.entries(), other.entries())))

    def __sub__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(*(x - y for x, y in zip(self.entries(), other.entries())))

    def scale(self, s) -> "Matrix2":
        return Matrix2(*(s * x for x in self.entries()))

    def __neg__(self) -> "Matrix2":
        return self.scale(-1)

    def trace(self) -> RingElement:
        return self.e11 + self.e22

    def det(self) -> RingElement:
        return self.e11 * self.e22 - self.e12 * self.e21

    def transpose(self) -> "Matrix2":
        return Matrix2(self.e11, self.e21, self.e12, self.e22)

    def adjugate(self) -> "Matrix2":
        return Matrix2(self.e22, -self.e12, -self.e21, self.e11)

    def inverse(self) -> "Matrix2":
        d = self.det()
        if not is_unit(d):
            raise NonUnitError(f"determinant {d} is not a unit", {"det": d.value})
        return self.adjugate().scale(self.context.inverse(d))

    def apply(self, vector: Iterable) -> Tuple[RingElement, RingElement]:
        """Imagen de un vector columna de coordenadas."""
        v1, v2 = (self.context(v) for v in vector)
        return (self.e11 * v1 + self.e12 * v2, self.e21 * v1 + self.e22 * v2)

    def is_scalar(self) -> bool:
        return self.e12.is_zero() and self.e21.is_zero() and self.e11 == self.e22

    def __str__(self) -> str:
        return str(self.rows())
