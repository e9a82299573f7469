"""Aplicaciones cuadráticas q: M -> N sobre un módulo de rango 2 con base (m1, m2)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Tuple, Union

from common.errors import ContextMismatchError
from common.forms import BQForm, Flavor
from common.rings import RingContext, RingElement, generates_unit_ideal


@dataclass(frozen=True)
class QuadraticMap:
    """Valores q1 = q(m1), q2 = q(m2) y q12 = q(m1 + m2)."""

    context: RingContext
    q1: RingElement
    q2: RingElement
    q12: RingElement

    def __post_init__(self):
        for x in (self.q1, self.q2, self.q12):
            if x.context != self.context:
                raise ContextMismatchError(
                    "value outside the map's ring",
                    {"expected": self.context.descriptor, "got": x.context.descriptor},
                )

    @classmethod
    def of(cls, ctx: RingContext, q1, q2, q12) -> "QuadraticMap":
        return cls(ctx, ctx(q1), ctx(q2), ctx(q12))

    def values(self) -> Tuple[int, int, int]:
        return (self.q1.value, self.q2.value, self.q12.value)

    def bilinear(self) -> RingElement:
        """B(m1, m2) = q(m1 + m2) - q(m1) - q(m2)."""
        return self.q12 - self.q1 - self.q2

    def evaluate(self, r1, r2) -> RingElement:
        r1, r2 = self.context(r1), self.context(r2)
        return r1 * r1 * self.q1 + r2 * r2 * self.q2 + r1 * r2 * self.bilinear()

    def polar(self, u: Tuple, v: Tuple) -> RingElement:
        """q(u + v) - q(u) - q(v) para vectores de coordenadas u y v."""
        s = (self.context(u[0]) + v[0], self.context(u[1]) + v[1])
        return self.evaluate(*s) - self.evaluate(*u) - self.evaluate(*v)


def form_to_quadratic_map(f: BQForm) -> QuadraticMap:
    return QuadraticMap(f.context, f.a, f.c, f.a + f.b + f.c)


def quadratic_map_to_form(qm: QuadraticMap, flavor: Union[Flavor, str] = Flavor.LINEAR) -> BQForm:
    return BQForm(qm.context, qm.q1, qm.bilinear(), qm.q2, Flavor(flavor))


def is_primitive_map(qm: QuadraticMap) -> bool:
    """True si los valores de q generan N.

    Sobre un anillo finito se calculan todos los valores q(r1 m1 + r2 m2); sobre
    Z los valores q1, q2 y q12 ya generan el mismo ideal.
    """
    ctx = qm.context
    if ctx.modulus is None:
        return generates_unit_ideal([qm.q1, qm.q2, qm.q12])
    values = {qm.evaluate(r1, r2) for r1, r2 in itertools.product(range(ctx.modulus), repeat=2)}
    return generates_unit_ideal(values)
