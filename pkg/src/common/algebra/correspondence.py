"""Formas <-> pares (álgebra cuadrática, módulo trazable).

form_to_pair le asocia a (a, b, c) el álgebra tau^2 = -b tau - ac y el módulo
con tau.x = -bx - cy, tau.y = ax. pair_to_form vuelve a través de una base
normalizada: orientación +1 y entrada (y, y) de T nula.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from common.errors import (
    ConsistencyError,
    ContextMismatchError,
    FlavorError,
    NonUnitError,
    NotTraceableError,
    UnsupportedRingError,
)
from common.algebra.quadratic_algebra import (
    QuadraticAlgebra,
    TraceableModule,
    flip_module,
    is_traceable,
    make_algebra,
    scale_module,
    shift_generator,
)
from common.forms import BQForm, Flavor, GL2Element, is_primitive
from common.rings import Matrix2, RingContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorrespondencePair:
    algebra: QuadraticAlgebra
    module: TraceableModule
    flavor: Flavor = Flavor.LINEAR

    def __post_init__(self):
        if self.module.algebra != self.algebra:
            raise ContextMismatchError(
                "module over a different algebra",
                {"expected": str(self.algebra), "got": str(self.module.algebra)},
            )
        object.__setattr__(self, "flavor", Flavor(self.flavor))

    @property
    def context(self) -> RingContext:
        return self.algebra.context

    @property
    def T(self) -> Matrix2:
        return self.module.T

    @classmethod
    def of(cls, module: TraceableModule, flavor: Union[Flavor, str] = Flavor.LINEAR) -> "CorrespondencePair":
        return cls(module.algebra, module, Flavor(flavor))


def form_to_pair(f: BQForm) -> CorrespondencePair:
    """
    Construye el par (C, M) de una forma.

    Parámetros:
      f : forma (a, b, c) sobre Z o Z/n, de cualquier flavor.

    Retorna:
      CorrespondencePair con C = R[tau]/(tau^2 + b tau + ac), orientación +1,
      y T = [[-b, a], [-c, 0]] actuando sobre la base (x, y) de M. El par
      conserva el flavor de ``f``.
    """
    a, b, c = f.a, f.b, f.c
    C = make_algebra(b, a * c, 1, f.context)
    T = Matrix2(-b, a, -c, f.context.zero())
    return CorrespondencePair(C, TraceableModule(C, T), f.flavor)


def _require_traceable(pair: CorrespondencePair):
    check = is_traceable(pair.algebra, pair.T)
    if not check:
        raise NotTraceableError(
            check.diagnostic,
            {
                "q": pair.algebra.q.value,
                "r": pair.algebra.r.value,
                "T": pair.T.rows(),
                "is_module": check.is_module,
                "trace_matches": check.trace_matches,
            },
        )


def _positively_oriented(pair: CorrespondencePair) -> CorrespondencePair:
    if pair.algebra.orientation == 1:
        return pair
    return CorrespondencePair.of(flip_module(pair.module), pair.flavor)


def normalize_pair(pair: CorrespondencePair) -> CorrespondencePair:
    pair = _positively_oriented(pair)
    algebra, record = shift_generator(pair.algebra, pair.T.e22)
    return CorrespondencePair(algebra, record.apply_module(pair.module, algebra), pair.flavor)


def pair_to_form(pair: CorrespondencePair) -> BQForm:
    """Inversa de form_to_pair: normaliza el par y lee a = T12, b = -T11, c = -T21."""
    _require_traceable(pair)
    normal = normalize_pair(pair)
    C, T = normal.algebra, normal.T
    a, b, c = T.e12, -T.e11, -T.e21
    if b != C.q or a * c != C.r:
        raise ConsistencyError(
            "normalized pair does not satisfy b = q and ac = r",
            {"q": C.q.value, "r": C.r.value, "T": T.rows()},
        )
    return BQForm(pair.context, a, b, c, pair.flavor)


def pair_to_form_global(pair: CorrespondencePair) -> BQForm:
    """Lee la forma de la aplicación tau (x ^ y) -> tau.x (x) y - tau.y (x) x.

    Los coeficientes se toman sobre x^2, xy, y^2 y se cambian de signo para
    que el ejemplo (2, 1, 3) vuelva igual. No hace falta desplazar: la
    aplicación solo ve T módulo escalares.
    """
    _require_traceable(pair)
    pair = _positively_oriented(pair)
    T, C = pair.T, pair.algebra
    a, b, c = T.e12, T.e22 - T.e11, -T.e21
    if b * b - 4 * a * c != C.q * C.q - 4 * C.r:
        raise ConsistencyError(
            "global construction lost the discriminant",
            {"form": [a.value, b.value, c.value], "q": C.q.value, "r": C.r.value},
        )
    return BQForm(pair.context, a, b, c, pair.flavor)


def act_on_pair(pair: CorrespondencePair, g: Matrix2, u=1) -> CorrespondencePair:
    """La acción que corresponde a ``g`` (y ``u``) sobre formas del flavor del par.

    T se conjuga por g traspuesta. En pares plain tau se escala luego por
    det g, en pares linear por u; los pares twisted no se escalan.
    """
    ctx = pair.context
    if g.context != ctx:
        raise ContextMismatchError(
            "matrix and pair over different rings", {"pair": ctx.descriptor, "matrix": g.context.descriptor}
        )
    g = GL2Element.from_matrix(g)
    u = ctx(u)
    if pair.flavor is Flavor.PLAIN:
        scale = g.det()
    elif pair.flavor is Flavor.LINEAR:
        if not ctx.is_unit_value(u.value):
            raise NonUnitError(f"{u} is not a unit in {ctx.descriptor}", {"value": u.value})
        scale = u
    else:
        if u != 1:
            raise FlavorError("twisted pairs take no GL1 scaling", {"u": u.value})
        scale = ctx.one()
    W = g.transpose()
    conjugated = TraceableModule(pair.algebra, Matrix2(*(W @ pair.T @ W.inverse()).entries()))
    scaled = scale_module(conjugated, scale)
    return normalize_pair(CorrespondencePair.of(scaled, pair.flavor))


def cyclic_generator(pair: CorrespondencePair) -> Optional[Tuple[int, int]]:
    """Coordenadas de algún m con (m, tau.m) base de M, buscado sobre un anillo finito."""
    ctx = pair.context
    if ctx.modulus is None:
        raise UnsupportedRingError("generator search needs a finite ring", {"ring": ctx.descriptor})
    n = ctx.modulus
    t11, t12, t21, t22 = (e.value for e in pair.T.entries())
    vals = np.arange(n, dtype=np.int64)
    m1, m2 = (x.ravel() for x in np.meshgrid(vals, vals, indexing="ij"))
    det = (m1 * (t21 * m1 + t22 * m2) - m2 * (t11 * m1 + t12 * m2)) % n
    hits = np.nonzero(np.gcd(det, n) == 1)[0]
    if not len(hits):
        return None
    return int(m1[hits[0]]), int(m2[hits[0]])


def is_invertible_module(pair: CorrespondencePair) -> bool:
    """M es localmente libre de rango 1 sobre C, o sea la forma asociada es primitiva.

    Sobre Z/n la respuesta se contrasta con una búsqueda de generador en cada
    potencia de primo que divide a n.
    """
    from common.algebra.base_change import base_change

    primitive = is_primitive(pair_to_form(pair))
    ctx = pair.context
    if ctx.modulus is None:
        return primitive
    local = all(cyclic_generator(base_change(pair, pk)) is not None for pk in ctx.local_factors())
    if local != primitive:
        raise ConsistencyError(
            "generator search disagrees with primitivity",
            {"ring": ctx.descriptor, "T": pair.T.rows(), "primitive": primitive},
        )
    return primitive
