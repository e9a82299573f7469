"""Cambio de base a lo largo de Z -> Z/n y Z/n -> Z/m (m | n)."""

from functools import singledispatch
from typing import Union

from common.algebra.correspondence import CorrespondencePair
from common.algebra.kneser import QuadraticMap
from common.algebra.quadratic_algebra import QuadraticAlgebra, TraceableModule
from common.forms import BQForm
from common.rings import Matrix2, RingContext, RingElement, make_context, reduce_to


def base_change(obj, target: Union[RingContext, str, int, dict]):
    """
    Reduce cada coeficiente de ``obj`` al anillo ``target``.

    Parámetros:
      obj    : BQForm, QuadraticAlgebra, TraceableModule, CorrespondencePair o
               QuadraticMap sobre Z o Z/n.
      target : contexto destino (o su descriptor); debe ser Z/m con m | n.

    Retorna:
      Un objeto del mismo tipo sobre ``target``.
    """
    return _change(obj, make_context(target))


@singledispatch
def _change(obj, target: RingContext):
    raise TypeError(f"no base change for {type(obj).__name__}")


@_change.register
def _(x: RingElement, target: RingContext) -> RingElement:
    return reduce_to(x, target)


@_change.register
def _(m: Matrix2, target: RingContext) -> Matrix2:
    return Matrix2(*(reduce_to(e, target) for e in m.entries()))


@_change.register
def _(f: BQForm, target: RingContext) -> BQForm:
    return BQForm(target, reduce_to(f.a, target), reduce_to(f.b, target), reduce_to(f.c, target), f.flavor)


@_change.register
def _(C: QuadraticAlgebra, target: RingContext) -> QuadraticAlgebra:
    return QuadraticAlgebra(target, reduce_to(C.q, target), reduce_to(C.r, target), C.orientation)


@_change.register
def _(M: TraceableModule, target: RingContext) -> TraceableModule:
    return TraceableModule(_change(M.algebra, target), _change(M.T, target))


@_change.register
def _(pair: CorrespondencePair, target: RingContext) -> CorrespondencePair:
    return CorrespondencePair.of(_change(pair.module, target), pair.flavor)


@_change.register
def _(qm: QuadraticMap, target: RingContext) -> QuadraticMap:
    return QuadraticMap(target, *(reduce_to(x, target) for x in (qm.q1, qm.q2, qm.q12)))
