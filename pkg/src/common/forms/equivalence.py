"""Equivalencia de formas bajo SL2, GL2 (plain o twisted) y GL2 x GL1.

Sobre anillos finitos se recorre el grupo entero. Sobre Z las formas
definidas se comparan por sus representantes reducidos; el resto pasa por una
búsqueda acotada sobre matrices con entradas de valor absoluto a lo sumo
``bound``, así que una respuesta vacía solo dice que no hay un testigo chico.
"""

import logging
import os
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from common.errors import ConsistencyError, ContextMismatchError, FlavorError
from common.forms.forms import (
    ActionMode,
    BQForm,
    GL2Element,
    apply_gl2,
    default_mode,
    make_form,
    scale_form,
)
from common.forms.groups import gl2_elements, sl2_elements, substitute, unit_array
from common.forms.reduction import reduce_posdef
from common.rings import ZZ, RingElement

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 50

Triple = Tuple[int, int, int]
Quad = Tuple[int, int, int, int]


def default_search_bound() -> int:
    value = os.environ.get("QUADRINGS_SEARCH_BOUND")
    if not value:
        return DEFAULT_SEARCH_BOUND
    try:
        bound = int(value)
    except ValueError:
        bound = -1
    if bound < 0:
        logger.warning("ignoring QUADRINGS_SEARCH_BOUND=%r", value)
        return DEFAULT_SEARCH_BOUND
    return bound


@dataclass(frozen=True)
class EquivalenceWitness:
    """``matrix`` (y ``unit``, para GL2 x GL1) que lleva la primera forma a la segunda."""

    matrix: GL2Element
    unit: RingElement


def apply_witness(f: BQForm, witness: EquivalenceWitness, mode: Union[ActionMode, str]) -> BQForm:
    mode = ActionMode(mode)
    if mode in (ActionMode.SL2, ActionMode.PLAIN):
        return apply_gl2(f, witness.matrix, ActionMode.PLAIN)
    image = apply_gl2(f, witness.matrix, ActionMode.TWISTED)
    if mode is ActionMode.LINEAR:
        image = scale_form(image, witness.unit)
    return image


def equivalent(
    f1: BQForm,
    f2: BQForm,
    mode: Union[ActionMode, str, None] = None,
    bound: Optional[int] = None,
) -> Optional[EquivalenceWitness]:
    """
    Busca un testigo de que ``f1`` y ``f2`` son equivalentes.

    Parámetros:
      f1, f2 : formas sobre el mismo anillo y del mismo flavor.
      mode   : sl2, plain, twisted o linear; por defecto el grupo del flavor.
      bound  : cota de las entradas en la búsqueda sobre Z para formas
               indefinidas; None toma QUADRINGS_SEARCH_BOUND (50 si falta o
               está mal formada).

    Retorna:
      EquivalenceWitness verificado, o None si no hay testigo (dentro de la
      cota, en el caso indefinido sobre Z).
    """
    bound = default_search_bound() if bound is None else bound
    if f1.context != f2.context:
        raise ContextMismatchError(
            "forms over different rings", {"left": f1.context.descriptor, "right": f2.context.descriptor}
        )
    if f1.flavor is not f2.flavor:
        raise FlavorError(
            f"cannot compare a {f1.flavor.value} form with a {f2.flavor.value} form",
            {"left": f1.flavor.value, "right": f2.flavor.value},
        )
    mode = default_mode(f1.flavor) if mode is None else ActionMode(mode)
    if f1.context.modulus is None:
        witness = _integral_witness(f1.coeffs(), f2.coeffs(), mode, bound)
    else:
        witness = _exhaustive_witness(f1, f2, mode)
    if witness is None:
        return None
    if apply_witness(f1, witness, mode).coeffs() != f2.coeffs():
        raise ConsistencyError(
            "equivalence witness does not map the forms",
            {"f1": list(f1.coeffs()), "f2": list(f2.coeffs()), "matrix": witness.matrix.rows()},
        )
    return witness


def _exhaustive_witness(f1: BQForm, f2: BQForm, mode: ActionMode) -> Optional[EquivalenceWitness]:
    ctx = f1.context
    n = ctx.modulus
    table = sl2_elements(ctx) if mode is ActionMode.SL2 else gl2_elements(ctx)
    a, b, c = f1.coeffs()
    A, B, C = substitute(a, b, c, table, n)
    if mode in (ActionMode.TWISTED, ActionMode.LINEAR):
        A, B, C = (A * table.det_inv) % n, (B * table.det_inv) % n, (C * table.det_inv) % n
    units = unit_array(ctx) if mode is ActionMode.LINEAR else np.array([1], dtype=np.int64)
    a2, b2, c2 = f2.coeffs()
    for u in units:
        hits = np.nonzero(((u * A) % n == a2) & ((u * B) % n == b2) & ((u * C) % n == c2))[0]
        if len(hits):
            i = hits[0]
            g = GL2Element.of(ctx, int(table.k[i]), int(table.l[i]), int(table.m[i]), int(table.n[i]))
            return EquivalenceWitness(g, ctx(int(u)))
    return None


def _integral_witness(f1: Triple, f2: Triple, mode: ActionMode, bound: int) -> Optional[EquivalenceWitness]:
    flip = (1, 0, 0, -1)
    if mode is ActionMode.SL2:
        options = [(f2, None, 1)]
    elif mode is ActionMode.PLAIN:
        # f1 o g = f2 con det g = 1, o f1 o h = f2 o diag(1,-1) y g = h diag(1,-1)
        options = [(f2, None, 1), ((f2[0], -f2[1], f2[2]), flip, 1)]
    elif mode is ActionMode.TWISTED:
        # f1 o g = det(g) f2
        options = [(f2, None, 1), ((-f2[0], f2[1], -f2[2]), flip, 1)]
    else:
        neg = (-f2[0], -f2[1], -f2[2])
        options = [
            (f2, None, 1),
            ((-f2[0], f2[1], -f2[2]), flip, 1),
            (neg, None, -1),
            ((f2[0], -f2[1], f2[2]), flip, -1),
        ]
    for target, tail, unit in options:
        h = sl2_witness(f1, target, bound)
        if h is None:
            continue
        g = _mul(h, tail) if tail else h
        return EquivalenceWitness(GL2Element.of(ZZ, *g), ZZ(unit))
    return None


def _mul(x: Quad, y: Quad) -> Quad:
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def sl2_witness(f1: Triple, f2: Triple, bound: Optional[int] = None) -> Optional[Quad]:
    """Una matriz g en SL2(Z) con f1(kx + ly, mx + ny) = f2, o None."""
    bound = default_search_bound() if bound is None else bound
    if f1 == f2:
        return (1, 0, 0, 1)
    D1 = f1[1] ** 2 - 4 * f1[0] * f1[2]
    D2 = f2[1] ** 2 - 4 * f2[0] * f2[2]
    if D1 != D2 or not any(f1) or not any(f2):
        return None
    if D1 < 0:
        return _definite_witness(f1, f2)
    return _bounded_search(f1, f2, bound)


def _definite_witness(f1: Triple, f2: Triple) -> Optional[Quad]:
    if (f1[0] > 0) != (f2[0] > 0):
        return None
    if f1[0] < 0:
        f1 = tuple(-x for x in f1)
        f2 = tuple(-x for x in f2)
    r1, M1 = reduce_posdef(make_form(ZZ, f1))
    r2, M2 = reduce_posdef(make_form(ZZ, f2))
    if r1.coeffs() != r2.coeffs():
        return None
    g = M1 @ M2.inverse()
    return tuple(x.value for x in g.entries())


def _egcd(x: int, y: int) -> Tuple[int, int, int]:
    old_r, r, old_s, s, old_t, t = x, y, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _bounded_search(f1: Triple, f2: Triple, bound: int) -> Optional[Quad]:
    a, b, c = f1
    a2, b2, c2 = f2
    biggest = max(abs(x) for x in f1 + f2) + 1
    dtype = np.int64 if 4 * biggest * (4 * bound + 4) ** 2 < 2**62 else object

    coords = np.arange(-bound, bound + 1, dtype=np.int64)
    K, M = (x.ravel() for x in np.meshgrid(coords, coords, indexing="ij"))
    coprime = np.gcd(K, M) == 1
    Kd, Md = K.astype(dtype), M.astype(dtype)
    first = coprime & (a * Kd * Kd + b * Kd * Md + c * Md * Md == a2)
    K, M = K[first], M[first]
    order = np.lexsort((M, K, np.abs(K) + np.abs(M), np.maximum(np.abs(K), np.abs(M))))
    logger.debug("bounded search: %d first-column candidates", len(order))

    ts = np.arange(-2 * bound - 2, 2 * bound + 3, dtype=np.int64)
    for i in order:
        k, m = int(K[i]), int(M[i])
        _, s, t = _egcd(k, m)
        # k*n - l*m = 1 sobre la recta (l, n) = (-t + j*k, s + j*m)
        ls = (-t + ts * k).astype(dtype)
        ns = (s + ts * m).astype(dtype)
        inside = (np.abs(ls) <= bound) & (np.abs(ns) <= bound)
        ls, ns = ls[inside], ns[inside]
        if len(ls) == 0:
            continue
        ok = (a * ls * ls + b * ls * ns + c * ns * ns == c2) & (
            2 * a * k * ls + b * (k * ns + ls * m) + 2 * c * m * ns == b2
        )
        hits = np.nonzero(ok)[0]
        if len(hits):
            sizes = np.maximum(np.abs(ls[hits]), np.abs(ns[hits]))
            j = hits[int(np.argmin(sizes))]
            return (k, int(ls[j]), m, int(ns[j]))
    logger.warning(
        "no SL2 witness with entries <= %d between %s and %s; equivalence left undecided", bound, f1, f2
    )
    return None
