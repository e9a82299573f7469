"""Álgebras cuadráticas C = R[tau]/(tau^2 + q tau + r) y C-módulos trazables.

Un módulo M = Rx + Ry se da por la matriz T de tau sobre la base (x, y); las
columnas de T son las coordenadas de tau.x y tau.y.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from common.errors import ConsistencyError, ContextMismatchError, UnsupportedRingError
from common.rings import ZZ, Matrix2, RingContext, RingElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadraticAlgebra:
    context: RingContext
    q: RingElement
    r: RingElement
    orientation: int = 1

    def __post_init__(self):
        for x in (self.q, self.r):
            if x.context != self.context:
                raise ContextMismatchError(
                    "structure constant outside the algebra's ring",
                    {"expected": self.context.descriptor, "got": x.context.descriptor},
                )
        if self.orientation not in (1, -1):
            raise ValueError(f"orientation must be 1 or -1, got {self.orientation}")

    def multiply(self, u: Tuple, v: Tuple) -> Tuple[RingElement, RingElement]:
        """(u0 + u1 tau)(v0 + v1 tau) en la base (1, tau)."""
        u0, u1 = (self.context(x) for x in u)
        v0, v1 = (self.context(x) for x in v)
        return (u0 * v0 - self.r * u1 * v1, u0 * v1 + u1 * v0 - self.q * u1 * v1)

    def trace(self, u: Tuple) -> RingElement:
        u0, u1 = (self.context(x) for x in u)
        return 2 * u0 - self.q * u1

    def regular_matrix(self) -> Matrix2:
        """tau actuando sobre el propio C en la base (1, tau)."""
        return Matrix2.from_rows(self.context, [[0, -self.r.value], [1, -self.q.value]])

    def __str__(self) -> str:
        sign = "+" if self.orientation == 1 else "-"
        return f"{self.context.descriptor}[t]/(t^2 + {self.q}t + {self.r}) ({sign})"


@dataclass(frozen=True)
class TraceableModule:
    """Módulo de rango 2 sobre ``algebra``; la trazabilidad la decide ``is_traceable``."""

    algebra: QuadraticAlgebra
    T: Matrix2

    def __post_init__(self):
        if self.T.context != self.algebra.context:
            raise ContextMismatchError(
                "action matrix outside the algebra's ring",
                {"expected": self.algebra.context.descriptor, "got": self.T.context.descriptor},
            )

    @property
    def context(self) -> RingContext:
        return self.algebra.context


@dataclass(frozen=True)
class AlgebraDiscriminant:
    value: RingElement
    pairing: Matrix2


@dataclass(frozen=True)
class Traceability:
    is_module: bool
    trace_matches: bool

    def __bool__(self) -> bool:
        return self.is_module and self.trace_matches

    @property
    def diagnostic(self) -> str:
        if not self.is_module:
            return "not a module: T^2 + qT + r != 0"
        if not self.trace_matches:
            return "module but not traceable: trace(T) != -q"
        return "traceable"


def make_algebra(q, r, orientation: int = 1, context: Optional[RingContext] = None) -> QuadraticAlgebra:
    if context is None:
        context = q.context if isinstance(q, RingElement) else ZZ
    q, r = context(q), context(r)
    return QuadraticAlgebra(context, q, r, orientation)


def make_module(algebra: QuadraticAlgebra, rows) -> TraceableModule:
    return TraceableModule(algebra, Matrix2.from_rows(algebra.context, rows))


def algebra_discriminant(C: QuadraticAlgebra) -> AlgebraDiscriminant:
    """Determinante de la forma traza (u, v) -> tr(uv) sobre la base (1, tau)."""
    tau_sq = C.multiply((0, 1), (0, 1))
    pairing = Matrix2(
        C.trace((1, 0)),
        C.trace((0, 1)),
        C.trace((0, 1)),
        C.trace(tau_sq),
    )
    value = pairing.det()
    if value != C.q * C.q - 4 * C.r:
        raise ConsistencyError(
            "trace pairing determinant differs from q^2 - 4r",
            {"q": C.q.value, "r": C.r.value, "det": value.value},
        )
    return AlgebraDiscriminant(value, pairing)


def is_traceable(C: QuadraticAlgebra, T: Union[Matrix2, TraceableModule]) -> Traceability:
    if isinstance(T, TraceableModule):
        T = T.T
    if T.context != C.context:
        raise ContextMismatchError(
            "action matrix outside the algebra's ring",
            {"expected": C.context.descriptor, "got": T.context.descriptor},
        )
    relation = T @ T + T.scale(C.q) + Matrix2.scalar(C.context, C.r)
    is_module = all(e.is_zero() for e in relation.entries())
    return Traceability(is_module, T.trace() == -C.q)


@dataclass(frozen=True)
class ShiftRecord:
    """El cambio tau' = tau - s; los módulos lo siguen con T' = T - sI."""

    s: RingElement

    def apply(self, T: Matrix2) -> Matrix2:
        return T - Matrix2.scalar(T.context, self.s)

    def apply_module(self, M: TraceableModule, algebra: QuadraticAlgebra) -> TraceableModule:
        return TraceableModule(algebra, self.apply(M.T))


def shift_generator(C: QuadraticAlgebra, s) -> Tuple[QuadraticAlgebra, ShiftRecord]:
    s = C.context(s)
    shifted = QuadraticAlgebra(C.context, C.q + 2 * s, C.r + C.q * s + s * s, C.orientation)
    return shifted, ShiftRecord(s)


def shift_module(M: TraceableModule, s) -> TraceableModule:
    algebra, record = shift_generator(M.algebra, s)
    return record.apply_module(M, algebra)


def flip_orientation(C: QuadraticAlgebra) -> QuadraticAlgebra:
    """Presenta C con generador -tau: (q, r) -> (-q, r) y el signo cambiado."""
    return QuadraticAlgebra(C.context, -C.q, C.r, -C.orientation)


def flip_module(M: TraceableModule) -> TraceableModule:
    return TraceableModule(flip_orientation(M.algebra), -M.T)


def scale_generator(C: QuadraticAlgebra, u) -> QuadraticAlgebra:
    """tau' = u tau: (q, r) -> (uq, u^2 r). El signo de la orientación se mantiene."""
    u = C.context(u)
    return QuadraticAlgebra(C.context, u * C.q, u * u * C.r, C.orientation)


def scale_module(M: TraceableModule, u) -> TraceableModule:
    u = M.context(u)
    return TraceableModule(scale_generator(M.algebra, u), M.T.scale(u))


def algebra_is_domain(C: QuadraticAlgebra) -> bool:
    """Sobre Z, C es dominio si y solo si q^2 - 4r no es un cuadrado."""
    if C.context.modulus is not None:
        raise UnsupportedRingError("domain test implemented over Z only", {"ring": C.context.descriptor})
    D = (C.q * C.q - 4 * C.r).value
    return D < 0 or math.isqrt(D) ** 2 != D


def _check_same_algebra(C: QuadraticAlgebra, *modules: TraceableModule):
    for M in modules:
        if M.algebra != C:
            raise ContextMismatchError(
                "module over a different algebra",
                {"expected": str(C), "got": str(M.algebra)},
            )


def module_isomorphic(
    C: QuadraticAlgebra, M1: TraceableModule, M2: TraceableModule, bound: Optional[int] = None
) -> Optional[Matrix2]:
    """
    Decide si dos módulos trazables sobre C son isomorfos.

    Parámetros:
      C      : álgebra común de los dos módulos.
      M1, M2 : módulos sobre C.
      bound  : cota de la búsqueda sobre Z en el caso indefinido; None toma
               QUADRINGS_SEARCH_BOUND.

    Retorna:
      P invertible con T2 = P T1 P^-1, o None. Sobre anillos finitos la
      búsqueda es exhaustiva; sobre Z los módulos pasan a formas twisted y P es
      la traspuesta del testigo de equivalencia.
    """
    _check_same_algebra(C, M1, M2)
    if M1.T == M2.T:
        return Matrix2.identity(C.context)
    if C.context.modulus is not None:
        P = _exhaustive_conjugator(M1.T, M2.T)
    else:
        P = _integral_conjugator(C, M1, M2, bound)
    if P is None:
        return None
    if P @ M1.T != M2.T @ P:
        raise ConsistencyError(
            "module isomorphism witness does not conjugate the actions",
            {"P": P.rows(), "T1": M1.T.rows(), "T2": M2.T.rows()},
        )
    return P


def _exhaustive_conjugator(T1: Matrix2, T2: Matrix2) -> Optional[Matrix2]:
    from common.forms.groups import gl2_elements

    ctx = T1.context
    n = ctx.modulus
    g = gl2_elements(ctx)
    a11, a12, a21, a22 = (e.value for e in T1.entries())
    b11, b12, b21, b22 = (e.value for e in T2.entries())
    # P T1 == T2 P entrada por entrada
    ok = (
        ((g.k * a11 + g.l * a21 - b11 * g.k - b12 * g.m) % n == 0)
        & ((g.k * a12 + g.l * a22 - b11 * g.l - b12 * g.n) % n == 0)
        & ((g.m * a11 + g.n * a21 - b21 * g.k - b22 * g.m) % n == 0)
        & ((g.m * a12 + g.n * a22 - b21 * g.l - b22 * g.n) % n == 0)
    )
    hits = np.nonzero(ok)[0]
    if not len(hits):
        return None
    i = hits[0]
    return Matrix2.from_rows(ctx, [[int(g.k[i]), int(g.l[i])], [int(g.m[i]), int(g.n[i])]])


def _integral_conjugator(
    C: QuadraticAlgebra, M1: TraceableModule, M2: TraceableModule, bound: Optional[int]
) -> Optional[Matrix2]:
    from common.algebra.correspondence import CorrespondencePair, pair_to_form
    from common.forms import ActionMode, Flavor, equivalent

    f1 = pair_to_form(CorrespondencePair(C, M1, Flavor.TWISTED))
    f2 = pair_to_form(CorrespondencePair(C, M2, Flavor.TWISTED))
    witness = equivalent(f1, f2, ActionMode.TWISTED, bound)
    logger.debug("module isomorphism over Z via forms %s and %s: %s", f1, f2, witness)
    if witness is None:
        return None
    return Matrix2(*witness.matrix.transpose().entries())
