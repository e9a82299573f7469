"""Ideales completos de órdenes cuadráticos sobre Z y sus módulos trazables."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from common.algebra import (
    CorrespondencePair,
    QuadraticAlgebra,
    TraceableModule,
    is_traceable,
    make_module,
    module_isomorphic,
)
from common.errors import (
    ConsistencyError,
    ContextMismatchError,
    NotIdealError,
    NotRealizableError,
    NotTraceableError,
    UnsupportedRingError,
)
from common.ideals.lattice import IdealLattice, Vector, hnf_lattice
from common.rings import Matrix2

logger = logging.getLogger(__name__)


def _product(C: QuadraticAlgebra, u: Vector, v: Vector) -> Vector:
    q, r = C.q.value, C.r.value
    return (u[0] * v[0] - r * u[1] * v[1], u[0] * v[1] + u[1] * v[0] - q * u[1] * v[1])


def _check_algebra(C: QuadraticAlgebra, *ideals: IdealLattice):
    for I in ideals:
        if I.algebra != C:
            raise ContextMismatchError(
                "ideal of a different algebra", {"expected": str(C), "got": str(I.algebra)}
            )


def _coordinates(I: IdealLattice, v: Vector) -> Optional[Vector]:
    """Coordenadas enteras de un vector numerador en la base HNF de I, o None."""
    x, y = v
    if y % I.d:
        return None
    c2 = y // I.d
    rest = x - I.b * c2
    if rest % I.a:
        return None
    return rest // I.a, c2


def realize_as_ideal(pair: CorrespondencePair) -> IdealLattice:
    """
    Un ideal entero de C isomorfo al módulo de ``pair``.

    Elige m entre y, x, x + y con (m, tau.m) linealmente independientes, envía
    m a 1 y tau.m a tau, y limpia denominadores. No existe m exactamente cuando
    tau actúa sobre M como un escalar.

    Parámetros:
        pair: par (C, M) sobre Z con M trazable.

    Retorna:
        IdealLattice en HNF cuya norma es |det(m, tau.m)|.
    """
    C = pair.algebra
    if C.context.modulus is not None:
        raise UnsupportedRingError("ideals are realized over Z only", {"ring": C.context.descriptor})
    check = is_traceable(C, pair.T)
    if not check:
        raise NotTraceableError(check.diagnostic, {"T": pair.T.rows()})
    T = pair.T
    if T.is_scalar():
        raise NotRealizableError(
            "tau acts on the module as a scalar; it cannot be realized as an ideal",
            {"q": C.q.value, "r": C.r.value, "T": T.rows()},
        )
    D = (C.q * C.q - 4 * C.r).value
    if D == 0:
        logger.warning("realizing a module over the degenerate algebra %s", C)

    candidates = []
    for m in ((0, 1), (1, 0), (1, 1)):
        tm = tuple(x.value for x in T.apply(m))
        B = Matrix2.from_rows(C.context, [[m[0], tm[0]], [m[1], tm[1]]])
        if B.det().value:
            candidates.append((abs(B.det().value), m, B))
    # el menor |det| da el ideal de menor norma; los empates respetan el orden de arriba
    _, m, B = min(candidates, key=lambda t: t[0])
    det = B.det().value
    sign = 1 if det > 0 else -1
    G = B.adjugate().scale(sign)
    (g11, g12), (g21, g22) = G.rows()
    ideal = hnf_lattice(C, [(g11, g21), (g12, g22)])

    # coordenadas de las imágenes de x e y en la base HNF
    columns = [_coordinates(ideal, (g11, g21)), _coordinates(ideal, (g12, g22))]
    if None in columns:
        raise ConsistencyError("realized generators left the lattice", {"hnf": ideal.hnf})
    P = Matrix2.from_rows(C.context, [[columns[0][0], columns[1][0]], [columns[0][1], columns[1][1]]])
    image = ideal_to_module(C, ideal)
    if P @ T != image.T @ P or abs(P.det().value) != 1:
        raise ConsistencyError(
            "realized ideal is not isomorphic to the module",
            {"T": T.rows(), "ideal": ideal.hnf, "P": P.rows()},
        )
    logger.debug("realized T=%s as %s via m=%s", T.rows(), ideal, m)
    return ideal


def ideal_to_module(C: QuadraticAlgebra, I: IdealLattice) -> TraceableModule:
    """tau actuando sobre la base HNF de I."""
    _check_algebra(C, I)
    columns = []
    for v in I.basis():
        image = _coordinates(I, _product(C, (0, 1), v))
        if image is None:
            raise NotIdealError("lattice is not closed under tau", {"hnf": I.hnf})
        columns.append(image)
    M = make_module(C, [[columns[0][0], columns[1][0]], [columns[0][1], columns[1][1]]])
    if not is_traceable(C, M):
        raise ConsistencyError("ideal gave a non-traceable module", {"hnf": I.hnf, "T": M.T.rows()})
    return M


def multiply_ideals(C: QuadraticAlgebra, I: IdealLattice, J: IdealLattice) -> IdealLattice:
    _check_algebra(C, I, J)
    gens = [_product(C, u, v) for u in I.basis() for v in J.basis()]
    return hnf_lattice(C, gens, I.den * J.den)


def conjugate_ideal(C: QuadraticAlgebra, I: IdealLattice) -> IdealLattice:
    """Imagen de I bajo tau -> -q - tau."""
    _check_algebra(C, I)
    q = C.q.value
    return hnf_lattice(C, [(v0 - q * v1, -v1) for v0, v1 in I.basis()], I.den)


def scale_ideal(C: QuadraticAlgebra, I: IdealLattice, gamma: Sequence[int], den: int = 1) -> IdealLattice:
    """(gamma / den) * I con gamma = g0 + g1 tau."""
    _check_algebra(C, I)
    gamma = (int(gamma[0]), int(gamma[1]))
    return hnf_lattice(C, [_product(C, gamma, v) for v in I.basis()], I.den * den)


def ideal_norm(I: IdealLattice) -> Fraction:
    """Índice de I en C, racional para ideales fraccionarios."""
    return Fraction(I.a * I.d, I.den * I.den)


def same_ideal_class(
    C: QuadraticAlgebra, I: IdealLattice, J: IdealLattice, bound: Optional[int] = None
) -> Optional[Tuple[Vector, int]]:
    """Elementos (phi(d), d) con phi(d) I = d J, o None.

    phi es un isomorfismo de módulos I -> J y d el menor entero positivo del
    numerador de I. Sobre Z los casos indefinidos pasan por una búsqueda
    acotada, así que None indica que no se halló un isomorfismo pequeño.
    """
    _check_algebra(C, I, J)
    I0 = IdealLattice(C, I.a, I.b, I.d)
    J0 = IdealLattice(C, J.a, J.b, J.d)
    P = module_isomorphic(C, ideal_to_module(C, I0), ideal_to_module(C, J0), bound)
    if P is None:
        return None
    d = I0.a
    # d es el primer vector de la base de I0; phi(d) tiene coordenadas P e1 en la base de J0
    c1, c2 = P.e11.value, P.e21.value
    phi_d = (c1 * J0.a + c2 * J0.b, c2 * J0.d)
    if scale_ideal(C, I0, phi_d) != scale_ideal(C, J0, (d, 0)):
        raise ConsistencyError(
            "module isomorphism does not identify the ideal classes",
            {"I": I.hnf, "J": J.hnf, "phi_d": list(phi_d), "d": d},
        )
    return phi_d, d
