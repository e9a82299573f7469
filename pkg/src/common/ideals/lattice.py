"""Retículos de rango 2 en C (x) Q en forma normal de Hermite.

Un retículo es (1/den) por el generado entero de las columnas de
[[a, b], [0, d]], en coordenadas de la base (1, tau). La HNF se normaliza
con a, d > 0 y 0 <= b < a, y los retículos fraccionarios se guardan con
gcd(a, b, d, den) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from common.algebra import QuadraticAlgebra
from common.errors import NotFullError, NotIdealError, UnsupportedRingError

Vector = Tuple[int, int]


@dataclass(frozen=True)
class IdealLattice:
    algebra: QuadraticAlgebra
    a: int
    b: int
    d: int
    den: int = 1

    @property
    def hnf(self) -> List[List[int]]:
        return [[self.a, self.b], [0, self.d]]

    def basis(self) -> Tuple[Vector, Vector]:
        """Numeradores de los dos vectores de la base; se dividen por ``den``."""
        return (self.a, 0), (self.b, self.d)

    def is_integral(self) -> bool:
        return self.den == 1

    def __str__(self) -> str:
        e1 = f"{self.a}"
        e2 = f"{self.b} + {self.d}t" if self.b else f"{self.d}t"
        body = f"({e1}, {e2})"
        return body if self.den == 1 else f"1/{self.den} {body}"


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


def hermite_normal_form(generators: Iterable[Sequence[int]]) -> Tuple[int, int, int]:
    """(a, b, d) que generan el mismo retículo de Z^2 que ``generators``."""
    pivot = None
    kernel = 0
    for x, y in generators:
        x, y = int(x), int(y)
        if y == 0:
            kernel = math.gcd(kernel, x)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        g, s, t = _egcd(py, y)
        # cambio unimodular sobre (pivot, v): un vector queda con gcd g y el otro pierde su y
        pivot = (s * px + t * x, g)
        kernel = math.gcd(kernel, (y // g) * px - (py // g) * x)
    if pivot is None or kernel == 0:
        raise NotFullError("generators do not span a rank 2 lattice", {"generators": [list(g) for g in generators]})
    x, d = pivot
    if d < 0:
        x, d = -x, -d
    return kernel, x % kernel, d


def _contains_numerator(a: int, b: int, d: int, v: Vector) -> bool:
    x, y = v
    if y % d:
        return False
    return (x - b * (y // d)) % a == 0


def hnf_lattice(C: QuadraticAlgebra, generators: Iterable[Sequence[int]], den: int = 1) -> IdealLattice:
    """
    El retículo (1/den) * span(generators).

    Parámetros:
        C: álgebra cuadrática sobre Z.
        generators: vectores enteros en la base (1, tau).
        den: denominador común positivo.

    Retorna:
        IdealLattice en HNF; lanza NotFullError si no es de rango 2 y
        NotIdealError si no es cerrado bajo tau.
    """
    if C.context.modulus is not None:
        raise UnsupportedRingError("ideal lattices live over Z", {"ring": C.context.descriptor})
    if den <= 0:
        raise ValueError(f"denominator must be positive, got {den}")
    generators = [tuple(int(x) for x in g) for g in generators]
    a, b, d = hermite_normal_form(generators)
    g = math.gcd(a, b, d, den)
    a, b, d, den = a // g, b // g, d // g, den // g
    q, r = C.q.value, C.r.value
    for v0, v1 in ((a, 0), (b, d)):
        image = (-r * v1, v0 - q * v1)
        if not _contains_numerator(a, b, d, image):
            raise NotIdealError(
                "lattice is not closed under multiplication by tau",
                {"hnf": [[a, b], [0, d]], "image": list(image)},
            )
    return IdealLattice(C, a, b, d, den)


def lattice_contains(I: IdealLattice, v: Sequence) -> bool:
    """Si el elemento v0 + v1 tau (con coeficientes racionales) pertenece a I."""
    x, y = (Fraction(c) * I.den for c in v)
    if x.denominator != 1 or y.denominator != 1:
        return False
    return _contains_numerator(I.a, I.b, I.d, (int(x), int(y)))
