"""Reducción de formas enteras definidas positivas y enumeración de formas reducidas."""

import logging
import math
from typing import List, Tuple

from common.errors import InvalidDiscriminantError, NotPositiveDefiniteError, UnsupportedRingError
from common.forms.forms import BQForm, Flavor, GL2Element, make_form
from common.rings import ZZ

logger = logging.getLogger(__name__)


def is_reduced(a: int, b: int, c: int) -> bool:
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def _mul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def reduce_posdef(f: BQForm) -> Tuple[BQForm, GL2Element]:
    """
    Reduce una forma definida positiva sobre Z.

    Parámetros:
      f : forma sobre Z con a > 0 y discriminante negativo.

    Retorna:
      (forma reducida, M): la forma cumple |b| <= a <= c, y b >= 0 cuando
      |b| = a o a = c; M está en SL2(Z) y la acción plain de M lleva ``f`` a
      la forma reducida.
    """
    if f.context.modulus is not None:
        raise UnsupportedRingError("reduction works over Z only", {"ring": f.context.descriptor})
    a, b, c = f.coeffs()
    D = b * b - 4 * a * c
    if D >= 0:
        raise NotPositiveDefiniteError(f"discriminant {D} is not negative", {"form": [a, b, c], "D": D})
    if a <= 0:
        raise NotPositiveDefiniteError(f"leading coefficient {a} is not positive", {"form": [a, b, c]})

    M = (1, 0, 0, 1)

    def normalize(a, b, c, M):
        # trasladar para que -a < b <= a
        if -a < b <= a:
            return a, b, c, M
        r = (a - b) // (2 * a)
        return a, b + 2 * r * a, a * r * r + b * r + c, _mul(M, (1, r, 0, 1))

    a, b, c, M = normalize(a, b, c, M)
    steps = 0
    while a > c or (a == c and b < 0):
        a, b, c, M = c, -b, a, _mul(M, (0, -1, 1, 0))
        a, b, c, M = normalize(a, b, c, M)
        steps += 1
    logger.debug("reduced %s to (%d,%d,%d) in %d steps", f, a, b, c, steps)
    return make_form(ZZ, (a, b, c), f.flavor), GL2Element.of(ZZ, *M)


def reduced_forms(D: int, primitive_only: bool = True, flavor=Flavor.TWISTED) -> List[BQForm]:
    """Todas las formas reducidas definidas positivas de discriminante D < 0.

    Ordenadas por (a, |b|, b < 0), así que la forma principal va primero.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminantError(f"{D} is not a negative discriminant", {"D": D})
    found = []
    a_max = math.isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if not is_reduced(a, b, c):
                continue
            if primitive_only and math.gcd(a, b, c) != 1:
                continue
            found.append((a, b, c))
    found.sort(key=lambda t: (t[0], abs(t[1]), t[1] < 0))
    return [make_form(ZZ, t, flavor) for t in found]
