"""Tablas numpy de GL2(Z/n), SL2(Z/n) y (Z/n)^*.

Las filas están en orden lexicográfico de (k, l, m, n), así que toda búsqueda
y todo censo construido encima es determinista.
"""

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from common.errors import UnsupportedRingError
from common.rings import RingContext


class GroupTable(NamedTuple):
    k: np.ndarray
    l: np.ndarray
    m: np.ndarray
    n: np.ndarray
    det: np.ndarray
    det_inv: np.ndarray

    def __len__(self) -> int:
        return len(self.k)


def _modulus(ctx: RingContext) -> int:
    if ctx.modulus is None:
        raise UnsupportedRingError("group tables exist for finite rings only", {"ring": ctx.descriptor})
    return ctx.modulus


def _frozen(*arrays):
    for arr in arrays:
        arr.setflags(write=False)
    return arrays


@lru_cache(maxsize=None)
def inverse_table(n: int) -> np.ndarray:
    """inv[x] = x^-1 mod n para las unidades, 0 en el resto."""
    inv = np.zeros(n, dtype=np.int64)
    for x in range(n):
        if np.gcd(x, n) == 1:
            inv[x] = pow(x, -1, n)
    return _frozen(inv)[0]


@lru_cache(maxsize=None)
def _gl2(n: int, special: bool) -> GroupTable:
    vals = np.arange(n, dtype=np.int64)
    k, l, m, nn = (g.ravel() for g in np.meshgrid(vals, vals, vals, vals, indexing="ij"))
    det = (k * nn - l * m) % n
    keep = det == 1 if special else np.gcd(det, n) == 1
    k, l, m, nn, det = (x[keep].copy() for x in (k, l, m, nn, det))
    det_inv = inverse_table(n)[det]
    return GroupTable(*_frozen(k, l, m, nn, det, det_inv))


def gl2_elements(ctx: RingContext) -> GroupTable:
    return _gl2(_modulus(ctx), False)


def sl2_elements(ctx: RingContext) -> GroupTable:
    return _gl2(_modulus(ctx), True)


@lru_cache(maxsize=None)
def _units(n: int) -> np.ndarray:
    vals = np.arange(n, dtype=np.int64)
    return _frozen(vals[np.gcd(vals, n) == 1].copy())[0]


def unit_array(ctx: RingContext) -> np.ndarray:
    return _units(_modulus(ctx))


def substitute(a, b, c, table: GroupTable, n: int):
    """Coeficientes de f(kx + ly, mx + ny) mod n, con broadcast contra la tabla."""
    k, l, m, nn = table.k, table.l, table.m, table.n
    return (
        (a * k * k + b * k * m + c * m * m) % n,
        (2 * a * k * l + b * (k * nn + l * m) + 2 * c * m * nn) % n,
        (a * l * l + b * l * nn + c * nn * nn) % n,
    )
