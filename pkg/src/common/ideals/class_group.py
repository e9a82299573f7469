"""Composición de Gauss mediante producto de ideales, y grupos de clases para D < 0."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from common.algebra import CorrespondencePair, form_to_pair, pair_to_form, shift_module
from common.errors import (
    ConsistencyError,
    DegenerateError,
    DiscriminantMismatchError,
    ImprimitiveError,
    UnsupportedRingError,
)
from common.forms import BQForm, Flavor, GL2Element, apply_gl2, discriminant, is_primitive, reduce_posdef, reduced_forms
from common.ideals.ideal_arithmetic import ideal_to_module, multiply_ideals, realize_as_ideal
from common.parallel import map_ordered
from common.rings import ZZ

logger = logging.getLogger(__name__)


def _standard_pair(f: BQForm, D: int) -> CorrespondencePair:
    """El par de f, desplazado para que el álgebra sea Z[tau]/(tau^2 + q0 tau + (q0^2 - D)/4)."""
    pair = form_to_pair(f)
    q0 = D % 2
    s = (q0 - f.b.value) // 2
    return CorrespondencePair.of(shift_module(pair.module, s), Flavor.TWISTED)


def compose_forms(f1: BQForm, f2: BQForm) -> BQForm:
    """
    Una forma en la clase producto de f1 y f2.

    Parámetros:
        f1, f2: formas primitivas sobre Z del mismo discriminante no nulo.

    Retorna:
        BQForm de la clase compuesta, reducida cuando D < 0.
    """
    for f in (f1, f2):
        if f.context != ZZ:
            raise UnsupportedRingError("composition is implemented over Z", {"ring": f.context.descriptor})
        if not is_primitive(f):
            raise ImprimitiveError(f"{f} is not primitive", {"form": list(f.coeffs())})
    D = discriminant(f1).value
    if discriminant(f2).value != D:
        raise DiscriminantMismatchError(
            "forms of different discriminants",
            {"f1": list(f1.coeffs()), "f2": list(f2.coeffs()), "D1": D, "D2": discriminant(f2).value},
        )
    if D == 0:
        raise DegenerateError("composition needs a non-zero discriminant", {"D": D})

    p1, p2 = _standard_pair(f1, D), _standard_pair(f2, D)
    if p1.algebra != p2.algebra:
        raise ConsistencyError("standard presentations differ", {"C1": str(p1.algebra), "C2": str(p2.algebra)})
    C = p1.algebra
    product = multiply_ideals(C, realize_as_ideal(p1), realize_as_ideal(p2))
    f = pair_to_form(CorrespondencePair.of(ideal_to_module(C, product), Flavor.TWISTED))
    if D < 0:
        if f.a.value < 0:
            f = apply_gl2(f, GL2Element.of(ZZ, 1, 0, 0, -1))
        f, _ = reduce_posdef(f)
    logger.debug("%s * %s = %s via %s", f1, f2, f, product)
    return BQForm(ZZ, f.a, f.b, f.c, f1.flavor)


@dataclass(frozen=True)
class ClassGroupResult:
    discriminant: int
    forms: Tuple[BQForm, ...]
    table: np.ndarray = field(compare=False)
    invariants: Tuple[int, ...]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def class_number(self) -> int:
        return len(self.forms)

    @property
    def identity(self) -> int:
        return 0

    def index(self, f: BQForm) -> int:
        for i, g in enumerate(self.forms):
            if g.coeffs() == f.coeffs():
                return i
        raise KeyError(str(f))

    def inverse(self, i: int) -> int:
        return int(np.nonzero(self.table[i] == self.identity)[0][0])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(i), -k)
        result, base = self.identity, i
        while k:
            if k & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            k >>= 1
        return result


def _prime_factors(n: int) -> Dict[int, int]:
    found: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        found[n] = found.get(n, 0) + 1
    return found


def _powers(table: np.ndarray, k: int, identity: int) -> np.ndarray:
    result = np.full(len(table), identity, dtype=np.int64)
    base = np.arange(len(table), dtype=np.int64)
    while k:
        if k & 1:
            result = table[result, base]
        base = table[base, base]
        k >>= 1
    return result


def invariant_factors(table: np.ndarray, identity: int = 0) -> List[int]:
    """Factores invariantes d1 | d2 | ... del grupo abeliano finito con esta tabla.

    Para cada primo p, la cantidad de elementos anulados por p^k determina
    cuántos factores cíclicos de p tienen orden al menos p^k.
    """
    table = np.asarray(table, dtype=np.int64)
    order = len(table)
    per_prime: Dict[int, List[int]] = {}
    for p, e in _prime_factors(order).items():
        full = p**e
        at_least = []
        previous, k = 1, 1
        while previous < full:
            count = int(np.count_nonzero(_powers(table, p**k, identity) == identity))
            ratio, steps = count // previous, 0
            while ratio > 1:
                ratio //= p
                steps += 1
            at_least.append(steps)
            previous, k = count, k + 1
        # exponentes de los p-factores cíclicos, de mayor a menor
        per_prime[p] = [sum(1 for m in at_least if m >= i) for i in range(1, (at_least[0] if at_least else 0) + 1)]
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in per_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return sorted(factors)


def class_group(D: int, jobs: Optional[int] = None) -> ClassGroupResult:
    """Grupo de clases de formas primitivas definidas positivas de discriminante D < 0."""
    start = time.monotonic()
    forms = reduced_forms(D, primitive_only=True, flavor=Flavor.TWISTED)
    index = {f.coeffs(): i for i, f in enumerate(forms)}

    def row(i: int) -> List[int]:
        out = []
        for g in forms:
            h = compose_forms(forms[i], g)
            if h.coeffs() not in index:
                raise ConsistencyError(
                    "composition left the set of reduced forms",
                    {"f": list(forms[i].coeffs()), "g": list(g.coeffs()), "result": list(h.coeffs())},
                )
            out.append(index[h.coeffs()])
        return out

    table = np.array(map_ordered(row, range(len(forms)), jobs), dtype=np.int64)
    _check_group(table)
    table.setflags(write=False)
    invariants = invariant_factors(table)
    elapsed = time.monotonic() - start
    logger.info("D = %d: h = %d, invariants %s (%.3fs)", D, len(forms), invariants, elapsed)
    return ClassGroupResult(D, tuple(forms), table, tuple(invariants), elapsed)


def _check_group(table: np.ndarray):
    h = len(table)
    expected = np.arange(h)
    if not (np.array_equal(table[0], expected) and np.array_equal(table[:, 0], expected)):
        raise ConsistencyError("principal form is not the identity", {"table": table.tolist()})
    for i in range(h):
        if not np.array_equal(np.sort(table[i]), expected):
            raise ConsistencyError("composition table is not a Latin square", {"row": i})
    if not np.array_equal(table, table.T):
        raise ConsistencyError("composition is not commutative", {"table": table.tolist()})
