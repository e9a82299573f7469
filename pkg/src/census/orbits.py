"""Censo de órbitas de formas y de pares (álgebra, módulo) sobre Z/n.

Ambos lados se enumeran como arreglos numpy de estados. La clave de órbita
de un estado es el menor índice entre todas sus imágenes bajo el grupo, así
que la clave es también el representante y el censo no depende de cómo se
reparte el trabajo entre los hilos.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

import numpy as np

from common.algebra import CorrespondencePair, base_change, cyclic_generator, make_algebra, make_module
from common.errors import BoundExceededError, UnsupportedRingError
from common.forms import Flavor
from common.forms.groups import GroupTable, gl2_elements, substitute, unit_array
from common.parallel import map_ordered
from common.rings import RingContext, make_context

logger = logging.getLogger(__name__)

DEFAULT_CENSUS_BOUND = 5
CHUNK = 32


@dataclass(frozen=True)
class Orbit:
    representative: Tuple[int, ...]
    size: int
    discriminants: Tuple[int, ...]
    primitive: bool


@dataclass(frozen=True)
class OrbitCensus:
    """Órbitas de un lado de la correspondencia.

    ``side`` es "forms" (estados (a, b, c)) o "pairs" (estados
    (q, r, t11, t12, t21, t22)). Para pares, ``primitive`` indica que el módulo
    es invertible.
    """

    ring: str
    flavor: Flavor
    side: str
    orbits: Tuple[Orbit, ...]
    total: int
    states: np.ndarray = field(repr=False, compare=False)
    keys: np.ndarray = field(repr=False, compare=False)
    lookup: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def modulus(self) -> int:
        return make_context(self.ring).modulus

    def state_index(self, values) -> int:
        n = self.modulus
        code = 0
        for v in values:
            code = code * n + int(v) % n
        if self.lookup is None:
            return code
        return int(self.lookup[code])

    def orbit_of(self, values) -> Optional[int]:
        """Índice en ``orbits`` de la órbita que contiene ``values``, None si no es un estado."""
        index = self.state_index(values)
        if index < 0:
            return None
        return self._positions()[int(self.keys[index])]

    def _positions(self) -> Dict[int, int]:
        positions = self.__dict__.get("_orbit_positions")
        if positions is None:
            positions = {self.state_index(o.representative): i for i, o in enumerate(self.orbits)}
            object.__setattr__(self, "_orbit_positions", positions)
        return positions


def _finite_context(ring: Union[RingContext, str, int], bound: int) -> RingContext:
    ctx = make_context(ring)
    if ctx.modulus is None:
        raise UnsupportedRingError("a census needs a finite ring", {"ring": ctx.descriptor})
    if ctx.modulus > bound:
        raise BoundExceededError(
            f"ring of size {ctx.modulus} exceeds the census bound {bound}",
            {"ring": ctx.descriptor, "bound": bound},
        )
    return ctx


@lru_cache(maxsize=None)
def form_states(n: int) -> np.ndarray:
    """Todos los (a, b, c) en orden lexicográfico; la fila es a n^2 + b n + c."""
    vals = np.arange(n, dtype=np.int64)
    grid = np.stack([g.ravel() for g in np.meshgrid(vals, vals, vals, indexing="ij")], axis=1)
    grid.setflags(write=False)
    return grid


@lru_cache(maxsize=None)
def pair_states(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Los (q, r, T) trazables en orden lexicográfico, y la tabla código -> índice."""
    vals = np.arange(n, dtype=np.int64)
    q, r, t11, t12, t21, t22 = (g.ravel() for g in np.meshgrid(*[vals] * 6, indexing="ij"))
    keep = (
        ((t11 + t22 + q) % n == 0)
        & ((t11 * t11 + t12 * t21 + q * t11 + r) % n == 0)
        & ((t12 * (t11 + t22 + q)) % n == 0)
        & ((t21 * (t11 + t22 + q)) % n == 0)
        & ((t21 * t12 + t22 * t22 + q * t22 + r) % n == 0)
    )
    states = np.stack([x[keep] for x in (q, r, t11, t12, t21, t22)], axis=1)
    lookup = np.full(n**6, -1, dtype=np.int64)
    lookup[np.nonzero(keep)[0]] = np.arange(len(states))
    states.setflags(write=False)
    lookup.setflags(write=False)
    return states, lookup


def _form_group(ctx: RingContext, flavor: Flavor) -> Tuple[GroupTable, np.ndarray]:
    """Filas g y factores c que actúan por f -> c * f(kx + ly, mx + ny)."""
    g = gl2_elements(ctx)
    if flavor is Flavor.PLAIN:
        return g, np.ones(len(g), dtype=np.int64)
    if flavor is Flavor.TWISTED:
        return g, g.det_inv
    units = unit_array(ctx)
    rep = len(units)
    factor = (np.repeat(g.det_inv, rep) * np.tile(units, len(g))) % ctx.modulus
    return GroupTable(*(np.repeat(x, rep) for x in g)), factor


def _pair_group(ctx: RingContext, flavor: Flavor):
    """(k, l, m, n, det_inv, u, s): T -> u W T W^-1 - sI con W = (k l; m n)."""
    g = gl2_elements(ctx)
    n = ctx.modulus
    shifts = np.arange(n, dtype=np.int64)
    if flavor is Flavor.PLAIN:
        scale = [(i, g.det[i]) for i in range(len(g))]
    elif flavor is Flavor.TWISTED:
        scale = [(i, 1) for i in range(len(g))]
    else:
        scale = [(i, int(u)) for i in range(len(g)) for u in unit_array(ctx)]
    idx = np.array([i for i, _ in scale], dtype=np.int64)
    u = np.array([v for _, v in scale], dtype=np.int64)
    base = (g.k[idx], g.l[idx], g.m[idx], g.n[idx], g.det_inv[idx], u)
    return (*(np.repeat(x, n) for x in base), np.tile(shifts, len(idx)))


def _form_keys(ctx: RingContext, flavor: Flavor, jobs: Optional[int]) -> np.ndarray:
    n = ctx.modulus
    states = form_states(n)
    table, factor = _form_group(ctx, flavor)

    def chunk_keys(start: int) -> np.ndarray:
        block = states[start : start + CHUNK]
        a, b, c = (block[:, i : i + 1] for i in range(3))
        A, B, C = substitute(a, b, c, table, n)
        A, B, C = (A * factor) % n, (B * factor) % n, (C * factor) % n
        return (A * n * n + B * n + C).min(axis=1)

    return np.concatenate(map_ordered(chunk_keys, range(0, len(states), CHUNK), jobs))


def _pair_keys(ctx: RingContext, flavor: Flavor, jobs: Optional[int]) -> np.ndarray:
    n = ctx.modulus
    states, lookup = pair_states(n)
    k, l, m, nn, dinv, u, s = _pair_group(ctx, flavor)

    def chunk_keys(start: int) -> np.ndarray:
        block = states[start : start + CHUNK]
        q, r, t11, t12, t21, t22 = (block[:, i : i + 1] for i in range(6))
        # W T
        A, B = k * t11 + l * t21, k * t12 + l * t22
        C, D = m * t11 + nn * t21, m * t12 + nn * t22
        # (W T) adj(W), luego det^-1 y u
        f = (dinv * u) % n
        e11 = ((A * nn - B * m) * f - s) % n
        e12 = ((B * k - A * l) * f) % n
        e21 = ((C * nn - D * m) * f) % n
        e22 = ((D * k - C * l) * f - s) % n
        q2 = (u * q + 2 * s) % n
        r2 = (u * u * r + u * q * s + s * s) % n
        code = ((((q2 * n + r2) * n + e11) * n + e12) * n + e21) * n + e22
        return lookup[code].min(axis=1)

    return np.concatenate(map_ordered(chunk_keys, range(0, len(states), CHUNK), jobs))


def _orbits(keys: np.ndarray, states: np.ndarray, disc: np.ndarray, primitive) -> Tuple[Orbit, ...]:
    reps, sizes = np.unique(keys, return_counts=True)
    orbits = []
    for rep, size in zip(reps, sizes):
        members = keys == rep
        representative = tuple(int(x) for x in states[rep])
        orbits.append(
            Orbit(
                representative,
                int(size),
                tuple(int(x) for x in np.unique(disc[members])),
                bool(primitive(representative)),
            )
        )
    return tuple(orbits)


def enumerate_form_orbits(
    ring: Union[RingContext, str, int],
    flavor: Union[Flavor, str] = Flavor.LINEAR,
    bound: int = DEFAULT_CENSUS_BOUND,
    jobs: Optional[int] = None,
) -> OrbitCensus:
    """
    Órbitas del grupo del sabor actuando sobre todas las formas sobre Z/n.

    Parámetros:
        ring: contexto finito Z/n, con n <= bound.
        flavor: plain (GL2), twisted (GL2 con det^-1) o linear (GL2 x GL1).
        jobs: hilos de trabajo para el cálculo de las claves.

    Retorna:
        OrbitCensus con representantes, tamaños, discriminantes y primitividad.
    """
    ctx = _finite_context(ring, bound)
    flavor = Flavor(flavor)
    n = ctx.modulus
    states = form_states(n)
    keys = _form_keys(ctx, flavor, jobs)
    a, b, c = states[:, 0], states[:, 1], states[:, 2]
    disc = (b * b - 4 * a * c) % n
    orbits = _orbits(keys, states, disc, lambda rep: np.gcd.reduce([*rep, n]) == 1)
    logger.info("%s %s forms: %d states, %d orbits", ctx.descriptor, flavor.value, len(states), len(orbits))
    return OrbitCensus(ctx.descriptor, flavor, "forms", orbits, len(states), states, keys)


def _is_invertible_state(ctx: RingContext, rep: Tuple[int, ...]) -> bool:
    q, r, t11, t12, t21, t22 = rep
    pair = CorrespondencePair.of(make_module(make_algebra(q, r, 1, ctx), [[t11, t12], [t21, t22]]))
    return all(cyclic_generator(base_change(pair, pk)) is not None for pk in ctx.local_factors())


def enumerate_pair_classes(
    ring: Union[RingContext, str, int],
    flavor: Union[Flavor, str] = Flavor.LINEAR,
    bound: int = DEFAULT_CENSUS_BOUND,
    jobs: Optional[int] = None,
) -> OrbitCensus:
    """
    Clases de isomorfismo de pares (C, M) con M trazable, sobre Z/n.

    Parámetros:
        ring: contexto finito Z/n, con n <= bound.
        flavor: grupo que actúa sobre los pares; siempre incluye la conjugación
            de T y los desplazamientos de tau, y escala tau por det g (plain),
            por nada (twisted) o por cualquier unidad (linear).
        jobs: hilos de trabajo para el cálculo de las claves.

    Retorna:
        OrbitCensus cuyo indicador ``primitive`` marca los módulos invertibles,
        decididos buscando un generador cíclico en cada factor primario de n.
    """
    ctx = _finite_context(ring, bound)
    flavor = Flavor(flavor)
    n = ctx.modulus
    states, lookup = pair_states(n)
    keys = _pair_keys(ctx, flavor, jobs)
    q, r = states[:, 0], states[:, 1]
    disc = (q * q - 4 * r) % n
    orbits = _orbits(keys, states, disc, lambda rep: _is_invertible_state(ctx, rep))
    logger.info("%s %s pairs: %d states, %d classes", ctx.descriptor, flavor.value, len(states), len(orbits))
    return OrbitCensus(ctx.descriptor, flavor, "pairs", orbits, len(states), states, keys, lookup)
