"""Anillos base conmutativos: los enteros y los anillos de restos Z/n.

Los elementos llevan su contexto; operar con elementos de contextos distintos
lanza ``ContextMismatchError``. Los ``int`` de Python se mezclan libremente y
se convierten al contexto del elemento.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Iterator, List, Optional, Union

from common.errors import ContextMismatchError, InvalidModulusError, NonUnitError, SchemaError, UnsupportedRingError


class RingContext(ABC):
    """Anillo conmutativo con igualdad decidible y aritmética exacta."""

    @property
    @abstractmethod
    def descriptor(self) -> str: ...

    @property
    @abstractmethod
    def modulus(self) -> Optional[int]: ...

    @abstractmethod
    def reduce(self, value: int) -> int: ...

    @abstractmethod
    def is_unit_value(self, value: int) -> bool: ...

    @abstractmethod
    def ideal_is_unit(self, values: List[int]) -> bool: ...

    @abstractmethod
    def inverse_value(self, value: int) -> int: ...

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    def __call__(self, value: Union[int, str, "RingElement"]) -> "RingElement":
        if isinstance(value, RingElement):
            if value.context != self:
                raise ContextMismatchError(
                    f"element of {value.context.descriptor} used in {self.descriptor}",
                    {"expected": self.descriptor, "got": value.context.descriptor},
                )
            return value
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise TypeError(f"cannot coerce {value!r} into {self.descriptor}")
        return RingElement(self, self.reduce(int(value)))

    def zero(self) -> "RingElement":
        return self(0)

    def one(self) -> "RingElement":
        return self(1)

    def inverse(self, x: "RingElement") -> "RingElement":
        x = self(x)
        if not self.is_unit_value(x.value):
            raise NonUnitError(f"{x} is not a unit in {self.descriptor}", {"value": x.value})
        return RingElement(self, self.inverse_value(x.value))

    @property
    def size(self) -> int:
        if self.modulus is None:
            raise UnsupportedRingError("Z is infinite", {"ring": self.descriptor})
        return self.modulus

    def elements(self) -> Iterator["RingElement"]:
        for v in range(self.size):
            yield RingElement(self, v)

    def units(self) -> List["RingElement"]:
        return [x for x in self.elements() if self.is_unit_value(x.value)]

    def local_factors(self) -> List[int]:
        """Factores potencia de primo del módulo, ordenados por primo."""
        return _prime_power_factors(self.size)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RingContext) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    def __repr__(self) -> str:
        return f"RingContext({self.descriptor})"


class IntegerRing(RingContext):
    @property
    def descriptor(self) -> str:
        return "Z"

    @property
    def modulus(self) -> Optional[int]:
        return None

    def reduce(self, value: int) -> int:
        return value

    def is_unit_value(self, value: int) -> bool:
        return value in (1, -1)

    def ideal_is_unit(self, values: List[int]) -> bool:
        return bool(values) and math.gcd(*values) == 1

    def inverse_value(self, value: int) -> int:
        return value


class IntegersModN(RingContext):
    def __init__(self, n: int):
        if n < 2:
            raise InvalidModulusError(f"modulus must be at least 2, got {n}", {"modulus": n})
        self._n = n

    @property
    def descriptor(self) -> str:
        return f"zmod:{self._n}"

    @property
    def modulus(self) -> Optional[int]:
        return self._n

    def reduce(self, value: int) -> int:
        return value % self._n

    def is_unit_value(self, value: int) -> bool:
        return math.gcd(value, self._n) == 1

    def ideal_is_unit(self, values: List[int]) -> bool:
        return bool(values) and math.gcd(*values, self._n) == 1

    def inverse_value(self, value: int) -> int:
        return pow(value, -1, self._n)


@dataclass(frozen=True, eq=False)
class RingElement:
    context: RingContext
    value: int

    def _other(self, other: Any) -> Optional[int]:
        if isinstance(other, RingElement):
            if other.context != self.context:
                raise ContextMismatchError(
                    f"cannot combine elements of {self.context.descriptor} and {other.context.descriptor}",
                    {"left": self.context.descriptor, "right": other.context.descriptor},
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return None

    def _make(self, value: int) -> "RingElement":
        return RingElement(self.context, self.context.reduce(value))

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else self._make(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else self._make(self.value - v)

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else self._make(v - self.value)

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else self._make(self.value * v)

    __rmul__ = __mul__

    def __neg__(self) -> "RingElement":
        return self._make(-self.value)

    def __pow__(self, k: int) -> "RingElement":
        if k < 0:
            return self.context.inverse(self) ** (-k)
        if self.context.modulus is None:
            return self._make(self.value**k)
        return self._make(pow(self.value, k, self.context.modulus))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RingElement):
            return self.context == other.context and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.context.reduce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.context.descriptor, self.value))

    def __int__(self) -> int:
        return self.value

    def lift(self) -> int:
        return self.value

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"{self.value} ({self.context.descriptor})"


ZZ = IntegerRing()


@lru_cache(maxsize=None)
def _zmod(n: int) -> IntegersModN:
    return IntegersModN(n)


def make_context(descriptor: Union[str, dict, int, RingContext]) -> RingContext:
    """Construye un contexto a partir de ``"Z"``, ``"zmod:n"``, ``{"zmod": n}`` o un módulo suelto."""
    if isinstance(descriptor, RingContext):
        return descriptor
    if isinstance(descriptor, dict):
        if set(descriptor) != {"zmod"}:
            raise SchemaError(f"unknown ring descriptor {descriptor!r}", {"descriptor": descriptor})
        return make_context(int(descriptor["zmod"]))
    if isinstance(descriptor, int) and not isinstance(descriptor, bool):
        if descriptor < 2:
            raise InvalidModulusError(f"modulus must be at least 2, got {descriptor}", {"modulus": descriptor})
        return _zmod(descriptor)
    if isinstance(descriptor, str):
        text = descriptor.strip()
        if text in ("Z", "ZZ", "z"):
            return ZZ
        lower = text.lower()
        tail = None
        if lower.startswith("zmod:"):
            tail = text[5:]
        elif lower.startswith("z/"):
            tail = text[2:]
        if tail is not None:
            try:
                n = int(tail)
            except ValueError:
                raise SchemaError(f"bad modulus in ring descriptor {descriptor!r}", {"descriptor": descriptor})
            return make_context(n)
    raise SchemaError(f"unknown ring descriptor {descriptor!r}", {"descriptor": str(descriptor)})


def is_unit(x: RingElement) -> bool:
    return x.context.is_unit_value(x.value)


def generates_unit_ideal(xs: Iterable[RingElement]) -> bool:
    """
    Decide si el ideal generado por ``xs`` es todo el anillo.

    Parámetros:
      xs : lista de RingElement de un mismo contexto.

    Retorna:
      True si los elementos generan el ideal unidad. La lista vacía genera
      (0), que nunca es el ideal unidad porque el anillo nulo no es un
      contexto admitido.
    """
    xs = list(xs)
    if not xs:
        return False
    ctx = xs[0].context
    for x in xs[1:]:
        if x.context != ctx:
            raise ContextMismatchError(
                "elements of different rings in one ideal",
                {"left": ctx.descriptor, "right": x.context.descriptor},
            )
    return ctx.ideal_is_unit([x.value for x in xs])


def reduce_to(x: RingElement, target: RingContext) -> RingElement:
    """Imagen de ``x`` por el morfismo canónico a ``target`` (Z -> Z/n, Z/n -> Z/m con m | n)."""
    source = x.context
    if target.modulus is None:
        if source.modulus is not None:
            raise UnsupportedRingError(
                f"no ring map {source.descriptor} -> Z", {"source": source.descriptor}
            )
        return x
    if source.modulus is not None and source.modulus % target.modulus != 0:
        raise UnsupportedRingError(
            f"no ring map {source.descriptor} -> {target.descriptor}",
            {"source": source.descriptor, "target": target.descriptor},
        )
    return target(x.value)


def _prime_power_factors(n: int) -> List[int]:
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            factors.append(q)
        p += 1
    if n > 1:
        factors.append(n)
    return factors
