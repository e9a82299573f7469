"""Errores tipados de la biblioteca.

Cada error tiene un ``code`` estable para que la línea de comandos lo
reporte como JSON.
"""

from typing import Any, Dict, Optional


class QuadRingsError(Exception):
    code = "error"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_payload(self) -> Dict[str, Any]:
        return {
            "schema": 1,
            "error": self.code,
            "message": self.message,
            "details": self.details,
        }


class ConfigError(QuadRingsError):
    code = "config"


class InvalidModulusError(QuadRingsError):
    code = "invalid_modulus"


class ContextMismatchError(QuadRingsError):
    code = "context_mismatch"


class UnsupportedRingError(QuadRingsError):
    code = "unsupported_ring"


class NonUnitError(QuadRingsError):
    code = "non_unit"


class FlavorError(QuadRingsError):
    code = "wrong_flavor"


class NotPositiveDefiniteError(QuadRingsError):
    code = "not_positive_definite"


class InvalidDiscriminantError(QuadRingsError):
    code = "invalid_discriminant"


class DiscriminantMismatchError(QuadRingsError):
    code = "discriminant_mismatch"


class ImprimitiveError(QuadRingsError):
    code = "imprimitive"


class DegenerateError(QuadRingsError):
    code = "degenerate"


class NotTraceableError(QuadRingsError):
    code = "not_traceable"


class ConsistencyError(QuadRingsError):
    code = "consistency"


class NotFullError(QuadRingsError):
    code = "not_full"


class NotIdealError(QuadRingsError):
    code = "not_ideal"


class NotRealizableError(QuadRingsError):
    code = "not_realizable"


class BoundExceededError(QuadRingsError):
    code = "bound_exceeded"


class SchemaError(QuadRingsError):
    code = "schema"
