"""Documentos JSON que lee y escribe la línea de comandos.

Todo documento de primer nivel lleva ``"schema": 1``. Los enteros sobre Z se
escriben como números JSON; los parsers aceptan también cadenas decimales.
Los residuos mod n se escriben en [0, n).
"""

import json
from typing import Any, Dict, List, Union

from common.algebra import (
    CorrespondencePair,
    QuadraticAlgebra,
    QuadraticMap,
    TraceableModule,
    make_algebra,
    make_module,
)
from common.errors import SchemaError
from common.forms import BQForm, EquivalenceWitness, Flavor, make_form
from common.ideals import ClassGroupResult, IdealLattice, hnf_lattice
from common.rings import Matrix2, RingContext, make_context

SCHEMA_VERSION = 1


def document(payload: Dict[str, Any]) -> Dict[str, Any]:
    return {"schema": SCHEMA_VERSION, **payload}


def _check_schema(data: Dict[str, Any]):
    if not isinstance(data, dict):
        raise SchemaError("expected a JSON object", {"got": type(data).__name__})
    version = data.get("schema", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {version!r}", {"schema": version})


def _field(data: Dict[str, Any], key: str):
    if key not in data:
        raise SchemaError(f"missing field {key!r}", {"field": key, "keys": sorted(data)})
    return data[key]


def _int(value) -> int:
    if isinstance(value, bool):
        raise SchemaError(f"expected an integer, got {value!r}", {"value": value})
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise SchemaError(f"expected an integer, got {value!r}", {"value": value})


def _ints(values, length: int) -> List[int]:
    if not isinstance(values, list) or len(values) != length:
        raise SchemaError(f"expected a list of {length} integers, got {values!r}", {"value": values})
    return [_int(v) for v in values]


def _matrix_rows(value) -> List[List[int]]:
    if not isinstance(value, list) or len(value) != 2:
        raise SchemaError(f"expected a 2x2 matrix, got {value!r}", {"value": value})
    return [_ints(row, 2) for row in value]


# anillos

def ring_to_json(ctx: RingContext) -> Union[str, Dict[str, int]]:
    return "Z" if ctx.modulus is None else {"zmod": ctx.modulus}


def parse_ring(value) -> RingContext:
    if isinstance(value, dict) and "zmod" in value:
        return make_context({"zmod": _int(value["zmod"])})
    return make_context(value)


def matrix_to_json(m: Matrix2) -> List[List[int]]:
    return m.rows()


# formas

def form_to_json(f: BQForm) -> Dict[str, Any]:
    return {"ring": ring_to_json(f.context), "coeffs": list(f.coeffs()), "flavor": f.flavor.value}


def parse_form(data: Dict[str, Any]) -> BQForm:
    _check_schema(data)
    ctx = parse_ring(data.get("ring", "Z"))
    flavor = data.get("flavor", Flavor.LINEAR.value)
    try:
        flavor = Flavor(flavor)
    except ValueError:
        raise SchemaError(f"unknown flavor {flavor!r}", {"flavor": flavor})
    return make_form(ctx, _ints(_field(data, "coeffs"), 3), flavor)


def witness_to_json(witness: EquivalenceWitness) -> Dict[str, Any]:
    return {"matrix": matrix_to_json(witness.matrix), "unit": witness.unit.value}


# álgebras, módulos y pares

def algebra_to_json(C: QuadraticAlgebra) -> Dict[str, Any]:
    return {"ring": ring_to_json(C.context), "q": C.q.value, "r": C.r.value, "orientation": C.orientation}


def parse_algebra(data: Dict[str, Any]) -> QuadraticAlgebra:
    _check_schema(data)
    ctx = parse_ring(data.get("ring", "Z"))
    orientation = _int(data.get("orientation", 1))
    if orientation not in (1, -1):
        raise SchemaError(f"orientation must be 1 or -1, got {orientation}", {"orientation": orientation})
    return make_algebra(_int(_field(data, "q")), _int(_field(data, "r")), orientation, ctx)


def module_to_json(M: TraceableModule) -> Dict[str, Any]:
    return {"algebra": algebra_to_json(M.algebra), "T": matrix_to_json(M.T)}


def parse_module(data: Dict[str, Any]) -> TraceableModule:
    _check_schema(data)
    algebra = parse_algebra(data["algebra"] if "algebra" in data else data)
    return make_module(algebra, _matrix_rows(_field(data, "T")))


def pair_to_json(pair: CorrespondencePair) -> Dict[str, Any]:
    return {**module_to_json(pair.module), "flavor": pair.flavor.value}


def parse_pair(data: Dict[str, Any]) -> CorrespondencePair:
    module = parse_module(data)
    flavor = data.get("flavor", Flavor.LINEAR.value)
    try:
        return CorrespondencePair.of(module, Flavor(flavor))
    except ValueError:
        raise SchemaError(f"unknown flavor {flavor!r}", {"flavor": flavor})


# ideales y grupos de clases

def ideal_to_json(I: IdealLattice) -> Dict[str, Any]:
    return {"algebra": algebra_to_json(I.algebra), "hnf": I.hnf, "den": I.den}


def parse_ideal(data: Dict[str, Any]) -> IdealLattice:
    _check_schema(data)
    algebra = parse_algebra(_field(data, "algebra"))
    (a, b), (zero, d) = _matrix_rows(_field(data, "hnf"))
    if zero != 0:
        raise SchemaError("HNF matrix must be upper triangular", {"hnf": data["hnf"]})
    return hnf_lattice(algebra, [(a, 0), (b, d)], _int(data.get("den", 1)))


def class_group_to_json(result: ClassGroupResult, stable: bool = False) -> Dict[str, Any]:
    payload = {
        "D": result.discriminant,
        "class_number": result.class_number,
        "forms": [list(f.coeffs()) for f in result.forms],
        "table": result.table.tolist(),
        "invariants": list(result.invariants),
    }
    if not stable:
        payload["elapsed"] = round(result.elapsed, 6)
    return payload


# aplicaciones cuadráticas

def qmap_to_json(qm: QuadraticMap) -> Dict[str, Any]:
    return {"ring": ring_to_json(qm.context), "values": list(qm.values())}


def parse_qmap(data: Dict[str, Any]) -> QuadraticMap:
    _check_schema(data)
    ctx = parse_ring(data.get("ring", "Z"))
    return QuadraticMap.of(ctx, *_ints(_field(data, "values"), 3))


def parse_document(data: Dict[str, Any]):
    """Parsea el objeto que describa ``data``."""
    _check_schema(data)
    if "coeffs" in data:
        return parse_form(data)
    if "hnf" in data:
        return parse_ideal(data)
    if "T" in data:
        return parse_pair(data)
    if "values" in data:
        return parse_qmap(data)
    if "q" in data and "r" in data:
        return parse_algebra(data)
    raise SchemaError("unrecognized document", {"keys": sorted(data)})


def parse_input(file_path):
    """
    Lee un archivo JSON y parsea el objeto que contiene.

    Parámetros:
        file_path: ruta al archivo JSON.

    Retorna:
        BQForm, CorrespondencePair, IdealLattice, QuadraticMap o\n        QuadraticAlgebra según el documento.
    """
    try:
        with open(file_path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"could not decode JSON from {file_path}", {"path": str(file_path), "error": str(exc)})
    return parse_document(data)


# censo

def orbit_to_json(orbit) -> Dict[str, Any]:
    return {
        "representative": list(orbit.representative),
        "size": orbit.size,
        "discriminants": list(orbit.discriminants),
        "primitive": orbit.primitive,
    }


def census_to_json(census) -> Dict[str, Any]:
    return {
        "ring": census.ring,
        "flavor": census.flavor.value,
        "side": census.side,
        "total": census.total,
        "orbits": [orbit_to_json(o) for o in census.orbits],
    }


def report_to_json(report, stable: bool = False) -> Dict[str, Any]:
    payload = {
        "ring": report.ring,
        "flavor": report.flavor.value,
        "passed": report.passed,
        "form_states": report.form_states,
        "pair_states": report.pair_states,
        "form_orbits": report.form_orbits,
        "pair_classes": report.pair_classes,
        "matches": [{"form": list(f), "pair": list(p)} for f, p in report.matches],
        "discrepancies": list(report.discrepancies),
    }
    if not stable:
        payload["elapsed"] = round(report.elapsed, 6)
    return payload
