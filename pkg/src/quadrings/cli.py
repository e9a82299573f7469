"""Interfaz de línea de comandos.

Cada subcomando imprime un documento JSON (``--format json``, por defecto) o
una versión corta en texto. Los errores de dominio salen con 1 y un error JSON
en stderr; los errores de uso salen con 2.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from census import DEFAULT_CENSUS_BOUND, enumerate_form_orbits, enumerate_pair_classes, verify_bijection
from common.algebra import (
    QuadraticMap,
    base_change,
    form_to_pair,
    form_to_quadratic_map,
    is_primitive_map,
    module_isomorphic,
    pair_to_form,
    pair_to_form_global,
    quadratic_map_to_form,
)
from common.errors import ConfigError, FlavorError, QuadRingsError, SchemaError
from common.forms import (
    DEFAULT_SEARCH_BOUND,
    ActionMode,
    BQForm,
    Flavor,
    GL2Element,
    apply_gl1,
    apply_gl2,
    default_mode,
    discriminant,
    equivalent,
    is_primitive,
    make_form,
    reduce_posdef,
)
from common.ideals import class_group, compose_forms, ideal_norm, ideal_to_module, realize_as_ideal
from common.parsing.dot_export import class_group_graph, matching_graph, write_graph
from common.parsing.json_parser import (
    census_to_json,
    class_group_to_json,
    document,
    form_to_json,
    ideal_to_json,
    matrix_to_json,
    pair_to_json,
    parse_input,
    parse_pair,
    qmap_to_json,
    report_to_json,
    witness_to_json,
)
from common.rings import RingContext, make_context

logger = logging.getLogger(__name__)

Output = Tuple[Dict[str, Any], str]


@dataclass(frozen=True)
class CliConfig:
    command: str
    ring: RingContext
    format: str
    jobs: int
    search_bound: int
    verbosity: int
    args: argparse.Namespace

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        jobs = args.jobs if args.jobs is not None else _env_int("QUADRINGS_JOBS", 1)
        if jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {jobs}", {"jobs": jobs})
        bound = args.search_bound
        if bound is None:
            bound = _env_int("QUADRINGS_SEARCH_BOUND", DEFAULT_SEARCH_BOUND)
        if bound < 0:
            raise ConfigError(f"search bound must be non-negative, got {bound}", {"search_bound": bound})
        return cls(args.command, make_context(args.ring), args.format, jobs, bound, args.verbose, args)


def _env_int(name: str, fallback: int) -> int:
    value = os.environ.get(name)
    if not value:
        return fallback
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {value!r}", {"variable": name, "value": value})

def _int_list(length: int) -> Callable[[str], List[int]]:
    def parse(text: str) -> List[int]:
        parts = [p.strip() for p in text.split(",")]
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {length} comma separated integers, got {text!r}")
        if len(values) != length:
            raise argparse.ArgumentTypeError(f"expected {length} comma separated integers, got {text!r}")
        return values

    return parse


_triple = _int_list(3)
_quad = _int_list(4)


def _load_json(value: str) -> Any:
    if value.startswith("@"):
        with open(value[1:], "r") as f:
            text = f.read()
    else:
        text = value
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"could not decode JSON: {exc}", {"input": value})


def _form(cfg: CliConfig, coeffs: Sequence[int]):
    return make_form(cfg.ring, coeffs, cfg.args.flavor)


def _pair_or_form(cfg: CliConfig):
    args = cfg.args
    if getattr(args, "pair", None):
        if args.pair.startswith("@"):
            obj = parse_input(args.pair[1:])
            return form_to_pair(obj) if isinstance(obj, BQForm) else obj
        return parse_pair(_load_json(args.pair))
    if getattr(args, "form", None):
        return form_to_pair(_form(cfg, args.form))
    raise SchemaError("give a form with -f or a pair with --pair", {})


def _form_text(f) -> str:
    return f"({f.a}, {f.b}, {f.c}) over {f.context.descriptor} [{f.flavor.value}]"


# subcomandos

def cmd_disc(cfg: CliConfig) -> Output:
    f = _form(cfg, cfg.args.form)
    D = discriminant(f)
    return {"form": form_to_json(f), "discriminant": D.value}, f"disc {_form_text(f)} = {D}"


def cmd_act(cfg: CliConfig) -> Output:
    args = cfg.args
    f = _form(cfg, args.form)
    mode = ActionMode(args.mode) if args.mode else default_mode(f.flavor)
    g = GL2Element.of(cfg.ring, *args.matrix)
    if mode is ActionMode.LINEAR:
        image = apply_gl1(apply_gl2(f, g, ActionMode.TWISTED), 1 if args.unit is None else args.unit)
    elif args.unit is not None:
        raise FlavorError(f"--unit needs linear mode, got {mode.value}", {"mode": mode.value, "unit": args.unit})
    else:
        image = apply_gl2(f, g, mode)
    return {"form": form_to_json(image), "mode": mode.value}, _form_text(image)


def cmd_reduce(cfg: CliConfig) -> Output:
    f = _form(cfg, cfg.args.form)
    reduced, M = reduce_posdef(f)
    return {"form": form_to_json(reduced), "matrix": matrix_to_json(M)}, f"{_form_text(reduced)} via {M.rows()}"


def cmd_equiv(cfg: CliConfig) -> Output:
    args = cfg.args
    if len(args.form) != 2:
        raise SchemaError("equiv takes exactly two forms", {"count": len(args.form)})
    f1, f2 = (_form(cfg, c) for c in args.form)
    witness = equivalent(f1, f2, args.mode, cfg.search_bound)
    payload = {"equivalent": witness is not None, "witness": witness_to_json(witness) if witness else None}
    if witness is None:
        text = f"no witness (entries <= {cfg.search_bound} over Z)" if cfg.ring.modulus is None else "not equivalent"
    else:
        text = f"equivalent via {witness.matrix.rows()} unit {witness.unit}"
    return payload, text


def cmd_to_pair(cfg: CliConfig) -> Output:
    pair = form_to_pair(_form(cfg, cfg.args.form))
    text = f"q={pair.algebra.q} r={pair.algebra.r} T={pair.T.rows()}"
    return pair_to_json(pair), text


def cmd_to_form(cfg: CliConfig) -> Output:
    pair = _pair_or_form(cfg)
    f = pair_to_form_global(pair) if cfg.args.use_global else pair_to_form(pair)
    return {"form": form_to_json(f)}, _form_text(f)


def cmd_compose(cfg: CliConfig) -> Output:
    forms = cfg.args.form
    if len(forms) != 2:
        raise SchemaError("compose takes exactly two forms", {"count": len(forms)})
    f1, f2 = (make_form(cfg.ring, c, Flavor.TWISTED) for c in forms)
    f = compose_forms(f1, f2)
    return {"form": form_to_json(f), "discriminant": discriminant(f).value}, _form_text(f)


def cmd_classgroup(cfg: CliConfig) -> Output:
    args = cfg.args
    result = class_group(args.D, cfg.jobs)
    if args.dot:
        write_graph(class_group_graph(result), args.dot)
    lines = [f"D = {result.discriminant}  h = {result.class_number}  invariants {list(result.invariants)}"]
    width = max(len(str(f.coeffs())) for f in result.forms)
    for i, f in enumerate(result.forms):
        row = " ".join(f"{j:>3d}" for j in result.table[i])
        lines.append(f"{i:>3d}  {str(f.coeffs()):<{width}}  {row}")
    return class_group_to_json(result, args.stable), "\n".join(lines)


def cmd_realize_ideal(cfg: CliConfig) -> Output:
    pair = _pair_or_form(cfg)
    ideal = realize_as_ideal(pair)
    norm = ideal_norm(ideal)
    P = module_isomorphic(pair.algebra, ideal_to_module(pair.algebra, ideal), pair.module, cfg.search_bound)
    payload = {**ideal_to_json(ideal), "norm": int(norm), "isomorphic": P is not None}
    return payload, f"{ideal} norm {norm}" + ("" if P is not None else " (no module witness within bound)")


def cmd_kneser(cfg: CliConfig) -> Output:
    args = cfg.args
    if args.qmap:
        qm = QuadraticMap.of(cfg.ring, *args.qmap)
        f = quadratic_map_to_form(qm, args.flavor)
        payload = {"form": form_to_json(f), "primitive": is_primitive(f)}
        return payload, _form_text(f)
    if not args.form:
        raise SchemaError("give a form with -f or values with --qmap", {})
    f = _form(cfg, args.form)
    qm = form_to_quadratic_map(f)
    payload = {"qmap": qmap_to_json(qm), "primitive": is_primitive_map(qm)}
    return payload, f"q(m1)={qm.q1} q(m2)={qm.q2} q(m1+m2)={qm.q12}"


def cmd_base_change(cfg: CliConfig) -> Output:
    args = cfg.args
    target = make_context(args.to)
    if args.form:
        f = _form(cfg, args.form)
        image = base_change(f, target)
        commutes = base_change(form_to_pair(f), target) == form_to_pair(image)
        return {"form": form_to_json(image), "commutes": commutes}, _form_text(image)
    pair = _pair_or_form(cfg)
    image = base_change(pair, target)
    commutes = base_change(pair_to_form(pair), target) == pair_to_form(image)
    text = f"q={image.algebra.q} r={image.algebra.r} T={image.T.rows()}"
    return {"pair": pair_to_json(image), "commutes": commutes}, text


def cmd_verify(cfg: CliConfig) -> Output:
    args = cfg.args
    flavors = list(Flavor) if args.flavor == "all" else [Flavor(args.flavor)]
    reports = [verify_bijection(cfg.ring, fl, args.bound, cfg.jobs) for fl in flavors]
    if args.dot:
        write_graph(matching_graph(reports[-1]), args.dot)
    passed = all(r.passed for r in reports)
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.ring} {r.flavor.value}: {r.form_orbits} form orbits, {r.pair_classes} pair classes"
        lines.append(line)
        for problem in r.discrepancies:
            lines.append(f"  {problem['kind']}: {json.dumps(problem)}")
        if not args.stable:
            lines.append(f"Elapsed time: {r.elapsed:.4f} seconds")
    payload = {"passed": passed, "reports": [report_to_json(r, args.stable) for r in reports]}
    return payload, "\n".join(lines)


def cmd_census(cfg: CliConfig) -> Output:
    args = cfg.args
    enumerate_orbits = enumerate_form_orbits if args.side == "forms" else enumerate_pair_classes
    census = enumerate_orbits(cfg.ring, args.flavor, args.bound, cfg.jobs)
    lines = [f"{census.ring} {census.flavor.value} {census.side}: {census.total} states, {len(census.orbits)} orbits"]
    for o in census.orbits:
        mark = " primitive" if o.primitive else ""
        lines.append(f"  {o.representative} size {o.size} disc {list(o.discriminants)}{mark}")
    return census_to_json(census), "\n".join(lines)


COMMANDS: Dict[str, Callable[[CliConfig], Output]] = {
    "disc": cmd_disc,
    "act": cmd_act,
    "reduce": cmd_reduce,
    "equiv": cmd_equiv,
    "to-pair": cmd_to_pair,
    "to-form": cmd_to_form,
    "compose": cmd_compose,
    "classgroup": cmd_classgroup,
    "realize-ideal": cmd_realize_ideal,
    "kneser": cmd_kneser,
    "base-change": cmd_base_change,
    "census": cmd_census,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="Z", help='base ring: "Z" or "zmod:n" (default Z)')
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--jobs", type=int, default=None, help="worker threads (env QUADRINGS_JOBS)")
    common.add_argument(
        "--search-bound",
        type=int,
        default=None,
        help="entry bound for the searches over Z run by equiv and realize-ideal (env QUADRINGS_SEARCH_BOUND)",
    )
    common.add_argument("-v", "--verbose", action="count", default=0)

    flavor = argparse.ArgumentParser(add_help=False)
    flavor.add_argument("--flavor", choices=[f.value for f in Flavor], default=Flavor.LINEAR.value)

    parser = argparse.ArgumentParser(
        prog="quadrings",
        description="Binary quadratic forms, quadratic rings and their modules. "
        "Negative triples go after '=': -f=-1,0,3.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("disc", parents=[common, flavor], help="discriminant of a form")
    p.add_argument("-f", "--form", type=_triple, required=True)

    p = sub.add_parser("act", parents=[common, flavor], help="act on a form by a matrix")
    p.add_argument("-f", "--form", type=_triple, required=True)
    p.add_argument("--matrix", type=_quad, required=True, help="k,l,m,n")
    p.add_argument("--mode", choices=[m.value for m in ActionMode], default=None)
    p.add_argument("--unit", type=int, default=None, help="GL1 factor, linear mode only (default 1)")

    p = sub.add_parser("reduce", parents=[common, flavor], help="reduce a positive definite form over Z")
    p.add_argument("-f", "--form", type=_triple, required=True)

    p = sub.add_parser("equiv", parents=[common, flavor], help="equivalence witness between two forms")
    p.add_argument("-f", "--form", type=_triple, action="append", required=True)
    p.add_argument("--mode", choices=[m.value for m in ActionMode], default=None)

    p = sub.add_parser("to-pair", parents=[common, flavor], help="form -> (algebra, module)")
    p.add_argument("-f", "--form", type=_triple, required=True)

    p = sub.add_parser("to-form", parents=[common, flavor], help="(algebra, module) -> form")
    p.add_argument("--pair", help="pair JSON text or @path")
    p.add_argument("-f", "--form", type=_triple)
    p.add_argument("--global", dest="use_global", action="store_true", help="use the shift-free construction")

    p = sub.add_parser("compose", parents=[common], help="compose two primitive forms over Z")
    p.add_argument("-f", "--form", type=_triple, action="append", required=True)

    p = sub.add_parser("classgroup", parents=[common], help="class group of a negative discriminant")
    p.add_argument("-D", type=int, required=True)
    p.add_argument("--dot", help="write the Cayley graph (DOT, or SVG for .svg)")
    p.add_argument("--stable", action="store_true", help="omit timing")

    p = sub.add_parser("realize-ideal", parents=[common, flavor], help="module -> ideal over Z")
    p.add_argument("--pair", help="pair JSON text or @path")
    p.add_argument("-f", "--form", type=_triple)

    p = sub.add_parser("kneser", parents=[common, flavor], help="form <-> quadratic map")
    p.add_argument("-f", "--form", type=_triple)
    p.add_argument("--qmap", type=_triple, help="q(m1),q(m2),q(m1+m2)")

    p = sub.add_parser("base-change", parents=[common, flavor], help="reduce into Z/n")
    p.add_argument("--to", required=True, help="target ring, e.g. zmod:5")
    p.add_argument("--pair", help="pair JSON text or @path")
    p.add_argument("-f", "--form", type=_triple)

    p = sub.add_parser("census", parents=[common, flavor], help="orbits of forms or pairs over Z/n")
    p.add_argument("--side", choices=["forms", "pairs"], default="forms")
    p.add_argument("--bound", type=int, default=DEFAULT_CENSUS_BOUND, help="largest ring size allowed")

    p = sub.add_parser("verify", parents=[common], help="exhaustive bijection check over Z/n")
    p.add_argument("--flavor", choices=[f.value for f in Flavor] + ["all"], default="all")
    p.add_argument("--bound", type=int, default=DEFAULT_CENSUS_BOUND, help="largest ring size allowed")
    p.add_argument("--stable", action="store_true", help="omit timing")
    p.add_argument("--dot", help="write the matching graph of the last flavor")
    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    _configure_logging(args.verbose)
    try:
        cfg = CliConfig.from_args(args)
        payload, text = COMMANDS[cfg.command](cfg)
    except QuadRingsError as exc:
        logger.debug("command failed", exc_info=True)
        print(json.dumps(exc.to_payload()), file=sys.stderr)
        return 1
    except OSError as exc:
        print(json.dumps({"schema": 1, "error": "io", "message": str(exc), "details": {}}), file=sys.stderr)
        return 1
    if cfg.format == "json":
        print(json.dumps(document(payload)))
    else:
        print(text)
    if cfg.command == "verify" and not payload["passed"]:
        return 1
    return 0


def main():
    sys.exit(dispatch())
