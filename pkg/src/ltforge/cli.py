"""Command-line front end.

Every command takes a JSON ``inputs`` object, validated by a per-command
schema.  Flags, ``run JOBFILE`` and ``batch MANIFEST`` all build that object
and dispatch through :func:`execute`.

Exit codes: verdicts map to 0 / 10 / 20 (all_finite / exists_infinite /
unknown), malformed input to 2 and computation errors to 3.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import jsonschema
import tomli

from . import algebraic as alg
from . import finiteness as fin
from . import lubin_tate as lt
from .errors import LTForgeError
from .padic import LocalFieldModel, PadicNumber, default_precision, galois_closure_degree, make_field
from .series import DEFAULT_ORDER, series1

EXIT_SCHEMA = 2
EXIT_COMPUTATION = 3

COMMANDS = (
    "field-info", "fg-law", "fg-mul", "fg-theta", "fg-log", "fg-point", "fg-torsion",
    "weil-check", "weil-enum", "verdict", "structure", "exceptional-set",
)


class SchemaError(Exception):
    kind = "schema_error"


# -- schemas -----------------------------------------------------------------------

_RATIONAL = {"oneOf": [
    {"type": "integer"},
    {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"},
]}
_POLY = {"type": "array", "items": _RATIONAL, "minItems": 1}
_YPOLY_OR_RATIONAL = {"oneOf": [_RATIONAL, {"type": "array", "items": _RATIONAL}]}
_ELEMENT = {"oneOf": [
    _RATIONAL,
    {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
    {"type": "object"},
]}
_FIELD_KEYS = {
    "p": {"type": "integer", "minimum": 2},
    "u_poly": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
    "e_poly": {"type": "array", "items": _YPOLY_OR_RATIONAL, "minItems": 2},
    "name": {"type": "string"},
}
_FIELD = {"type": "object", "properties": _FIELD_KEYS, "required": ["p"],
          "additionalProperties": False}
_PAIR = {"type": "object",
         "properties": dict(_FIELD_KEYS, pi=_ELEMENT, d_G={"type": "integer", "minimum": 1}),
         "required": ["p"], "additionalProperties": False}
_CHARACTER = {"type": "object", "properties": {
    "e_degree": {"type": "integer", "minimum": 1},
    "ht_weights": {"type": "array", "items": {"type": "integer"}},
    "d_tilde": {"type": "integer", "minimum": 1},
    "q_k": {"type": "integer", "minimum": 2},
    "delta": _POLY,
    "delta_norm": _RATIONAL,
    "h1": {"type": "boolean"},
}, "required": ["e_degree", "ht_weights", "d_tilde", "q_k"], "additionalProperties": False}
_PHI = {"oneOf": [{"const": "default"}, {"type": "array", "items": _ELEMENT, "minItems": 2}]}
_DEG = {"type": "integer", "minimum": 1, "maximum": 64}
_PREC = {"type": "integer", "minimum": 1, "maximum": 512}
_CLASS = {"enum": ["torus", "av", "av_potential_good", "general", "commutative_general", "abelian"]}


def _obj(props: dict, required=()) -> dict:
    return {"type": "object", "properties": props, "required": list(required),
            "additionalProperties": False}


_LAW_BASE = {"field": _FIELD, "phi": _PHI, "pi": _ELEMENT, "deg": _DEG}
INPUT_SCHEMAS = {
    "field-info": _obj({"field": _FIELD, "d_G": {"type": "integer", "minimum": 1}}, ["field"]),
    "fg-law": _obj(_LAW_BASE, ["field"]),
    "fg-mul": _obj(dict(_LAW_BASE, a=_ELEMENT), ["field", "a"]),
    "fg-theta": _obj(dict(_LAW_BASE, phi2=_PHI), ["field", "phi2"]),
    "fg-log": _obj(_LAW_BASE, ["field"]),
    "fg-point": _obj(dict(_LAW_BASE, op={"enum": ["add", "sub", "neg", "mul"]},
                          x=_ELEMENT, y=_ELEMENT, a=_ELEMENT, prec=_PREC),
                     ["field", "op", "x"]),
    "fg-torsion": _obj(dict(_LAW_BASE, level={"type": "integer", "minimum": 1}, a=_ELEMENT),
                       ["field", "level"]),
    "weil-check": _obj({"poly": _POLY, "q": {"type": "integer", "minimum": 1}, "weight": _RATIONAL,
                        "require_integer": {"type": "boolean"},
                        "choice": {"type": "integer", "minimum": 0}},
                       ["poly", "q", "weight"]),
    "weil-enum": _obj({"q": {"type": "integer", "minimum": 1},
                       "weight": {"type": "integer", "minimum": 0},
                       "max_deg": {"type": "integer", "minimum": 1}},
                      ["q", "weight", "max_deg"]),
    "verdict": {"type": "object", "properties": {
        "pair": _PAIR, "character": _CHARACTER, "class": _CLASS,
        "context": {"enum": ["Ktilde", "character_field"]}},
        "required": ["class"], "additionalProperties": False,
        "oneOf": [{"required": ["pair"]}, {"required": ["character"]}]},
    "structure": _obj({"pair": _PAIR, "K": _obj({
        "degree": {"type": "integer", "minimum": 1},
        "residue_degree": {"type": "integer", "minimum": 1},
        "conductor_bound": {"type": "integer", "minimum": 0}}, ["degree"]),
        "n": {"type": "integer", "minimum": 1}}, ["pair"]),
    "exceptional-set": _obj({"field": _FIELD, "f": {"type": "integer", "minimum": 1},
                             "g": {"type": "integer", "minimum": 1}}, ["field", "f", "g"]),
}

JOB_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "inputs": {"type": "object"},
        "output_path": {"type": "string"},
        "format": {"enum": ["json", "text"]},
    },
    "required": ["command", "inputs"],
    "additionalProperties": False,
}
MANIFEST_SCHEMA = {
    "oneOf": [
        {"type": "array", "items": {"type": "object"}},
        {"type": "object", "properties": {"jobs": {"type": "array", "items": {"type": "object"}}},
         "required": ["jobs"], "additionalProperties": False},
    ]
}


def _validate(doc, schema, what: str):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(x) for x in exc.absolute_path)
        raise SchemaError(f"{what}{' at ' + path if path else ''}: {exc.message}") from None


# -- input decoding ------------------------------------------------------------------


def _rational(x) -> Fraction:
    return Fraction(x.replace(" ", "")) if isinstance(x, str) else Fraction(x)


def _field(doc: dict) -> LocalFieldModel:
    e_poly = doc.get("e_poly")
    if e_poly is not None:
        e_poly = [[_rational(c) for c in r] if isinstance(r, list) else _rational(r) for r in e_poly]
    return make_field(doc["p"], doc.get("u_poly"), e_poly, doc.get("name", ""))


def _element(field: LocalFieldModel, doc) -> PadicNumber:
    if isinstance(doc, (int, str)):
        return field.from_rational(_rational(doc))
    return PadicNumber.from_json(field, doc)


def _frobenius(field: LocalFieldModel, phi, pi) -> lt.FrobeniusSeries:
    if phi is None or phi == "default":
        return lt.default_frobenius(field, None if pi is None else _element(field, pi))
    coeffs = {i: _element(field, c) for i, c in enumerate(phi)}
    return lt.validate_frobenius(field, series1(field, coeffs, None))


def _pair(doc: dict) -> fin.PairSpec:
    field = _field({k: v for k, v in doc.items() if k in _FIELD_KEYS})
    pi = doc.get("pi")
    return fin.make_pair(field, None if pi is None else _element(field, pi), doc.get("d_G"))


def _character(doc: dict) -> fin.CharacterSpec:
    return fin.character_spec(
        doc["e_degree"], doc["ht_weights"], doc["d_tilde"], doc["q_k"],
        delta=None if "delta" not in doc else [_rational(c) for c in doc["delta"]],
        delta_norm=None if "delta_norm" not in doc else _rational(doc["delta_norm"]),
        h1=doc.get("h1", False))


# -- handlers ------------------------------------------------------------------------------


def _field_info(inp):
    field = _field(inp["field"])
    out = {"field": field.to_json(), "p": field.p, "e": field.e, "f": field.f,
           "d": field.d, "q": field.q}
    try:
        out["d_G"] = galois_closure_degree(field, inp.get("d_G"))
    except LTForgeError as exc:
        out["d_G"] = None
        out["note"] = str(exc)
    return out, 0


def _law_setup(inp):
    field = _field(inp["field"])
    phi = _frobenius(field, inp.get("phi"), inp.get("pi"))
    return field, phi, inp.get("deg", DEFAULT_ORDER)


def _fg_law(inp):
    _, phi, D = _law_setup(inp)
    law = lt.formal_group_law(phi, D)
    out = law.to_json()
    out["axioms"] = lt.axiom_report(law)
    return out, 0


def _fg_mul(inp):
    field, phi, D = _law_setup(inp)
    return {"a": _element(field, inp["a"]).to_json(),
            "series": lt.multiplication_by(_element(field, inp["a"]), phi, D).to_json()}, 0


def _fg_theta(inp):
    field, phi, D = _law_setup(inp)
    phi2 = _frobenius(field, inp["phi2"], inp.get("pi"))
    return {"theta": lt.isomorphism_theta(phi, phi2, D).to_json()}, 0


def _fg_log(inp):
    _, phi, D = _law_setup(inp)
    return {"log": lt.formal_log(phi, D).to_json()}, 0


def _fg_point(inp):
    field, phi, D = _law_setup(inp)
    N = inp.get("prec", default_precision())
    x = _element(field, inp["x"])
    op = inp["op"]
    if op == "mul":
        if "a" not in inp:
            raise SchemaError("op 'mul' needs a")
        value = lt.point_mul(_element(field, inp["a"]), phi, x, D, N)
    else:
        law = lt.formal_group_law(phi, D)
        if op == "neg":
            value = lt.point_neg(law, x, N)
        else:
            if "y" not in inp:
                raise SchemaError(f"op {op!r} needs y")
            y = _element(field, inp["y"])
            value = lt.point_add(law, x, y, N) if op == "add" else lt.point_sub(law, x, y, N)
    return {"op": op, "value": value.to_json(), "valuation": value.valuation().to_json()}, 0


def _fg_torsion(inp):
    field, phi, _ = _law_setup(inp)
    a = inp.get("a")
    rep = lt.torsion_newton_polygon(phi, inp["level"], None if a is None else _element(field, a))
    return rep.to_json(), 0


def _weil_check(inp):
    alpha = alg.algebraic_from_poly([_rational(c) for c in inp["poly"]], inp.get("choice"))
    res = alg.is_weil(alpha, inp["q"], _rational(inp["weight"]), inp.get("require_integer", False))
    out = res.to_json()
    out["min_poly"] = alpha.to_json()["min_poly"]
    return out, 0


def _weil_enum(inp):
    polys = alg.enumerate_weil_polys(inp["q"], inp["weight"], inp["max_deg"])
    return {"q": inp["q"], "weight": inp["weight"], "max_deg": inp["max_deg"],
            "count": len(polys), "polys": [list(p) for p in polys]}, 0


def _verdict(inp):
    spec = _pair(inp["pair"]) if "pair" in inp else _character(inp["character"])
    rep = fin.verdict(spec, inp["class"], inp.get("context"))
    return rep.to_json(), rep.exit_code


def _structure(inp):
    pair = _pair(inp["pair"])
    rep = fin.structure_report(pair, inp.get("K"), inp.get("n", 1))
    return rep.to_json(), 0


def _exceptional(inp):
    field = _field(inp["field"])
    return fin.exceptional_set(inp["f"], inp["g"], field).to_json(), 0


HANDLERS = {
    "field-info": _field_info, "fg-law": _fg_law, "fg-mul": _fg_mul, "fg-theta": _fg_theta,
    "fg-log": _fg_log, "fg-point": _fg_point, "fg-torsion": _fg_torsion,
    "weil-check": _weil_check, "weil-enum": _weil_enum, "verdict": _verdict,
    "structure": _structure, "exceptional-set": _exceptional,
}


def execute(command: str, inputs: dict) -> tuple[dict, int]:
    """Validate and run one command; errors become structured documents."""
    try:
        if command not in HANDLERS:
            raise SchemaError(f"unknown command {command!r}")
        _validate(inputs, INPUT_SCHEMAS[command], f"{command} inputs")
        return HANDLERS[command](inputs)
    except SchemaError as exc:
        return _error("schema_error", str(exc)), EXIT_SCHEMA
    except LTForgeError as exc:
        return _error(exc.kind, str(exc)), EXIT_COMPUTATION
    except (ValueError, ZeroDivisionError, ArithmeticError, TypeError, KeyError) as exc:
        return _error("computation_error", f"{type(exc).__name__}: {exc}"), EXIT_COMPUTATION


def _error(kind: str, detail: str) -> dict:
    return {"error": {"kind": kind, "detail": detail}}


# -- rendering -----------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def render(doc, fmt: str = "json") -> str:
    if fmt == "text":
        lines: list[str] = []
        _text(doc, "", lines)
        return "\n".join(lines) + "\n"
    return json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n"


def _text(doc, prefix: str, lines: list):
    if isinstance(doc, dict):
        for k in sorted(doc):
            _text(doc[k], f"{prefix}.{k}" if prefix else str(k), lines)
    elif isinstance(doc, list) and doc and any(isinstance(v, (dict, list)) for v in doc):
        for i, v in enumerate(doc):
            _text(v, f"{prefix}[{i}]", lines)
    else:
        lines.append(f"{prefix}: {json.dumps(doc, default=_jsonable)}")


def _emit(doc, fmt: str, output: str | None):
    text = render(doc, fmt)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- jobs and batches ----------------------------------------------------------------------


def load_document(path: str):
    raw = Path(path).read_text(encoding="utf-8")
    try:
        if path.endswith(".toml"):
            return tomli.loads(raw)
        return json.loads(raw)
    except (json.JSONDecodeError, tomli.TOMLDecodeError) as exc:
        raise SchemaError(f"cannot parse {path}: {exc}") from None


def run_job(job) -> tuple[dict, int]:
    try:
        _validate(job, JOB_SCHEMA, "job")
    except SchemaError as exc:
        return _error("schema_error", str(exc)), EXIT_SCHEMA
    return execute(job["command"], job["inputs"])


def batch(jobs: list, workers: int = 4) -> tuple[dict, int]:
    """Run jobs concurrently; rows keep manifest order."""
    def one(indexed):
        i, job = indexed
        doc, code = run_job(job)
        if code in (0, 10, 20) and isinstance(job, dict) and job.get("output_path"):
            Path(job["output_path"]).write_text(render(doc, job.get("format", "json")),
                                                encoding="utf-8")
        row = {"index": i, "command": job.get("command") if isinstance(job, dict) else None,
               "exit_code": code}
        if "error" in doc:
            row["error"] = doc["error"]
        else:
            row["output"] = doc
            if "verdict" in doc:
                row["verdict"] = doc["verdict"]
        return row

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(one, enumerate(jobs)))
    code = max((r["exit_code"] for r in rows), default=0)
    return {"rows": rows, "exit_code": code}, code


# -- argument parsing ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message)


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ltforge", description="Exact Lubin-Tate and Weil-number computations.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--output", help="write the report to this file")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_flags(p):
        p.add_argument("--field", type=_json_arg, help="field JSON")
        p.add_argument("--p", type=int, help="prime; shorthand for the field Q_p")
        p.add_argument("--u-poly", type=_json_arg)
        p.add_argument("--e-poly", type=_json_arg)

    def law_flags(p):
        field_flags(p)
        p.add_argument("--phi", type=_json_arg, help="'default' or coefficient list")
        p.add_argument("--pi", type=_json_arg)
        p.add_argument("--deg", type=int)

    p = sub.add_parser("field-info", parents=[common])
    field_flags(p)
    p.add_argument("--d-G", dest="d_G", type=int)
    for name in ("fg-law", "fg-log"):
        law_flags(sub.add_parser(name, parents=[common]))
    p = sub.add_parser("fg-mul", parents=[common])
    law_flags(p)
    p.add_argument("--a", type=_json_arg, required=True)
    p = sub.add_parser("fg-theta", parents=[common])
    law_flags(p)
    p.add_argument("--phi2", type=_json_arg, required=True)
    p = sub.add_parser("fg-point", parents=[common])
    law_flags(p)
    p.add_argument("--op", choices=["add", "sub", "neg", "mul"], required=True)
    p.add_argument("--x", type=_json_arg, required=True)
    p.add_argument("--y", type=_json_arg)
    p.add_argument("--a", type=_json_arg)
    p.add_argument("--prec", type=int)
    p = sub.add_parser("fg-torsion", parents=[common])
    law_flags(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--a", type=_json_arg)
    p = sub.add_parser("weil-check", parents=[common])
    p.add_argument("--poly", type=_json_arg, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--weight", type=_json_arg, required=True)
    p.add_argument("--require-integer", action="store_true", default=None)
    p.add_argument("--choice", type=int)
    p = sub.add_parser("weil-enum", parents=[common])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p = sub.add_parser("verdict", parents=[common])
    p.add_argument("--pair", type=_json_arg)
    p.add_argument("--character", type=_json_arg)
    p.add_argument("--class", dest="class_", required=True)
    p.add_argument("--context")
    p = sub.add_parser("structure", parents=[common])
    p.add_argument("--pair", type=_json_arg, required=True)
    p.add_argument("--K", type=_json_arg)
    p.add_argument("--n", type=int)
    p = sub.add_parser("exceptional-set", parents=[common])
    field_flags(p)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p = sub.add_parser("run", parents=[common], help="run a JSON/TOML job file")
    p.add_argument("job")
    p = sub.add_parser("batch", parents=[common], help="run a manifest of jobs")
    p.add_argument("manifest")
    p.add_argument("--workers", type=int, default=4)
    return parser


_FIELD_FLAGS = ("field", "p", "u_poly", "e_poly")
_NON_INPUT = {"command", "format", "output", "job", "manifest", "workers"}


def _inputs_from_args(ns: argparse.Namespace) -> dict:
    raw = {k: v for k, v in vars(ns).items() if v is not None and k not in _NON_INPUT}
    if "class_" in raw:
        raw["class"] = raw.pop("class_")
    if any(k in raw for k in _FIELD_FLAGS):
        field = dict(raw.pop("field", None) or {})
        for key in ("p", "u_poly", "e_poly"):
            if key in raw:
                field[key] = raw.pop(key)
        raw["field"] = field
    return raw


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    fmt, output = "json", None
    try:
        ns = _build_parser().parse_args(argv)
        fmt, output = ns.format, ns.output
        if ns.command == "run":
            job = load_document(ns.job)
            doc, code = run_job(job)
            if isinstance(job, dict):
                fmt = job.get("format", fmt)
                output = job.get("output_path", output)
        elif ns.command == "batch":
            manifest = load_document(ns.manifest)
            _validate(manifest, MANIFEST_SCHEMA, "manifest")
            jobs = manifest["jobs"] if isinstance(manifest, dict) else manifest
            doc, code = batch(jobs, ns.workers)
        else:
            doc, code = execute(ns.command, _inputs_from_args(ns))
    except SchemaError as exc:
        doc, code = _error("schema_error", str(exc)), EXIT_SCHEMA
    except OSError as exc:
        doc, code = _error("io_error", str(exc)), EXIT_SCHEMA
    _emit(doc, fmt, output)
    return code
