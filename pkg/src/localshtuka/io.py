"""JSON descriptors, their schemas, and canonical output."""
from __future__ import annotations

import json

import jsonschema

COEFF = {"oneOf": [{"type": "integer", "minimum": 0},
                   {"type": "array", "items": {"oneOf": [
                       {"type": "integer", "minimum": 0},
                       {"type": "array", "items": {"type": "integer", "minimum": 0}}]}}]}

SERIES = {
    "type": "object",
    "required": ["val", "coeffs"],
    "properties": {"val": {"type": "integer"}, "prec": {"type": "integer"},
                   "coeffs": {"type": "array", "items": COEFF}},
    "additionalProperties": False,
}

MATRIX = {"type": "array", "minItems": 1,
          "items": {"type": "array", "minItems": 1, "items": SERIES}}

RING_FIELDS = {
    "q": {"type": "integer", "minimum": 2},
    "ext": {"type": "integer", "minimum": 1},
    "modulus": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    "ring": {"enum": ["finite-field", "nilpotent-extension", "dual-numbers"]},
    "nilpotency": {"type": "integer", "minimum": 1},
    "generator": {"type": "string"},
}

SHTUKA = {
    "type": "object",
    "required": ["q", "prec", "b"],
    "properties": dict(RING_FIELDS, rank={"type": "integer", "minimum": 1},
                       prec={"type": "integer"}, b=MATRIX),
}

HODGE = {
    "type": "object",
    "required": ["q", "prec"],
    "properties": dict(RING_FIELDS, rank={"type": "integer", "minimum": 1},
                       prec={"type": "integer"}, b=MATRIX, g=MATRIX,
                       mu={"type": "array", "items": {"type": "integer"}},
                       relation={"enum": ["eq", "leq"]}, zeta=COEFF),
    "oneOf": [{"required": ["b"]}, {"required": ["g"]}],
}

DECENCY = {"allOf": [SHTUKA, {"type": "object", "required": ["s"],
                              "properties": {"s": {"type": "integer", "minimum": 1}}}]}

QISOG = {
    "type": "object",
    "required": ["source", "target", "f"],
    "properties": {"source": SHTUKA, "target": SHTUKA, "f": MATRIX},
}

RIGIDITY = {
    "type": "object",
    "properties": {"source": SHTUKA, "target": SHTUKA, "fbar": MATRIX,
                   "q": {"type": "integer", "minimum": 2}, "ext": {"type": "integer", "minimum": 1},
                   "rank": {"type": "integer", "minimum": 1}, "prec": {"type": "integer"},
                   "samples": {"type": "integer", "minimum": 1}, "seed": {"type": "integer"}},
    "dependentRequired": {"fbar": ["source", "target"]},
}

ADLV = {
    "type": "object",
    "required": ["mu"],
    "properties": dict(RING_FIELDS, rank={"type": "integer", "minimum": 1},
                       prec={"type": "integer"}, b=MATRIX, shtuka=SHTUKA,
                       base_ext={"type": "integer", "minimum": 1},
                       mu={"type": "array", "minItems": 1, "items": {"type": "integer"}},
                       relation={"enum": ["eq", "leq"]},
                       window={"type": "integer", "minimum": 0}),
    "oneOf": [{"required": ["shtuka"]}, {"required": ["q", "prec", "b"]}],
}

METRIC = {
    "type": "object",
    "required": ["q", "prec", "x", "y"],
    "properties": dict(RING_FIELDS, prec={"type": "integer"}, x=MATRIX, y=MATRIX,
                       d0={"type": "integer", "minimum": 0},
                       window={"type": "integer", "minimum": 0}),
}

SCHEMAS = {
    "hodge": HODGE, "newton": SHTUKA, "decency": DECENCY, "tate": SHTUKA, "lang": SHTUKA,
    "qisog-check": QISOG, "rigidity-demo": RIGIDITY, "adlv": ADLV, "metric": METRIC,
}


class SchemaError(ValueError):
    code = "schema"


def validate(command: str, obj) -> None:
    schema = SCHEMAS.get(command)
    if schema is None:
        return
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(f"{command} descriptor invalid at '{path}': {e.message}") from None


def load_input(arg: str | None):
    """A path, or inline JSON starting with '{'."""
    if arg is None:
        return None
    text = arg if arg.lstrip().startswith("{") else open(arg, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
