"""JSON schema of problem files."""

from .models import ClassTag, ProblemKind, Sign, get_default_checks

_COMPLEX = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}

_COEFFICIENT = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "tag": {"const": "poly-in-t"},
                "coefficients": {"type": "array", "minItems": 1, "items": _COMPLEX},
                "components": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "array", "minItems": 1, "items": _COMPLEX},
                },
            },
            "required": ["tag"],
            "oneOf": [{"required": ["coefficients"]}, {"required": ["components"]}],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "table": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "array", "minItems": 1, "items": _COMPLEX},
                },
            },
            "required": ["table"],
            "additionalProperties": False,
        },
    ]
}

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

PROBLEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "opcontour problem file",
    "type": "object",
    "properties": {
        "operator": {
            "type": "object",
            "properties": {
                "kind": {"enum": ["dense", "diagonal"]},
                "dim": {"type": "integer", "minimum": 1},
                "entries": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "array", "minItems": 1, "items": _COMPLEX},
                },
                "spectrum": {"type": "array", "minItems": 1, "items": _COMPLEX},
            },
            "required": ["kind", "dim"],
            "additionalProperties": False,
            "allOf": [
                {
                    "if": {"properties": {"kind": {"const": "dense"}}},
                    "then": {"required": ["entries"]},
                },
                {
                    "if": {"properties": {"kind": {"const": "diagonal"}}},
                    "then": {"required": ["spectrum"]},
                },
            ],
        },
        "problem": {
            "type": "object",
            "properties": {
                "kind": {"enum": [kind.value for kind in ProblemKind]},
                "sign": {"enum": [sign.value for sign in Sign]},
                "T": _POSITIVE,
                "N": {"type": "integer", "minimum": 8},
                "p": {"type": "number", "exclusiveMinimum": 1},
            },
            "required": ["kind"],
            "additionalProperties": False,
        },
        "contour": {
            "oneOf": [
                {"const": "auto"},
                {
                    "type": "object",
                    "properties": {
                        "c": {"type": "number", "not": {"const": 0}},
                        "R": _POSITIVE,
                        "M": {"type": "integer", "minimum": 4, "multipleOf": 2},
                    },
                    "required": ["c", "R", "M"],
                    "additionalProperties": False,
                },
            ]
        },
        "nonlinearity": {
            "type": "object",
            "properties": {
                "forcing": _COEFFICIENT,
                "terms": {
                    "type": "object",
                    "patternProperties": {"^[1-9][0-9]*$": _COEFFICIENT},
                    "additionalProperties": False,
                },
            },
            "additionalProperties": False,
        },
        "classify": {
            "type": "object",
            "properties": {
                "checks": {
                    "type": "array",
                    "items": {"enum": [tag.value for tag in ClassTag]},
                },
                "phi": {"type": "number", "minimum": 0, "exclusiveMaximum": 3.141592653589793},
                "c": _POSITIVE,
                "K_max": _POSITIVE,
                "delta": _POSITIVE,
                "parabola_operator": {"enum": ["self", "square"]},
                "r_bound": {
                    "type": "object",
                    "properties": {
                        "n": {"type": "integer", "minimum": 1},
                        "trials": {"type": "integer", "minimum": 1},
                        "probes": {"type": "integer", "minimum": 1},
                    },
                    "additionalProperties": False,
                },
            },
            "additionalProperties": False,
        },
        "fixed_point": {
            "type": "object",
            "properties": {
                "tolerance": {"type": "number", "minimum": 1e-10},
                "max_iterations": {"type": "integer", "minimum": 2},
                "ball_radius": _POSITIVE,
                "window": {"type": "integer", "minimum": 1},
                "horizons": {"type": "array", "items": _POSITIVE},
                "search": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
        "verify": {
            "type": "object",
            "properties": {
                "checks": {
                    "type": "array",
                    "items": {"enum": get_default_checks()},
                },
            },
            "additionalProperties": False,
        },
        "output": {
            "type": "object",
            "properties": {
                "csv": {"type": "string", "minLength": 1},
                "report": {"type": "string", "minLength": 1},
            },
            "additionalProperties": False,
        },
        "seed": {"type": "integer", "minimum": 0, "maximum": 18446744073709551615},
    },
    "required": ["operator", "problem"],
    "additionalProperties": False,
}
