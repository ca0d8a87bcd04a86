"""JSON Schemas for every CLI command's JSON output (schema version "1")."""

from __future__ import annotations

_INT = {"type": "integer"}
_STR = {"type": "string"}
_PAIR = {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}
_VERDICT = {"enum": ["Monogenic", "NonMonogenic", "Unknown"]}


def _obj(props: dict, required: list[str]) -> dict:
    return {
        "type": "object",
        "properties": {"schema": {"const": "1"}, "command": _STR, **props},
        "required": ["schema", "command", *required],
        "additionalProperties": False,
    }


_VERDICT_PROPS = {
    "residue_mod_9": _INT,
    "verdict": _VERDICT,
    "witness": _PAIR,
    "obstruction": _STR,
    "bound": _INT,
}

CLASSIFY_P = _obj({"p": _INT, **_VERDICT_PROPS}, ["p", "residue_mod_9", "verdict", "bound"])

CLASSIFY_M = _obj(
    {
        "m": _INT,
        **_VERDICT_PROPS,
        "field": {
            "type": "object",
            "properties": {
                "h": _INT,
                "k": _INT,
                "case": {"enum": ["WildRamified", "TameCase"]},
                "sign": {"enum": [-1, 0, 1]},
                "disc": _INT,
                "basis_denominator": _INT,
                "basis": {"type": "array", "items": _STR, "minItems": 3, "maxItems": 3},
            },
            "required": ["h", "k", "case", "sign", "disc", "basis_denominator", "basis"],
            "additionalProperties": False,
        },
    },
    ["m", "residue_mod_9", "verdict", "bound", "field"],
)

_CHECKS = {
    "type": "object",
    "properties": {
        "middle_divisible": {"type": "boolean"},
        "constant_divisible": {"type": "boolean"},
        "constant_not_divisible_sq": {"type": "boolean"},
    },
    "required": ["middle_divisible", "constant_divisible", "constant_not_divisible_sq"],
    "additionalProperties": False,
}

CERTIFICATE = _obj(
    {
        "p": _INT,
        "q": _INT,
        "residue": _INT,
        "status": {"enum": ["certified", "inconclusive"]},
        "certificate": {
            "type": "object",
            "properties": {"n": _INT, "p": _INT, "shift": _INT, "ell": _INT, "checks": _CHECKS},
            "required": ["n", "p", "shift", "ell", "checks"],
            "additionalProperties": False,
        },
    },
    ["p", "q", "residue", "status"],
)

SCAN = _obj(
    {
        "base": _INT,
        "qmax": _INT,
        "hits": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"base": _INT, "q": _INT, "residue": {"const": 1}},
                "required": ["base", "q", "residue"],
                "additionalProperties": False,
            },
        },
    },
    ["base", "qmax", "hits"],
)

_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_DECIMAL = {"type": "string", "pattern": r"^\d+\.\d{6}$"}

DENSITY = _obj(
    {
        "spec_id": _STR,
        "params": {"type": "array", "items": _INT},
        "x": _INT,
        "primes": _INT,
        "hits": _INT,
        "empirical": _RATIONAL,
        "empirical_decimal": _DECIMAL,
        "theoretical": _RATIONAL,
        "theoretical_decimal": _DECIMAL,
        "is_lower_bound": {"type": "boolean"},
        "deviation": _RATIONAL,
        "deviation_decimal": _DECIMAL,
        "excluded": {"type": "array", "items": _INT},
    },
    ["spec_id", "params", "x", "primes", "hits", "empirical", "theoretical", "is_lower_bound", "deviation", "excluded"],
)

FORMS = _obj(
    {
        "disc": _INT,
        "class_number": _INT,
        "forms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"a": _INT, "b": _INT, "c": _INT},
                "required": ["a", "b", "c"],
                "additionalProperties": False,
            },
        },
    },
    ["disc", "class_number", "forms"],
)

THUE = _obj(
    {
        "p": _INT,
        "bound": _INT,
        "status": {"enum": ["Solved", "LocallyObstructed", "UnknownAtBound"]},
        "x": _INT,
        "y": _INT,
        "obstruction": _STR,
    },
    ["p", "bound", "status"],
)

_COUNTS = {"type": "object", "additionalProperties": _INT}
_SHARES = {"type": "object", "additionalProperties": _DECIMAL}

CENSUS = _obj(
    {
        "x": _INT,
        "thue_bound": _INT,
        "primes": _INT,
        "counts": _COUNTS,
        "shares": _SHARES,
        "by_residue_mod_9": {"type": "object", "additionalProperties": _COUNTS},
    },
    ["x", "thue_bound", "primes", "counts", "shares", "by_residue_mod_9"],
)

TRICHOTOMY = _obj(
    {"x": _INT, "primes": _INT, "counts": _COUNTS, "shares": _SHARES, "mismatches": {"const": 0}},
    ["x", "primes", "counts", "shares", "mismatches"],
)

BY_COMMAND = {
    "classify-p": CLASSIFY_P,
    "classify-m": CLASSIFY_M,
    "certificate": CERTIFICATE,
    "scan": SCAN,
    "density": DENSITY,
    "forms": FORMS,
    "thue": THUE,
    "census": CENSUS,
    "trichotomy": TRICHOTOMY,
}
