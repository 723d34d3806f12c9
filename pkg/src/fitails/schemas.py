"""JSON schemas for ``fitails --json`` output, one per subcommand."""

ABELIAN_GROUP = {
    "type": "object",
    "required": ["free_rank", "torsion"],
    "properties": {
        "free_rank": {"type": "integer", "minimum": 0},
        "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
    },
    "additionalProperties": False,
}

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

LABELED_MATRIX = {
    "type": "object",
    "required": ["rows", "cols", "row_labels", "col_labels", "data"],
    "properties": {
        "rows": {"type": "integer", "minimum": 0},
        "cols": {"type": "integer", "minimum": 0},
        "row_labels": {"type": "array", "items": {"type": "string"}},
        "col_labels": {"type": "array", "items": {"type": "string"}},
        "data": _INT_MATRIX,
    },
}

TAILS = {
    "type": "object",
    "required": ["d", "stable_from", "invariants", "poly_degree"],
    "properties": {
        "d": {"type": "integer", "minimum": 0},
        "stable_from": {"type": "integer", "minimum": 0},
        "invariants": {"type": "array", "items": ABELIAN_GROUP},
        "poly_degree": {"type": "integer", "minimum": -1},
    },
}

EVALUATE = {
    "type": "object",
    "required": ["n", "stable_from", "group"],
    "properties": {
        "n": {"type": "integer"},
        "stable_from": {"type": "integer"},
        "group": ABELIAN_GROUP,
    },
}

XI_MATRIX = {
    "type": "object",
    "required": ["ell", "matrix", "cokernel"],
    "properties": {
        "ell": {"type": "integer", "minimum": 0},
        "matrix": LABELED_MATRIX,
        "cokernel": ABELIAN_GROUP,
    },
}

ORACLE = {
    "type": "object",
    "required": ["n", "stable_from", "in_range", "predicted", "actual", "equal"],
    "properties": {
        "n": {"type": "integer"},
        "stable_from": {"type": "integer"},
        "in_range": {"type": "boolean"},
        "predicted": {"oneOf": [ABELIAN_GROUP, {"type": "null"}]},
        "actual": ABELIAN_GROUP,
        "equal": {"type": ["boolean", "null"]},
    },
}

_FJ_ELEMENT = {
    "type": "object",
    "required": ["source", "target", "level", "f", "blocks", "coords"],
    "properties": {
        "source": {"type": "integer"},
        "target": {"type": "integer"},
        "level": {"type": "integer"},
        "f": {"type": "array", "items": {"type": "integer"}},
        "blocks": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "coords": {"type": "string"},
    },
}

FJ_BASIS = {
    "type": "object",
    "required": ["source", "target", "max_level", "counts", "elements"],
    "properties": {
        "source": {"type": "integer"},
        "target": {"type": "integer"},
        "max_level": {"type": "integer"},
        "counts": {"type": "object", "additionalProperties": {"type": "integer"}},
        "elements": {"type": "array", "items": _FJ_ELEMENT},
    },
}

_Q_ENTRY = {
    "type": "object",
    "required": ["source", "target", "rank", "generators"],
    "properties": {
        "source": {"type": "integer"},
        "target": {"type": "integer"},
        "rank": {"type": "integer", "minimum": 0},
        "generators": {"type": "array", "items": {"type": "string"}},
    },
}

QRING = {
    "type": "object",
    "required": ["degree", "basis", "entries", "ranks", "total_rank", "products"],
    "properties": {
        "degree": {"type": "integer", "minimum": 0},
        "basis": {"type": "array", "items": {"type": "string"}},
        "entries": {"type": "array", "items": {"type": "array", "items": _Q_ENTRY}},
        "ranks": _INT_MATRIX,
        "total_rank": {"type": "integer"},
        "products": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["left", "middle", "right", "table"],
                "properties": {
                    "left": {"type": "integer"},
                    "middle": {"type": "integer"},
                    "right": {"type": "integer"},
                    "table": {"type": "array"},
                },
            },
        },
    },
}

PAIRING = {
    "type": "object",
    "required": ["k", "n", "rows", "cols", "square", "abs_det", "unimodular"],
    "properties": {
        "k": {"type": "integer"},
        "n": {"type": "integer"},
        "rows": {"type": "integer"},
        "cols": {"type": "integer"},
        "square": {"type": "boolean"},
        "abs_det": {"type": ["integer", "null"]},
        "unimodular": {"type": "boolean"},
    },
}

ERROR = {
    "type": "object",
    "required": ["error"],
    "properties": {"error": {"type": "string"}},
}

SCHEMAS = {
    "tails": TAILS,
    "evaluate": EVALUATE,
    "xi-matrix": XI_MATRIX,
    "oracle": ORACLE,
    "fj-basis": FJ_BASIS,
    "qring": QRING,
    "pairing": PAIRING,
}
