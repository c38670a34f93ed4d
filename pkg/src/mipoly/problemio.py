"""Problem file format: JSON with exact rationals as "p/q" strings.

Schema:
    {"d1": int, "d2": int,
     "A": [[int]],              # m rows, d1 columns (continuous block)
     "B": [[int]],              # m rows, d2 columns (integer block)
     "b": [int],                # m right-hand sides
     "objective": [{"c": "p/q", "e": [int, ...]}, ...],
     "epsilon": "p/q"}

Parsing validates the schema, dimension consistency and boundedness; the
parse -> serialize -> parse round trip is the identity, bit for bit.
"""

import json
from fractions import Fraction

from .errors import SchemaError
from .mixedopt import MixedProblem
from .multipoly import MultiPoly
from .polytopes import Polyhedron


def parse_rational(text):
    if not isinstance(text, str):
        raise SchemaError(f"rational values must be strings, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {text!r}: {exc}") from None


def rational_str(value):
    return str(Fraction(value))


def _expect_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def _expect_int_matrix(value, rows, cols, what):
    if not isinstance(value, list) or len(value) != rows:
        raise SchemaError(f"{what} must be a list of {rows} rows")
    out = []
    for row in value:
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"every row of {what} must have {cols} entries")
        out.append(tuple(_expect_int(x, f"entry of {what}") for x in row))
    return tuple(out)


def problem_from_dict(data):
    if not isinstance(data, dict):
        raise SchemaError("problem file must hold a JSON object")
    required = {"d1", "d2", "A", "B", "b", "objective", "epsilon"}
    missing = required - set(data)
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")
    d1 = _expect_int(data["d1"], "d1")
    d2 = _expect_int(data["d2"], "d2")
    if d1 < 0 or d2 < 0 or d1 + d2 == 0:
        raise SchemaError("need d1 >= 0, d2 >= 0 and at least one variable")
    if not isinstance(data["b"], list):
        raise SchemaError("b must be a list")
    m = len(data["b"])
    a_block = _expect_int_matrix(data["A"], m, d1, "A")
    b_block = _expect_int_matrix(data["B"], m, d2, "B")
    rhs = tuple(_expect_int(x, "entry of b") for x in data["b"])
    rows = tuple(a_block[i] + b_block[i] for i in range(m))
    if not isinstance(data["objective"], list):
        raise SchemaError("objective must be a list of terms")
    terms = []
    for item in data["objective"]:
        if not isinstance(item, dict) or set(item) != {"c", "e"}:
            raise SchemaError("objective terms must be {'c': 'p/q', 'e': [ints]}")
        exps = item["e"]
        if not isinstance(exps, list) or len(exps) != d1 + d2:
            raise SchemaError(f"exponent vectors must have length {d1 + d2}")
        exps = tuple(_expect_int(e, "exponent") for e in exps)
        if any(e < 0 for e in exps):
            raise SchemaError("exponents must be non-negative")
        terms.append((exps, parse_rational(item["c"])))
    epsilon = parse_rational(data["epsilon"])
    if not 0 < epsilon < 1:
        raise SchemaError("epsilon must lie strictly between 0 and 1")
    poly = Polyhedron(d1, d2, rows, rhs)  # raises UnboundedError when unbounded
    objective = MultiPoly(d1 + d2, terms)
    return MixedProblem(poly, objective, epsilon)


def parse_problem(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from None
    return problem_from_dict(data)


def problem_to_dict(prob):
    poly = prob.polyhedron
    return {
        "d1": poly.d1,
        "d2": poly.d2,
        "A": [list(row[: poly.d1]) for row in poly.rows],
        "B": [list(row[poly.d1 :]) for row in poly.rows],
        "b": list(poly.rhs),
        "objective": prob.objective.to_term_list(),
        "epsilon": rational_str(prob.epsilon),
    }


def dump_json(obj):
    """Canonical JSON rendering: sorted keys, newline-terminated, so repeated
    runs are byte-identical."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
