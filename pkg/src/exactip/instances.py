"""JSON instance and result documents.

Integers that do not fit a signed 64-bit word are serialized as decimal
strings so exactness survives any JSON reader; the parser accepts both
numbers and strings everywhere.  Rational objectives are written as
"numerator/denominator" strings.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .dp import Solution, StandardIP
from .errors import InstanceFormatError
from .inequality import InequalityIP
from .linalg import IntMatrix
from .mixed import MixedIP

_I64_MIN = -(2**63)
_I64_MAX = 2**63 - 1


def encode_int(v):
    return v if _I64_MIN <= v <= _I64_MAX else str(v)


def _parse_int(value, where):
    if isinstance(value, bool):
        raise InstanceFormatError(f"{where}: expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise InstanceFormatError(f"{where}: not a decimal integer: {value!r}") from None
    raise InstanceFormatError(f"{where}: expected an integer, got {type(value).__name__}")


def _parse_vector(value, where):
    if not isinstance(value, list):
        raise InstanceFormatError(f"{where}: expected a list")
    return tuple(_parse_int(v, f"{where}[{i}]") for i, v in enumerate(value))


def _parse_matrix(value, where):
    if not isinstance(value, list) or not value:
        raise InstanceFormatError(f"{where}: expected a non-empty list of rows")
    rows = [_parse_vector(row, f"{where}[{i}]") for i, row in enumerate(value)]
    if len({len(r) for r in rows}) != 1:
        raise InstanceFormatError(f"{where}: rows have differing lengths")
    return IntMatrix(rows)


def parse_instance(doc):
    """(instance, form, delta, box) from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise InstanceFormatError("$: expected an object")
    form = doc.get("form")
    if form not in ("standard", "inequality", "mixed"):
        raise InstanceFormatError("$.form: must be standard, inequality or mixed")
    a = _parse_matrix(doc.get("A"), "$.A")
    b = _parse_vector(doc.get("b"), "$.b")
    c = _parse_vector(doc.get("c"), "$.c")
    delta = _parse_int(doc["delta"], "$.delta") if "delta" in doc else None
    box = _parse_int(doc["box"], "$.box") if "box" in doc else None
    try:
        if form == "standard":
            instance = StandardIP(a, b, c)
        elif form == "inequality":
            instance = InequalityIP(a, b, c)
        else:
            if "B" in doc:
                bmat = _parse_matrix(doc["B"], "$.B")
                d = _parse_vector(doc.get("d"), "$.d")
            else:
                bmat, d = None, ()
            instance = MixedIP(a, bmat, b, c, d)
    except ValueError as exc:
        raise InstanceFormatError(f"$: {exc}") from exc
    return instance, form, delta, box


def load_instance(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    return parse_instance(doc)


def instance_document(instance, delta=None, box=None, meta=None):
    doc = {}
    if isinstance(instance, StandardIP):
        doc["form"] = "standard"
    elif isinstance(instance, InequalityIP):
        doc["form"] = "inequality"
    elif isinstance(instance, MixedIP):
        doc["form"] = "mixed"
    else:
        raise TypeError(f"not an instance: {type(instance).__name__}")
    doc["A"] = [[encode_int(v) for v in row] for row in instance.a.data]
    doc["b"] = [encode_int(v) for v in instance.b]
    doc["c"] = [encode_int(v) for v in instance.c]
    if isinstance(instance, MixedIP):
        if instance.b_cols is not None:
            doc["B"] = [[encode_int(v) for v in row] for row in instance.b_cols.data]
            doc["d"] = [encode_int(v) for v in instance.d]
    if delta is not None:
        doc["delta"] = delta
    if box is not None:
        doc["box"] = box
    if meta:
        doc["meta"] = meta
    return doc


def _encode_objective(value):
    if value is None:
        return None
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return encode_int(int(value))
        return f"{value.numerator}/{value.denominator}"
    return encode_int(int(value))


def result_document(solution, method, elapsed, extra=None):
    doc = {
        "status": solution.status.value,
        "method": method,
        "timing_seconds": round(elapsed, 6),
    }
    if solution.x is not None:
        doc["x"] = [encode_int(v) for v in solution.x]
    if solution.y is not None:
        doc["y"] = [_encode_objective(Fraction(v)) for v in solution.y]
    if solution.objective is not None:
        doc["objective"] = _encode_objective(solution.objective)
    if solution.certificate is not None:
        doc["certificate"] = [encode_int(v) for v in solution.certificate]
    if solution.boxed:
        doc["boxed"] = True
    if extra:
        doc.update(extra)
    return doc


def dump(doc, path=None):
    text = json.dumps(doc, indent=2)
    if path is None:
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")
