"""JSON algebra-spec files.

Layout::

    {"name": ..., "dim": 4, "basis": ["X", "Y", "Z1", "Z2"],
     "brackets": [{"i": 0, "j": 1,
                   "terms": [{"k": 2, "re_num": 1, "re_den": 1, "im_num": 0, "im_den": 1}]}],
     "J": [{"num": 0, "den": 1}, ...],            # dim*dim entries, row-major
     "complex_presentation": {"labels": [...], "brackets": [...]}}   # optional

Indices are 0-based.  ``dumps(loads(text))`` is byte-identical to ``text``
for any text produced by ``dumps``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

from .algebra import ComplexPresentation, RealLieAlgebraSpec
from .errors import SchemaError
from .scalars import GaussianRational


def _terms_to_json(terms) -> List[dict]:
    out = []
    for k, c in terms:
        out.append({"k": int(k), **GaussianRational.coerce(c).to_json()})
    return out


def _brackets_to_json(brackets) -> List[dict]:
    return [{"i": int(i), "j": int(j), "terms": _terms_to_json(terms)} for i, j, terms in brackets]


def spec_to_json(spec: RealLieAlgebraSpec) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "name": spec.name,
        "dim": spec.dim,
        "basis": list(spec.basis),
        "brackets": _brackets_to_json(spec.brackets),
        "J": [{"num": x.numerator, "den": x.denominator} for row in spec.J for x in row],
    }
    if spec.complex_presentation is not None:
        cp = spec.complex_presentation
        doc["complex_presentation"] = {
            "labels": list(cp.labels),
            "brackets": _brackets_to_json(cp.brackets),
        }
    return doc


def dumps(spec: RealLieAlgebraSpec) -> str:
    return json.dumps(spec_to_json(spec), indent=2) + "\n"


def _require(doc: dict, key: str, kind):
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool) and kind is int:
        raise SchemaError(f"field {key!r} has wrong type")
    return val


def _coef_from_json(t: dict) -> GaussianRational:
    try:
        return GaussianRational.from_json(t)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad coefficient {t!r}") from exc


def _brackets_from_json(items, size: int, real: bool):
    if not isinstance(items, list):
        raise SchemaError("brackets must be an array")
    out = []
    for b in items:
        if not isinstance(b, dict):
            raise SchemaError("bracket entries must be objects")
        i, j = _require(b, "i", int), _require(b, "j", int)
        terms = []
        for t in _require(b, "terms", list):
            if not isinstance(t, dict):
                raise SchemaError("term entries must be objects")
            k = _require(t, "k", int)
            c = _coef_from_json(t)
            if real and not c.is_real():
                raise SchemaError("real brackets must have real coefficients")
            terms.append((k, c))
            if not 0 <= k < size:
                raise SchemaError(f"index {k} out of range")
        if not (0 <= i < size and 0 <= j < size):
            raise SchemaError(f"bracket index out of range: ({i}, {j})")
        out.append((i, j, tuple(terms)))
    return tuple(out)


def spec_from_json(doc: Any) -> RealLieAlgebraSpec:
    if not isinstance(doc, dict):
        raise SchemaError("spec document must be a JSON object")
    name = _require(doc, "name", str)
    dim = _require(doc, "dim", int)
    if dim <= 0 or dim % 2:
        raise SchemaError("dim must be a positive even integer")
    basis = _require(doc, "basis", list)
    if len(basis) != dim or not all(isinstance(s, str) for s in basis):
        raise SchemaError("basis must list dim strings")
    brackets = _brackets_from_json(doc.get("brackets", []), dim, real=True)
    raw_j = _require(doc, "J", list)
    if raw_j and isinstance(raw_j[0], list):
        raw_j = [x for row in raw_j for x in row]
    if len(raw_j) != dim * dim:
        raise SchemaError("J must have dim*dim entries")
    try:
        flat = [Fraction(int(x["num"]), int(x.get("den", 1))) for x in raw_j]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError("J entries must be {num, den}") from exc
    J = tuple(tuple(flat[r * dim:(r + 1) * dim]) for r in range(dim))
    cp = None
    if doc.get("complex_presentation") is not None:
        block = doc["complex_presentation"]
        if not isinstance(block, dict):
            raise SchemaError("complex_presentation must be an object")
        labels = _require(block, "labels", list)
        if 2 * len(labels) != dim:
            raise SchemaError("complex_presentation needs dim/2 labels")
        cp = ComplexPresentation(tuple(labels), _brackets_from_json(block.get("brackets", []), dim, real=False))
    return RealLieAlgebraSpec(name, dim, tuple(basis), brackets, J, cp)


def loads(text: str) -> RealLieAlgebraSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return spec_from_json(doc)
