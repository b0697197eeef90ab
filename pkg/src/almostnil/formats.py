"""JSON instance and report documents.

All scalars are integers; field elements are canonical residues ``0..p-1``
and every index is 0-based. Gradings are given as one grade (group element
index) per basis vector.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any, Optional

import jsonschema
import numpy as np

from . import __version__
from .algebra import Algebra
from .gradings import Grading, GroupAction
from .groups import FiniteGroup, PrimeSeries, validate_group, validate_series
from .linalg import FieldSpec, Subspace, span


class SchemaError(ValueError):
    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


_INT = {"type": "integer"}
_NAT = {"type": "integer", "minimum": 0}
_VEC = {"type": "array", "items": _INT}
_MAT = {"type": "array", "items": _VEC}

INSTANCE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["field", "algebra"],
    "properties": {
        "meta": {"type": "object"},
        "field": {
            "type": "object",
            "additionalProperties": False,
            "required": ["p"],
            "properties": {"p": {"type": "integer", "minimum": 2}},
        },
        "algebra": {
            "type": "object",
            "additionalProperties": False,
            "required": ["dim", "products"],
            "properties": {
                "dim": _NAT,
                "basis_names": {"type": "array", "items": {"type": "string"}},
                "products": {
                    "type": "array",
                    "items": {"type": "array", "items": _INT, "minItems": 4, "maxItems": 4},
                },
            },
        },
        "group": {
            "type": "object",
            "additionalProperties": False,
            "required": ["order", "table"],
            "properties": {
                "order": {"type": "integer", "minimum": 1},
                "table": {"type": "array", "items": {"type": "array", "items": _NAT}},
                "names": {"type": "array", "items": {"type": "string"}},
            },
        },
        "grading": {"type": "array", "items": _NAT},
        "action": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "matrices": {"type": "array", "items": _MAT},
                "generators": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["element", "matrix"],
                        "properties": {"element": _NAT, "matrix": _MAT},
                    },
                },
            },
            "oneOf": [{"required": ["matrices"]}, {"required": ["generators"]}],
        },
        "ideal": {
            "type": "object",
            "additionalProperties": False,
            "required": ["vectors"],
            "properties": {"vectors": {"type": "array", "items": _VEC}},
        },
        "series": {"type": "array", "items": {"type": "array", "items": _NAT}},
    },
}


@dataclass(eq=False)
class Instance:
    algebra: Algebra
    group: Optional[FiniteGroup] = None
    grading: Optional[Grading] = None
    action: Optional[GroupAction] = None
    ideal: Optional[Subspace] = None
    series: Optional[PrimeSeries] = None
    meta: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.algebra.p

    def to_document(self) -> dict[str, Any]:
        alg = self.algebra
        doc: dict[str, Any] = {}
        if self.meta:
            doc["meta"] = self.meta
        doc["field"] = {"p": alg.p}
        doc["algebra"] = {
            "dim": alg.dim,
            "basis_names": list(alg.basis_names),
            "products": [list(q) for q in alg.products()],
        }
        if self.group is not None:
            doc["group"] = {
                "order": self.group.order,
                "table": self.group.table.tolist(),
                "names": list(self.group.names),
            }
        if self.grading is not None:
            labels = self.grading.labels()
            if labels is None:
                raise SchemaError("only basis-aligned gradings can be written", "$.grading")
            doc["grading"] = labels
        if self.action is not None:
            doc["action"] = {"matrices": self.action.matrices.tolist()}
        if self.ideal is not None:
            doc["ideal"] = {"vectors": self.ideal.basis.tolist()}
        if self.series is not None:
            doc["series"] = self.series.as_lists()
        return doc

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return self.to_document() == other.to_document()


def _path(err: jsonschema.ValidationError) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)


def from_document(doc: Any) -> Instance:
    """Build objects from a decoded document. Group axioms and series are
    validated here; associativity, grading and action are left to the
    validators so a bad document still loads."""
    try:
        jsonschema.validate(doc, INSTANCE_SCHEMA)
    except jsonschema.ValidationError as err:
        raise SchemaError(err.message, _path(err)) from None
    p = doc["field"]["p"]
    try:
        FieldSpec(p)
    except ValueError as err:
        raise SchemaError(str(err), "$.field.p") from None
    a = doc["algebra"]
    dim = a["dim"]
    for k, q in enumerate(a["products"]):
        if not all(0 <= t < dim for t in q[:3]):
            raise SchemaError("basis index out of range", f"$.algebra.products[{k}]")
    names = a.get("basis_names", [])
    if names and len(names) != dim:
        raise SchemaError("basis_names length differs from dim", "$.algebra.basis_names")
    alg = Algebra.from_products(p, dim, [tuple(q) for q in a["products"]], names)
    inst = Instance(alg, meta=doc.get("meta", {}))

    if "group" in doc:
        g = doc["group"]
        if len(g["table"]) != g["order"] or any(len(r) != g["order"] for r in g["table"]):
            raise SchemaError("table is not order x order", "$.group.table")
        inst.group = validate_group(g["table"], g.get("names", ()))
    for key in ("grading", "action", "series"):
        if key in doc and inst.group is None:
            raise SchemaError(f"'{key}' needs a group block", f"$.{key}")
    if "grading" in doc:
        labels = doc["grading"]
        if len(labels) != dim or any(x >= inst.group.order for x in labels):
            raise SchemaError("one grade in range per basis vector", "$.grading")
        inst.grading = Grading.from_labels(alg, inst.group, labels)
    if "action" in doc:
        act = doc["action"]
        try:
            if "matrices" in act:
                inst.action = GroupAction.build(alg, inst.group, act["matrices"])
            else:
                gens = {gen["element"]: np.array(gen["matrix"], dtype=np.int64) for gen in act["generators"]}
                if any(np.shape(m) != (dim, dim) for m in gens.values()):
                    raise SchemaError("generator matrices must be dim x dim", "$.action.generators")
                inst.action = GroupAction.from_generators(alg, inst.group, gens)
        except ValueError as err:
            if isinstance(err, SchemaError):
                raise
            raise SchemaError(str(err), "$.action") from None
    if "ideal" in doc:
        vecs = doc["ideal"]["vectors"]
        if any(len(v) != dim for v in vecs):
            raise SchemaError("ideal vectors must have length dim", "$.ideal.vectors")
        inst.ideal = span(vecs, dim, p) if vecs else alg.zero_space()
    if "series" in doc:
        inst.series = validate_series(inst.group, doc["series"])
    return inst


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"invalid JSON: {err.msg}") from None
    return from_document(doc)


def emit_instance(inst: Instance) -> str:
    return dumps(inst.to_document())


def dumps(doc: Any) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def report_document(command: str, body: dict, input_text: Optional[str] = None) -> dict:
    doc = {"tool": {"name": "almostnil", "version": __version__}, "command": command}
    if input_text is not None:
        doc["input_digest"] = digest(input_text)
    doc.update(body)
    return doc


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
