"""
Report documents: the structured output of every command, and their text rendering.

A document is a plain dict that serializes to JSON. Indexed vectors are
written as lists starting at their first index (f, β and σ at -1, h and
its variants at 0, μ at 0). Exact rationals are written as "p/q" strings.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import jsonschema

from audit import AuditReport, CheckResult, equality_witnesses, exit_code
from classify import ClassificationReport
from complex_core import SimplicialComplex, f_vector
from complex_file import label_token
from config import Caps
from constructions import ConstructionSpec
from errors import DomainError, NotEulerianError, ResourceCapError
from face_ring import graded_betti_hochster
from homology import FieldSpec, reduced_betti
from invariants import corrected_h_vectors, g_vector, gamma_vector, h_vector, mu_sigma, short_h

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

ReportDocument = Dict[str, Any]

_EXACT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+/\d+$"}]}
_VECTOR = {"type": "array", "items": _EXACT}

REPORT_SCHEMA: Dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "facenum report",
    "type": "object",
    "required": ["schema_version", "kind"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"enum": ["construct", "invariants", "audit", "facering"]},
        "source": {"type": ["string", "null"]},
        "provenance": {"type": ["string", "null"]},
        "labels": {"type": "array", "items": {"type": "string"}},
        "classification": {
            "type": "object",
            "required": ["field", "dim", "n", "pure", "connected", "pseudomanifold", "betti"],
            "properties": {
                "field": {"type": "string"},
                "dim": {"type": "integer"},
                "n": {"type": "integer"},
                "betti": _VECTOR,
                "missing_faces": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
                "skipped": {"type": "array", "items": {"type": "string"}},
            },
        },
        "vectors": {"type": "object", "additionalProperties": _VECTOR},
        "omitted": {"type": "object", "additionalProperties": {"type": "string"}},
        "capped": {"type": "array", "items": {"type": "string"}},
        "homology": {"type": "object", "additionalProperties": _VECTOR},
        "graded_betti": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [{"type": "integer"}] * 3, "minItems": 3, "maxItems": 3},
        },
        "audit": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check_id", "status", "verdict", "applicable"],
                "properties": {
                    "check_id": {"type": "string"},
                    "status": {"enum": ["theorem", "conjecture"]},
                    "verdict": {"enum": ["holds", "fails", "skipped"]},
                    "applicable": {"type": "boolean"},
                    "reason": {"type": "string"},
                    "slack": {"oneOf": [_EXACT, {"type": "null"}]},
                    "witnesses": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "exit_code": {"type": "integer"},
        "seed": {"type": ["integer", "null"]},
    },
}


def exact(value: Any) -> Any:
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return value


def jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, FieldSpec):
        return value.label
    return exact(value)


def validate(document: ReportDocument) -> None:
    """Raise jsonschema.ValidationError when the document does not match REPORT_SCHEMA."""
    jsonschema.validate(instance=document, schema=REPORT_SCHEMA)


def _base(kind: str, delta: Optional[SimplicialComplex], source: Optional[str],
          provenance: Optional[ConstructionSpec]) -> ReportDocument:
    document: ReportDocument = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "source": source,
        "provenance": provenance.to_token() if provenance is not None else None,
    }
    if delta is not None:
        document["labels"] = [label_token(label) for label in delta.labels]
    return document


# ------------------ Sections ------------------

def classification_section(report: ClassificationReport, delta: SimplicialComplex) -> Dict[str, Any]:
    section = {
        "field": report.field.label,
        "dim": report.dim,
        "n": report.n,
        "pure": report.pure,
        "connected": report.connected,
        "pseudomanifold": report.pseudomanifold,
        "normal_pseudomanifold": report.normal_pseudomanifold,
        "eulerian": report.eulerian,
        "semi_eulerian": report.semi_eulerian,
        "homology_manifold": report.homology_manifold,
        "homology_manifold_with_boundary": report.homology_manifold_with_boundary,
        "homology_sphere": report.homology_sphere,
        "homology_ball": report.homology_ball,
        "orientable": report.orientable,
        "balanced": report.balanced,
        "coloring": list(report.coloring.colors) if report.coloring else None,
        "flag": report.flag,
        "missing_faces": [[label_token(label) for label in delta.label_face(face)] for face in report.missing_faces],
        "neighborliness": report.neighborliness,
        "r_stacked": report.r_stacked,
        "betti": report.betti.to_list(),
        "skipped": list(report.skipped),
    }
    if report.boundary is not None:
        section["boundary_f"] = f_vector(report.boundary).to_list()
    return section


def vectors_section(delta: SimplicialComplex, field: FieldSpec, caps: Caps):
    """
    Every vector computable within the caps, the reasons for the ones left
    out, and which of those were left out at a resource cap.
    """
    vectors: Dict[str, List[Any]] = {}
    omitted: Dict[str, str] = {}
    capped: List[str] = []
    h = h_vector(delta)
    vectors["f"] = f_vector(delta).to_list()
    vectors["h"] = list(h)
    vectors["g"] = list(g_vector(h))
    corrected = corrected_h_vectors(delta, field)
    vectors["h1"] = list(corrected.h_prime)
    vectors["h2"] = list(corrected.h_double_prime)
    if corrected.tilde_g:
        vectors["gtilde"] = list(corrected.tilde_g)
    else:
        omitted["gtilde"] = "needs d >= 2"
    try:
        vectors["gamma"] = list(gamma_vector(h))
    except NotEulerianError as exc:
        omitted["gamma"] = str(exc)
    try:
        ms = mu_sigma(delta, field, caps.mu_vertex_cap)
        vectors["sigma"] = [exact(v) for v in ms.sigma]
        vectors["mu"] = [exact(v) for v in ms.mu]
    except ResourceCapError as exc:
        omitted["sigma"] = omitted["mu"] = str(exc)
        capped += ["sigma", "mu"]
    except DomainError as exc:
        omitted["sigma"] = omitted["mu"] = str(exc)
    try:
        vectors["short_h"] = list(short_h(delta))
    except DomainError as exc:
        omitted["short_h"] = str(exc)
    return vectors, omitted, capped


def homology_section(delta: SimplicialComplex, fields: Sequence[FieldSpec]) -> Dict[str, List[int]]:
    return {field.label: reduced_betti(delta, field).to_list() for field in fields}


def graded_betti_section(delta: SimplicialComplex, field: FieldSpec, caps: Caps):
    table = graded_betti_hochster(delta, field, caps.hochster_vertex_cap)
    return [[i, j, value] for (i, j), value in table.entries]


def check_entry(result: CheckResult) -> Dict[str, Any]:
    return {
        "check_id": result.check_id,
        "title": result.title,
        "status": result.status,
        "verdict": result.verdict,
        "applicable": result.applicable,
        "reason": result.reason,
        "slack": exact(result.slack),
        "witnesses": list(result.witnesses),
        "field": result.field,
        "note": result.note,
        "resource_skip": result.resource_skip,
        "probable_bug": result.probable_bug,
    }


# ------------------ Documents ------------------

def invariants_document(delta: SimplicialComplex, fields: Sequence[FieldSpec], caps: Caps,
                        classification: ClassificationReport, source: Optional[str] = None,
                        provenance: Optional[ConstructionSpec] = None) -> ReportDocument:
    field = fields[0]
    document = _base("invariants", delta, source, provenance)
    document["classification"] = classification_section(classification, delta)
    vectors, omitted, capped = vectors_section(delta, field, caps)
    document["vectors"] = vectors
    document["homology"] = homology_section(delta, fields)
    try:
        document["graded_betti"] = graded_betti_section(delta, field, caps)
    except ResourceCapError as exc:
        omitted["graded_betti"] = str(exc)
        capped.append("graded_betti")
    document["omitted"] = omitted
    document["capped"] = capped
    return document


def audit_document(report: AuditReport, delta: SimplicialComplex, strict: bool = False,
                   source: Optional[str] = None) -> ReportDocument:
    document = _base("audit", delta, source, report.provenance)
    document["classification"] = classification_section(report.classification, delta)
    document["fields"] = [f.label for f in report.fields]
    document["seed"] = report.seed
    document["audit"] = [check_entry(result) for result in report.checks]
    document["equality"] = [
        {"check_id": w.check_id, "annotation": w.annotation, "note": w.note} for w in equality_witnesses(report)
    ]
    document["exit_code"] = exit_code(report, strict)
    return document


def facering_document(command: str, payload: Dict[str, Any], delta: SimplicialComplex,
                      field: FieldSpec, seed: Optional[int], source: Optional[str] = None) -> ReportDocument:
    document = _base("facering", delta, source, None)
    document["command"] = command
    document["field"] = field.label
    document["seed"] = seed
    document.update(jsonable(payload))
    return document


def construct_document(delta: SimplicialComplex, spec: ConstructionSpec, path: Optional[str]) -> ReportDocument:
    document = _base("construct", delta, path, spec)
    document["vectors"] = {"f": f_vector(delta).to_list()}
    document["facets"] = len(delta.facet_masks)
    return document


# ------------------ Text rendering ------------------

def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return "(" + ", ".join(_cell(v) for v in value) + ")"
    if isinstance(value, dict):
        return " ".join(f"{k}={_cell(v)}" for k, v in value.items())
    return str(exact(value))


def _table(rows: List[List[str]]) -> List[str]:
    if not rows:
        return []
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]


def render_text(document: ReportDocument) -> str:
    """Aligned plain-text rendering of a report document."""
    lines = [f"{document['kind']} report (schema {document['schema_version']})"]
    for key in ("source", "provenance", "command", "field", "seed"):
        if document.get(key) is not None:
            lines.append(f"{key}: {document[key]}")
    if "classification" in document:
        lines.append("")
        lines.append("classification")
        lines += _table([[f"  {k}", _cell(v)] for k, v in document["classification"].items()])
    for section in ("vectors", "homology"):
        if section in document:
            lines.append("")
            lines.append(section)
            lines += _table([[f"  {k}", _cell(v)] for k, v in document[section].items()])
    if document.get("graded_betti"):
        lines.append("")
        lines.append("graded betti (i, j): value")
        lines += _table([[f"  ({i}, {j})", str(v)] for i, j, v in document["graded_betti"]])
    if document.get("omitted"):
        lines.append("")
        lines.append("omitted")
        lines += _table([[f"  {k}", v] for k, v in document["omitted"].items()])
    if "audit" in document:
        lines.append("")
        rows = [["check", "status", "verdict", "slack", "detail"]]
        for entry in document["audit"]:
            detail = entry["reason"] or "; ".join(filter(None, [entry["note"]] + entry["witnesses"]))
            rows.append([entry["check_id"], entry["status"], entry["verdict"], _cell(entry["slack"]), detail])
        lines += _table(rows)
        for witness in document.get("equality", []):
            lines.append(f"equality: {witness['check_id']} {witness['annotation']}".rstrip())
        lines.append(f"exit code: {document['exit_code']}")
    for key, value in document.items():
        if key not in REPORT_SCHEMA["properties"] and key not in ("fields", "equality", "command", "field"):
            lines.append(f"{key}: {_cell(value)}")
    return "\n".join(lines) + "\n"
