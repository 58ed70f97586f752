from fractions import Fraction

import jsonschema
import pytest

from audit import run_audit
from classify import classify
from config import Caps
from constructions import ConstructionSpec
from report import (audit_document, construct_document, exact, facering_document, invariants_document, jsonable,
                    render_text, validate)


def test_exact():
    assert exact(Fraction(6, 2)) == 3
    assert exact(Fraction(-1, 5)) == "-1/5"
    assert exact(7) == 7


def test_jsonable_converts_nested_values(qq):
    assert jsonable({"a": (Fraction(1, 2), qq), 3: [Fraction(4)]}) == {"a": ["1/2", "Q"], "3": [4]}


def test_invariants_document_for_octahedron(octahedron, qq):
    caps = Caps.from_config()
    document = invariants_document(octahedron, [qq], caps, classify(octahedron, qq))
    validate(document)
    vectors = document["vectors"]
    assert vectors["f"] == [1, 6, 12, 8]
    assert vectors["h"] == [1, 3, 3, 1]
    assert vectors["gamma"] == [1, 0]
    assert vectors["sigma"] == [1, "1/5", "1/5", 1]
    assert vectors["mu"] == ["6/5", "2/5", "6/5"]
    assert document["graded_betti"] == [[1, 2, 3], [2, 4, 3], [3, 6, 1]]
    assert document["homology"] == {"Q": [0, 0, 0, 1]}
    assert document["omitted"] == {}
    assert document["capped"] == []
    assert document["classification"]["missing_faces"] == [["0", "1"], ["2", "3"], ["4", "5"]]


def test_invariants_document_reports_omissions(torus, qq, gf2):
    caps = Caps.from_config(mu_vertex_cap=4)
    document = invariants_document(torus, [qq, gf2], caps, classify(torus, qq))
    validate(document)
    assert "gamma" in document["omitted"]
    assert "mu" in document["omitted"]
    assert document["capped"] == ["sigma", "mu"]
    assert document["homology"]["GF(2)"] == [0, 0, 2, 1]
    assert document["labels"][:2] == ["x1", "x2"]


def test_audit_document(octahedron, qq):
    report = run_audit(octahedron, [qq])
    document = audit_document(report, octahedron, strict=True, source="octahedron.cx")
    validate(document)
    assert document["exit_code"] == 0
    assert document["fields"] == ["Q"]
    assert {entry["check_id"] for entry in document["equality"]} >= {"balanced-lbt"}
    text = render_text(document)
    assert "exit code: 0" in text
    assert "balanced-lbt" in text


def test_construct_document(tetrahedron):
    spec = ConstructionSpec("simplex-boundary", d=3)
    document = construct_document(tetrahedron, spec, None)
    validate(document)
    assert document["provenance"] == "simplex-boundary d=3"
    assert document["facets"] == 4


def test_facering_document_rendering(octahedron, qq):
    document = facering_document("socle", {"socle": (0, 0, 0, 1)}, octahedron, qq, 0)
    validate(document)
    assert document["socle"] == [0, 0, 0, 1]
    assert "socle: (0, 0, 0, 1)" in render_text(document)


def test_schema_rejects_unknown_kind():
    with pytest.raises(jsonschema.ValidationError):
        validate({"schema_version": 1, "kind": "summary"})
