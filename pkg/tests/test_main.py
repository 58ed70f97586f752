import json

import pytest

from complex_file import load
from config import FACENUM_CONFIG
from constructions import ConstructionSpec
from main import EXIT_DATAERR, EXIT_NOINPUT, EXIT_OK, EXIT_RESOURCE, EXIT_TEMPFAIL, EXIT_USAGE, main


def _facet_lines(out):
    return [line for line in out.splitlines() if line and not line.startswith(("dim=", "#"))]


# ------------------ construct ------------------

def test_construct_to_stdout(capsys):
    assert main(["construct", "cyclic", "--d", "4", "--n", "7"]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.startswith("dim=3\n# construction: cyclic d=4 n=7\n")
    assert len(_facet_lines(captured.out)) == 14
    assert "14 facets" in captured.err


@pytest.mark.parametrize("argv, facets", [
    (["switch-ball", "--r", "1", "--m", "4"], 8),
    (["switch-ball", "--r", "1", "--m", "4", "--boundary"], 16),
    (["bnd-switch-ball", "--r", "1", "--m", "4"], 8),
    (["bnd-klee-novik", "--r", "1", "--m", "4"], 8),
    (["bnd-klee-novik", "--r", "1", "--m", "4", "--boundary"], 16),
    (["klee-novik-B", "--r", "1", "--m", "4"], 8),
    (["stacked", "--n", "7", "--d", "4", "--seed", "2"], 11),
])
def test_construct_families(capsys, argv, facets):
    assert main(["construct"] + argv) == EXIT_OK
    assert len(_facet_lines(capsys.readouterr().out)) == facets


def test_construct_to_file(tmp_path, capsys):
    path = tmp_path / "c47.cx"
    assert main(["construct", "cyclic", "--d", "4", "--n", "7", "--out", str(path), "--json"]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["vectors"]["f"] == [1, 7, 21, 28, 14]
    cf = load(path)
    assert cf.provenance == ConstructionSpec("cyclic", d=4, n=7)
    assert len(cf.complex.facets) == 14


@pytest.mark.parametrize("argv", [
    ["construct", "cyclic", "--d", "4"],
    ["construct", "cyclic", "--d", "4", "--n", "7", "--boundary"],
    ["construct", "cyclic", "--d", "4", "--n", "3"],
])
def test_construct_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_unknown_family_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["construct", "dodecahedron"])
    assert exc.value.code == EXIT_USAGE


# ------------------ invariants ------------------

def test_invariants_json(data_dir, capsys):
    assert main(["invariants", str(data_dir / "octahedron.cx"), "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "invariants"
    assert document["vectors"]["h"] == [1, 3, 3, 1]
    assert document["labels"] == ["1", "2", "3", "4", "5", "6"]
    assert document["classification"]["homology_sphere"] is True


def test_invariants_text_with_two_fields(data_dir, capsys):
    assert main(["invariants", str(data_dir / "rp2-6.cx"), "--field", "q", "--field", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("invariants report (schema 1)")
    assert "GF(2)" in out


def test_invariants_strict_at_mu_cap(data_dir, capsys):
    path = str(data_dir / "torus.cx")
    assert main(["invariants", path, "--mu-cap", "4"]) == EXIT_OK
    assert main(["invariants", path, "--mu-cap", "4", "--strict"]) == EXIT_RESOURCE


def test_invariants_strict_ignores_non_resource_omissions(data_dir, capsys):
    assert main(["invariants", str(data_dir / "torus.cx"), "--strict", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert "gamma" in document["omitted"]
    assert document["capped"] == []


# ------------------ audit ------------------

def test_audit_torus(data_dir, capsys):
    path = str(data_dir / "torus.cx")
    assert main(["audit", path, "--mu-cap", "4"]) == EXIT_OK
    assert main(["audit", path, "--mu-cap", "4", "--strict"]) == EXIT_RESOURCE


def test_audit_of_a_non_pseudomanifold(data_dir, capsys):
    path = str(data_dir / "three-triangles.cx")
    assert main(["audit", path]) == EXIT_OK
    capsys.readouterr()
    assert main(["audit", path, "--strict", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["exit_code"] == 0
    assert document["classification"]["pseudomanifold"] is False


def test_audit_json(data_dir, capsys):
    assert main(["audit", str(data_dir / "octahedron.cx"), "--fields", "q,2", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["fields"] == ["Q", "GF(2)"]
    assert document["exit_code"] == 0
    assert len(document["audit"]) == 31


# ------------------ facering ------------------

def test_facering_hilbert_of_torus(data_dir, capsys):
    assert main(["facering", "hilbert", str(data_dir / "torus.cx"), "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["hilbert"] == [1, 5, 11, 1]
    assert document["field_used"] == "GF(32003)"


def test_facering_colored_hilbert(data_dir, capsys):
    assert main(["facering", "hilbert", str(data_dir / "octahedron.cx"), "--colored", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["hilbert"] == [1, 3, 3, 1]
    assert document["colored"] is True


def test_facering_wlp(data_dir, capsys):
    assert main(["facering", "wlp", str(data_dir / "octahedron.cx"), "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["verdict"] == "certified-modulo-probe"
    assert [m["status"] for m in document["maps"]] == ["injective", "bijective", "surjective"]


def test_facering_socle(data_dir, capsys):
    assert main(["facering", "socle", str(data_dir / "rp2-6.cx"), "--field", "2", "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["socle"] == [0, 0, 3, 1]
    assert document["gorenstein"] == [1, 3, 3, 1]
    assert document["field_used"] == "GF(2^15)"


def test_facering_betti(data_dir, capsys):
    assert main(["facering", "betti", str(data_dir / "octahedron.cx"), "--json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["graded_betti"] == [[1, 2, 3], [2, 4, 3], [3, 6, 1]]
    assert document["murai_sigma"] == [1, "1/5", "1/5", 1]


def test_facering_without_lsop_is_a_temporary_failure(data_dir, monkeypatch):
    monkeypatch.setitem(FACENUM_CONFIG, "lsop_max_attempts", 0)
    assert main(["facering", "socle", str(data_dir / "octahedron.cx")]) == EXIT_TEMPFAIL


# ------------------ input errors ------------------

def test_malformed_file(data_dir):
    assert main(["invariants", str(data_dir / "malformed.cx")]) == EXIT_DATAERR


def test_missing_file(tmp_path):
    assert main(["audit", str(tmp_path / "absent.cx")]) == EXIT_NOINPUT
