import pytest

from complex_core import f_vector
from complex_file import dump, dumps, facet_lines, label_token, load, loads, parse_label
from constructions import ConstructionSpec, barycentric_subdivision, simplex_boundary
from errors import MalformedInputError


def test_load_octahedron(data_dir):
    cf = load(data_dir / "octahedron.cx")
    assert cf.dim == 2
    assert cf.provenance is None
    assert cf.complex.labels == (1, 2, 3, 4, 5, 6)
    assert f_vector(cf.complex).to_list() == [1, 6, 12, 8]


def test_load_reads_provenance(data_dir):
    cf = load(data_dir / "torus.cx")
    assert cf.provenance == ConstructionSpec("switch-ball-boundary", r=1, m=4)
    assert cf.complex.labels[0] == "x1"
    assert cf.source.endswith("torus.cx")


def test_serialization_is_canonical(data_dir):
    path = data_dir / "torus.cx"
    cf = load(path)
    assert dumps(cf.complex, cf.provenance) == path.read_text(encoding="utf-8")


def test_comments_and_blank_lines_are_ignored():
    cf = loads("# a triangle\n\n0 1  # first edge\n1 2\n0 2\n")
    assert len(cf.complex.facets) == 3
    assert cf.dim is None


def test_dim_header_must_match():
    with pytest.raises(MalformedInputError):
        loads("dim=3\n0 1 2\n")


def test_dim_header_must_come_first():
    with pytest.raises(MalformedInputError):
        loads("0 1 2\ndim=2\n")


@pytest.mark.parametrize("text", ["", "# nothing\n", "dim=two\n0 1\n", "n=3\n0 1\n", "0 1 1\n"])
def test_malformed_files(text):
    with pytest.raises(MalformedInputError):
        loads(text)


def test_empty_complex_needs_explicit_dimension():
    assert loads("dim=-1\n").complex.is_empty_complex


def test_labels():
    assert parse_label("12") == 12
    assert parse_label("-3") == -3
    assert parse_label("x1") == "x1"
    assert label_token(("a", 1)) == "{a,1}"
    with pytest.raises(MalformedInputError):
        label_token("a b")


def test_mixed_labels_sort_integers_first():
    cf = loads("b 2\n10 b\n")
    assert cf.complex.labels == (2, 10, "b")
    assert facet_lines(cf.complex) == ["2 b", "10 b"]


def test_dump_and_load(tmp_path):
    path = tmp_path / "sphere.cx"
    spec = ConstructionSpec("simplex-boundary", d=3)
    dump(simplex_boundary(3), path, spec)
    cf = load(path)
    assert cf.provenance == spec
    assert cf.complex.facets == simplex_boundary(3).facets


def test_tuple_labels_survive_as_tokens():
    hexagon = barycentric_subdivision(simplex_boundary(2))
    cf = loads(dumps(hexagon))
    assert f_vector(cf.complex) == f_vector(hexagon)
    assert "{0,1}" in cf.complex.labels


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load(tmp_path / "absent.cx")
