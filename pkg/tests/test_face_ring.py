import pytest

from classify import missing_faces
from complex_core import skeleton
from constructions import ConstructionSpec, build, cyclic_boundary
from errors import DomainError, ResourceCapError, UnluckyFieldError
from face_ring import (binomial_representation, colored_lsop, face_ring_dimension, field_label,
                       gorenstein_quotient_dims, graded_betti_hochster, hilbert_artinian, hilbert_series_coefficient,
                       is_f_vector, is_M_sequence, kruskal_katona_bound, macaulay_next, probe_lefschetz,
                       random_lsop, ring_field_order, socle_dims)
from homology import FieldSpec
from invariants import HVector, h_prime, sigma_vector


# ------------------ Fields and l.s.o.p.s ------------------

def test_ring_field_order(qq, gf2):
    assert ring_field_order(qq) == 32003
    assert ring_field_order(gf2) == 2 ** 15
    assert ring_field_order(gf2, extend=False) == 2
    assert field_label(2 ** 15) == "GF(2^15)"
    assert field_label(32003) == "GF(32003)"


def test_random_lsop_shape(octahedron, qq):
    system = random_lsop(octahedron, qq, seed=0)
    assert len(system.theta) == 3
    assert all(len(row) == 6 for row in system.theta)
    assert system.label == "GF(32003)"
    assert system.omega is not None


def test_random_lsop_over_gf2_without_extension_is_unlucky(tetrahedron, gf2):
    k4 = skeleton(tetrahedron, 1)
    with pytest.raises(UnluckyFieldError):
        random_lsop(k4, gf2, seed=0, extend=False)


def test_colored_lsop(octahedron, tetrahedron, qq):
    system = colored_lsop(octahedron, qq)
    assert system.colored
    assert all(set(row) <= {0, 1} for row in system.theta)
    assert hilbert_artinian(octahedron, system, 3) == (1, 3, 3, 1)
    with pytest.raises(DomainError):
        colored_lsop(tetrahedron, qq)


# ------------------ Hilbert functions ------------------

def test_face_ring_dimension_matches_hilbert_series(octahedron):
    h = HVector([1, 3, 3, 1])
    for degree in range(4):
        assert face_ring_dimension(octahedron, degree) == hilbert_series_coefficient(h, degree)
    assert face_ring_dimension(octahedron, 2) == 18


def test_artinian_reduction_of_a_sphere_has_h_as_hilbert_function(qq):
    c47 = cyclic_boundary(4, 7)
    assert hilbert_artinian(c47, random_lsop(c47, qq, seed=1), 4) == (1, 3, 6, 3, 1)


def test_artinian_reduction_of_torus_has_h_prime(torus, qq):
    assert hilbert_artinian(torus, random_lsop(torus, qq, seed=0), 3) == (1, 5, 11, 1)


# ------------------ Socles ------------------

def test_socle_of_a_sphere_is_top_degree_only(octahedron, qq):
    assert socle_dims(octahedron, random_lsop(octahedron, qq, seed=0)) == (0, 0, 0, 1)


def test_socle_of_projective_plane_over_gf2(rp2, gf2):
    system = random_lsop(rp2, gf2, seed=0)
    assert socle_dims(rp2, system) == (0, 0, 3, 1)
    assert gorenstein_quotient_dims(rp2, system) == (1, 3, 3, 1)


# ------------------ Lefschetz probes ------------------

def test_octahedron_has_the_lefschetz_properties(octahedron, qq):
    probe = probe_lefschetz(octahedron, qq, seed=0)
    assert probe.certified
    assert probe.verdict == "certified-modulo-probe"
    assert probe.report.hilbert[:4] == (1, 3, 3, 1)
    assert [m.status for m in probe.report.weak] == ["injective", "bijective", "surjective"]
    strong = probe_lefschetz(octahedron, qq, seed=0, strong=True)
    assert strong.report.has_slp


# ------------------ Graded Betti numbers ------------------

def test_octahedron_betti_table_is_a_complete_intersection(octahedron, qq):
    table = graded_betti_hochster(octahedron, qq)
    assert table.as_dict() == {(1, 2): 3, (2, 4): 3, (3, 6): 1}
    assert table.generators(2) == 3
    assert table.projective_dimension() == 3


def test_betti_table_recovers_sigma(octahedron, qq):
    table = graded_betti_hochster(octahedron, qq)
    assert table.murai_sigma().entries == sigma_vector(octahedron, qq).entries


def test_betti_table_cap(torus, qq):
    with pytest.raises(ResourceCapError):
        graded_betti_hochster(torus, qq, cap=4)


# ------------------ Macaulay and Kruskal-Katona ------------------

def test_binomial_representation():
    assert binomial_representation(10, 2) == [(5, 2)]
    assert binomial_representation(11, 2) == [(5, 2), (1, 1)]
    assert binomial_representation(0, 3) == []


def test_binomial_representation_of_large_numbers():
    assert binomial_representation(10 ** 12, 1) == [(10 ** 12, 1)]
    assert binomial_representation(10 ** 9, 2) == [(44721, 2), (38440, 1)]
    assert macaulay_next(10 ** 12, 1) == (10 ** 12 + 1) * 10 ** 12 // 2


def test_macaulay_and_kruskal_katona_bounds():
    assert macaulay_next(10, 2) == 20
    assert macaulay_next(3, 1) == 6
    assert kruskal_katona_bound(6, 2) == 4
    assert kruskal_katona_bound(4, 1) == 6


@pytest.mark.parametrize("vector, expected", [
    ((1, 3, 6, 10), True),
    ((1, 2, 4), False),
    ((1, 2, 3), True),
    ((2, 1), False),
])
def test_is_M_sequence(vector, expected):
    assert is_M_sequence(vector) is expected


@pytest.mark.parametrize("vector, expected", [
    ((1, 4, 6, 4), True),
    ((1, 3, 4), False),
    ((1, 3, 3, 1), True),
    ((1, 0, 0), True),
])
def test_is_f_vector(vector, expected):
    assert is_f_vector(vector) is expected


@pytest.mark.parametrize("check", [is_M_sequence, is_f_vector])
@pytest.mark.parametrize("vector", [(1, -1), (1, -1, 2), (1, 3, -2)])
def test_negative_entries_are_a_domain_error(check, vector):
    with pytest.raises(DomainError):
        check(vector)


# ------------------ Sweeps over constructed complexes ------------------

@pytest.mark.parametrize("token, field", [
    ("cross-polytope d=3", "q"),
    ("cyclic d=4 n=7", "q"),
    ("stacked n=7 d=4 seed=1", "q"),
    ("stacked-ball n=6 d=3", "q"),
    ("switch-ball r=1 m=4", "q"),
    ("switch-ball-boundary r=1 m=4", "q"),
    ("switch-ball-boundary r=1 m=4", "2"),
])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_artinian_hilbert_function_is_h_prime(token, field, seed):
    delta = build(ConstructionSpec.from_token(token))
    spec = FieldSpec.parse(field)
    system = random_lsop(delta, spec, seed=seed)
    assert hilbert_artinian(delta, system, delta.d) == h_prime(delta, spec)


@pytest.mark.parametrize("token", [
    "cyclic d=4 n=8",
    "stacked n=8 d=4",
    "switch-ball-boundary r=1 m=4",
    "cross-polytope d=4",
])
def test_betti_table_recovers_sigma_on_constructed_complexes(token, qq):
    delta = build(ConstructionSpec.from_token(token))
    table = graded_betti_hochster(delta, qq)
    assert table.murai_sigma().entries == sigma_vector(delta, qq).entries
    sizes = [len(face) for face in missing_faces(delta)]
    for degree in range(2, delta.n + 1):
        assert table.generators(degree) == sizes.count(degree)


@pytest.mark.parametrize("d, n", [
    (3, 6),
    (4, 7),
    (4, 8),
    pytest.param(5, 8, marks=pytest.mark.slow),
])
def test_cyclic_polytopes_have_the_strong_lefschetz_property(d, n, qq):
    sphere = cyclic_boundary(d, n)
    probe = probe_lefschetz(sphere, qq, seed=0, strong=True)
    assert probe.certified
    assert probe.report.has_slp
    assert all(m.status == "bijective" for m in probe.report.strong)
    assert probe_lefschetz(sphere, qq, seed=0, strong=True).report == probe.report
