import pytest

from classify import (SPHERE, Coloring, balanced_coloring, boundary_complex, classify, is_flag,
                      is_homology_manifold, is_pseudomanifold, link_profiles, missing_faces, neighborliness,
                      r_stackedness)
from complex_core import f_vector
from constructions import cycle, simplex, stacked_ball, switch_ball
from errors import DomainError
from invariants import h_double_prime


def test_octahedron_is_a_flag_balanced_sphere(octahedron, qq):
    report = classify(octahedron, qq)
    assert report.homology_sphere
    assert report.homology_manifold
    assert report.orientable
    assert report.eulerian
    assert report.flag
    assert report.balanced
    assert report.coloring.is_balanced_for(octahedron)
    assert report.missing_faces == ((0, 1), (2, 3), (4, 5))
    assert report.neighborliness == 1
    assert report.r_stacked is None


def test_tetrahedron_is_neighborly_but_not_flag(tetrahedron, qq):
    report = classify(tetrahedron, qq)
    assert report.homology_sphere
    assert not report.flag
    assert not report.balanced
    assert report.missing_faces == ((0, 1, 2, 3),)
    assert report.neighborliness == 3


def test_torus(torus, qq):
    report = classify(torus, qq)
    assert report.connected
    assert report.normal_pseudomanifold
    assert report.homology_manifold
    assert not report.homology_sphere
    assert report.orientable
    assert report.semi_eulerian
    assert not report.eulerian
    assert report.neighborliness == 1


def test_projective_plane_orientability_depends_on_field(rp2, qq, gf2):
    assert classify(rp2, qq).orientable is False
    assert classify(rp2, gf2).orientable is True
    assert neighborliness(rp2) == 2


def test_three_triangles_is_not_a_pseudomanifold(three_triangles, qq):
    report = classify(three_triangles, qq)
    assert report.pure
    assert not report.pseudomanifold
    assert not report.homology_manifold
    assert not report.homology_manifold_with_boundary
    assert not is_homology_manifold(three_triangles, qq)


def test_stacked_ball(qq):
    ball = stacked_ball(6, 3)
    report = classify(ball, qq)
    assert report.homology_ball
    assert report.homology_manifold_with_boundary
    assert not report.pseudomanifold
    assert report.r_stacked == 1
    assert r_stackedness(ball, qq) == 1
    assert f_vector(report.boundary).to_list() == [1, 6, 12, 8]


def test_simplex_is_zero_stacked(qq):
    assert r_stackedness(simplex(3), qq) == 0
    assert classify(simplex(3), qq).homology_ball


@pytest.mark.parametrize("r, m", [
    pytest.param(r, m, marks=[pytest.mark.slow] if m == 7 else [])
    for m in range(3, 8) for r in range(m - 1)
])
def test_switch_ball_is_exactly_r_stacked(r, m, qq):
    ball = switch_ball(r, m)
    report = classify(ball, qq)
    assert report.homology_manifold_with_boundary
    assert report.r_stacked == r_stackedness(ball, qq) == r
    h2 = h_double_prime(ball, qq, report.betti)
    assert all(h2[j] == 0 for j in range(r + 1, m + 1))
    assert all(h2[j] != 0 for j in range(1, r + 1))


def test_r_stackedness_rejects_closed_manifolds(octahedron, qq):
    with pytest.raises(DomainError):
        r_stackedness(octahedron, qq)


def test_boundary_complex(qq, octahedron):
    assert f_vector(boundary_complex(stacked_ball(5, 3), qq)).to_list() == [1, 5, 9, 6]
    assert boundary_complex(octahedron, qq).is_empty_complex


def test_boundary_complex_rejects_non_manifolds(three_triangles, qq):
    with pytest.raises(DomainError):
        boundary_complex(three_triangles, qq)


def test_every_link_of_octahedron_is_a_sphere(octahedron, qq):
    profiles = link_profiles(octahedron, qq)
    assert len(profiles) == 6 + 12 + 8
    assert all(p.kind == SPHERE for p in profiles.values())


def test_link_profiles_face_cap(torus, qq):
    report = classify(torus, qq, face_cap=5)
    assert report.homology_manifold is None
    assert report.skipped


# ------------------ Colorings ------------------

def test_balanced_coloring_of_cycles():
    assert balanced_coloring(cycle(5)) is None
    even = cycle(6).with_coloring(None)
    coloring = balanced_coloring(even)
    assert coloring is not None
    assert coloring.is_balanced_for(even)
    assert len(coloring.color_classes()) == 2


def test_coloring_validity(tetrahedron):
    assert not Coloring((0, 1, 2, 0)).is_balanced_for(tetrahedron)
    assert not Coloring((0, 1, 2)).is_balanced_for(tetrahedron)


def test_pseudomanifold_and_flag(torus, three_triangles, octahedron):
    assert is_pseudomanifold(torus)
    assert not is_pseudomanifold(three_triangles)
    assert is_flag(octahedron)
    assert missing_faces(three_triangles)[0] == (2, 3)
