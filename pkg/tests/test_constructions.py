import pytest

from classify import balanced_coloring, classify, is_flag, neighborliness
from complex_core import f_vector
from constructions import (ConstructionSpec, barycentric_subdivision, build, cross_polytope_boundary,
                           cyclic_boundary, join_of_cycles, klee_novik_B, simplex_boundary, stacked_cross_polytopal,
                           stacked_sphere, switch_ball, switch_ball_boundary, with_boundary_flag)
from errors import DomainError, MalformedInputError
from invariants import h_vector


# ------------------ Families ------------------

def test_cyclic_polytope_is_neighborly():
    c47 = cyclic_boundary(4, 7)
    assert len(c47.facets) == 14
    assert neighborliness(c47) == 2
    assert list(h_vector(c47)) == [1, 3, 6, 3, 1]


@pytest.mark.parametrize("seed", [None, 5])
def test_stacked_sphere(seed):
    sphere = stacked_sphere(7, 4, seed)
    assert sphere.n == 7
    assert list(h_vector(sphere)) == [1, 3, 3, 3, 1]


def test_cross_polytope_carries_its_coloring():
    octahedron = cross_polytope_boundary(3)
    assert f_vector(octahedron).to_list() == [1, 6, 12, 8]
    assert octahedron.coloring == (0, 0, 1, 1, 2, 2)


def test_stacked_cross_polytopal_sphere():
    sphere = stacked_cross_polytopal(2, 3)
    assert sphere.n == 9
    assert len(sphere.facets) == 14
    assert balanced_coloring(sphere) is not None
    assert classify(sphere).homology_sphere


def test_barycentric_subdivision_of_triangle_boundary():
    hexagon = barycentric_subdivision(simplex_boundary(2))
    assert f_vector(hexagon).to_list() == [1, 6, 6]
    assert hexagon.coloring is not None
    assert all(isinstance(label, tuple) for label in hexagon.labels)
    assert balanced_coloring(hexagon).is_balanced_for(hexagon)


def test_join_of_two_squares_is_the_four_cross_polytope():
    j28 = join_of_cycles(2, 8)
    assert f_vector(j28).to_list() == [1, 8, 24, 32, 16]
    assert is_flag(j28)


def test_switch_ball_and_boundary():
    ball = switch_ball(1, 4)
    assert len(ball.facets) == 8
    assert klee_novik_B(1, 4).facet_masks == ball.facet_masks
    boundary = switch_ball_boundary(1, 4)
    assert len(boundary.facets) == 16
    assert list(h_vector(boundary)) == [1, 5, 11, -1]


@pytest.mark.parametrize("call", [
    lambda: switch_ball(3, 4),
    lambda: cyclic_boundary(4, 4),
    lambda: stacked_cross_polytopal(0, 3),
    lambda: join_of_cycles(2, 5),
])
def test_parameter_errors(call):
    with pytest.raises(DomainError):
        call()


# ------------------ Specs ------------------

def test_spec_token_round_trip():
    spec = ConstructionSpec.from_token("cyclic d=4 n=7")
    assert spec == ConstructionSpec("cyclic", d=4, n=7)
    assert spec.to_token() == "cyclic d=4 n=7"


def test_nested_specs():
    part = ConstructionSpec("simplex-boundary", d=3)
    spec = ConstructionSpec("connected-sum", parts=(part, part))
    token = spec.to_token()
    assert token == "connected-sum parts=simplex-boundary:d=3;simplex-boundary:d=3"
    assert ConstructionSpec.from_token(token) == spec
    glued = build(spec)
    assert f_vector(glued).to_list() == [1, 5, 9, 6]
    assert spec.is_polytopal_boundary


@pytest.mark.parametrize("family", ["bnd-switch-ball", "bnd-klee-novik", "klee-novik-B"])
def test_aliases_and_boundary_flag(family):
    spec = ConstructionSpec(family, r=1, m=4)
    assert spec.family == "switch-ball"
    assert len(build(spec).facets) == 8
    assert len(build(with_boundary_flag(spec)).facets) == 16
    with pytest.raises(DomainError):
        with_boundary_flag(ConstructionSpec("cyclic", d=4, n=7))


def test_polytopal_provenance():
    assert ConstructionSpec("cyclic", d=4, n=7).is_polytopal_boundary
    assert not ConstructionSpec("switch-ball-boundary", r=1, m=4).is_polytopal_boundary
    assert ConstructionSpec("barycentric", base=ConstructionSpec("cross-polytope", d=3)).is_polytopal_boundary


def test_build_errors():
    with pytest.raises(DomainError):
        build(ConstructionSpec("cyclic", d=4))
    with pytest.raises(DomainError):
        build(ConstructionSpec("no-such-family"))
    with pytest.raises(MalformedInputError):
        ConstructionSpec.from_token("cyclic d=four")
    with pytest.raises(MalformedInputError):
        ConstructionSpec.from_token("cyclic colour=red")
