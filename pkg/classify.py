"""
Structural predicates that gate the theorem checks.

Every homological predicate is decided from the reduced Betti numbers of
face links, computed once per (complex, field) and cached.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import networkx as nx

from complex_core import (Face, SimplicialComplex, face_of, link_masks, mask_of,
                          parallel_map)
from config import FACENUM_CONFIG
from errors import DomainError, InternalConsistencyError, ResourceCapError
from homology import (BettiVector, FieldSpec, betti_of_facet_masks, euler_characteristic,
                      number_of_components, reduced_betti)

logger = logging.getLogger(__name__)

SPHERE = "sphere"
BALL = "ball"
OTHER = "other"


@dataclass(frozen=True)
class LinkProfile:
    """Reduced Betti numbers of the link of one nonempty face."""
    face: Face
    betti: Tuple[int, ...]  # starts at β_{-1}
    expected_dim: int  # d - |F| - 1

    @property
    def kind(self) -> str:
        if not any(self.betti):
            return BALL
        position = self.expected_dim + 1
        if 0 <= position < len(self.betti) and self.betti[position] == 1 and sum(self.betti) == 1:
            return SPHERE
        return OTHER

    @property
    def reduced_euler(self) -> int:
        return sum(b if i % 2 else -b for i, b in enumerate(self.betti))


@dataclass(frozen=True)
class Coloring:
    """A vertex coloring; ``colors[v]`` is the color of vertex v."""
    colors: Tuple[int, ...]

    def color_classes(self) -> List[Tuple[int, ...]]:
        classes: Dict[int, List[int]] = {}
        for v, c in enumerate(self.colors):
            classes.setdefault(c, []).append(v)
        return [tuple(classes[c]) for c in sorted(classes)]

    def is_balanced_for(self, delta: SimplicialComplex) -> bool:
        if len(self.colors) != delta.n:
            return False
        d = (delta.dim or 0) + 1
        if any(not 0 <= c < d for c in self.colors):
            return False
        return all(len({self.colors[v] for v in face_of(m)}) == m.bit_count() for m in delta.facet_masks)


@dataclass(frozen=True)
class ClassificationReport:
    field: FieldSpec
    dim: int
    n: int
    pure: bool
    connected: bool
    pseudomanifold: bool
    normal_pseudomanifold: Optional[bool]
    eulerian: Optional[bool]
    semi_eulerian: Optional[bool]
    homology_manifold: Optional[bool]
    homology_manifold_with_boundary: Optional[bool]
    homology_sphere: Optional[bool]
    homology_ball: Optional[bool]
    orientable: Optional[bool]
    balanced: Optional[bool]
    coloring: Optional[Coloring]
    flag: bool
    missing_faces: Tuple[Face, ...]
    neighborliness: int
    r_stacked: Optional[int]
    betti: BettiVector
    boundary: Optional[SimplicialComplex] = None
    skipped: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def any_manifold(self) -> bool:
        return bool(self.homology_manifold or self.homology_manifold_with_boundary)

    def check_implications(self) -> None:
        chain = [
            ("homology_sphere", self.homology_sphere),
            ("homology_manifold", self.homology_manifold),
            ("normal_pseudomanifold", self.normal_pseudomanifold),
            ("pseudomanifold", self.pseudomanifold),
            ("pure", self.pure),
        ]
        for (name, value), (next_name, next_value) in zip(chain, chain[1:]):
            if value and next_value is False:
                raise InternalConsistencyError(f"{name} holds but {next_name} does not")
        if self.homology_ball and not self.homology_manifold_with_boundary:
            raise InternalConsistencyError("homology ball without boundary manifold structure")


# ------------------ Link profiles ------------------

@lru_cache(maxsize=64)
def link_profiles(delta: SimplicialComplex, field: FieldSpec,
                  face_cap: Optional[int] = None) -> Dict[int, LinkProfile]:
    """Link homology of every nonempty face, keyed by face mask."""
    cap = FACENUM_CONFIG['face_cap'] if face_cap is None else face_cap
    faces = [m for m in delta.all_face_masks if m]
    if len(faces) > cap:
        raise ResourceCapError(f"{len(faces)} faces exceed the link-check cap {cap}", cap=cap, size=len(faces))
    d = delta.dim + 1

    def profile(mask: int) -> LinkProfile:
        betti = betti_of_facet_masks(link_masks(delta, mask), field)
        return LinkProfile(face_of(mask), tuple(betti), d - mask.bit_count() - 1)

    profiles = parallel_map(profile, sorted(faces))
    return {mask_of(p.face): p for p in profiles}


def _ridge_counts(delta: SimplicialComplex) -> Counter:
    counts: Counter = Counter()
    for facet in delta.facet_masks:
        for v in face_of(facet):
            counts[facet ^ (1 << v)] += 1
    return counts


def is_pseudomanifold(delta: SimplicialComplex) -> bool:
    if delta.is_void or delta.n == 0 or not delta.is_pure:
        return False
    if delta.dim == 0:
        return True
    return all(count == 2 for count in _ridge_counts(delta).values())


def _link_connected(delta: SimplicialComplex, mask: int) -> bool:
    graph = nx.Graph()
    for facet in link_masks(delta, mask):
        verts = face_of(facet)
        graph.add_nodes_from(verts)
        graph.add_edges_from(itertools.combinations(verts, 2))
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)


def _closed_manifold(delta: SimplicialComplex, profiles: Dict[int, LinkProfile]) -> bool:
    return delta.n > 0 and all(p.kind == SPHERE for p in profiles.values())


def is_homology_manifold(delta: SimplicialComplex, field: FieldSpec) -> bool:
    """Closed homology manifold test: every nonempty face link is a homology sphere."""
    if delta.is_void:
        return False
    return _closed_manifold(delta, link_profiles(delta, field))


def _boundary_masks(profiles: Dict[int, LinkProfile]) -> List[int]:
    return [mask for mask, p in profiles.items() if p.kind == BALL]


def _boundary_from_profiles(delta: SimplicialComplex, field: FieldSpec,
                            profiles: Dict[int, LinkProfile]) -> Optional[SimplicialComplex]:
    """The boundary complex when Δ is a homology manifold with boundary, else None."""
    kinds = {p.kind for p in profiles.values()}
    if OTHER in kinds or BALL not in kinds:
        return None
    ball_masks = set(_boundary_masks(profiles))
    boundary = SimplicialComplex.from_masks(ball_masks, delta.labels)
    lifted = {_lift(boundary, delta, m) for m in boundary.all_face_masks if m}
    if lifted != ball_masks:
        return None
    if boundary.dim != delta.dim - 1 or not is_homology_manifold(boundary, field):
        return None
    return boundary


def _lift(boundary: SimplicialComplex, delta: SimplicialComplex, mask: int) -> int:
    return mask_of(delta.label_map[boundary.labels[v]] for v in face_of(mask))


def boundary_complex(delta: SimplicialComplex, field: Optional[FieldSpec] = None) -> SimplicialComplex:
    """
    The boundary of a homology manifold: faces whose links are homology balls.

    Closed manifolds get the empty complex {∅}; anything else is rejected.
    """
    field = field or FieldSpec.default()
    if delta.is_void:
        raise DomainError("boundary of the void complex")
    profiles = link_profiles(delta, field)
    if _closed_manifold(delta, profiles):
        return SimplicialComplex.empty()
    boundary = _boundary_from_profiles(delta, field, profiles)
    if boundary is None:
        raise DomainError("not a homology manifold, with or without boundary")
    return boundary


# ------------------ Balanced colorings ------------------

def balanced_coloring(delta: SimplicialComplex) -> Optional[Coloring]:
    """
    Search for a proper coloring of the 1-skeleton with d = dim + 1 colors.

    Every facet is a clique, so a proper coloring makes every facet rainbow;
    a facet with one uncolored vertex forces that vertex's color.
    """
    if delta.is_void or not delta.is_pure:
        raise DomainError("balanced colorings are defined for pure complexes")
    d = delta.dim + 1
    if delta.n == 0:
        return Coloring(())
    if delta.coloring is not None and Coloring(delta.coloring).is_balanced_for(delta):
        return Coloring(tuple(delta.coloring))

    n = delta.n
    adjacency = [set(delta.graph.neighbors(v)) for v in range(n)]
    facets_of: List[List[Face]] = [[] for _ in range(n)]
    for facet in delta.facets:
        for v in facet:
            facets_of[v].append(facet)
    colors = [-1] * n

    def assign(vertex: int, color: int, trail: List[int]) -> bool:
        pending = [(vertex, color)]
        while pending:
            v, c = pending.pop()
            if colors[v] == c:
                continue
            if colors[v] != -1 or any(colors[u] == c for u in adjacency[v]):
                return False
            colors[v] = c
            trail.append(v)
            for facet in facets_of[v]:
                open_vertices = [u for u in facet if colors[u] == -1]
                if len(open_vertices) == 1:
                    missing = set(range(d)) - {colors[u] for u in facet if colors[u] != -1}
                    if len(missing) != 1:
                        return False
                    pending.append((open_vertices[0], missing.pop()))
        return True

    def undo(trail: List[int]) -> None:
        for v in trail:
            colors[v] = -1

    def search() -> bool:
        uncolored = [v for v in range(n) if colors[v] == -1]
        if not uncolored:
            return True
        v = max(uncolored, key=lambda u: (sum(colors[w] != -1 for w in adjacency[u]), -u))
        trail: List[int] = []
        if not any(colors[w] != -1 for w in adjacency[v]):
            # fresh component: colors of its first facet are fixed up to symmetry
            ok = True
            for c, u in enumerate(facets_of[v][0]):
                if not assign(u, c, trail):
                    ok = False
                    break
            if ok and search():
                return True
            undo(trail)
            return False
        used = {colors[w] for w in adjacency[v] if colors[w] != -1}
        for c in range(d):
            if c in used:
                continue
            trail = []
            if assign(v, c, trail) and search():
                return True
            undo(trail)
        return False

    if not search():
        return None
    return Coloring(tuple(colors))


# ------------------ Missing faces and neighborliness ------------------

def missing_faces(delta: SimplicialComplex) -> List[Face]:
    """Minimal non-faces, found by extending each face by a larger vertex."""
    if delta.is_void:
        raise DomainError("missing faces of the void complex")
    faces = delta.all_face_masks
    found = []
    for mask in faces:
        start = mask.bit_length()
        for v in range(start, delta.n):
            candidate = mask | (1 << v)
            if candidate in faces:
                continue
            if all(candidate ^ (1 << u) in faces for u in face_of(candidate)):
                found.append(face_of(candidate))
    return sorted(found, key=lambda f: (len(f), f))


def is_flag(delta: SimplicialComplex) -> bool:
    return all(len(face) == 2 for face in missing_faces(delta))


def neighborliness(delta: SimplicialComplex) -> int:
    """Largest s such that every s-subset of the vertices is a face."""
    missing = missing_faces(delta)
    if not missing:
        return delta.n
    return min(len(face) for face in missing) - 1


# ------------------ Stackedness ------------------

def _stackedness(delta: SimplicialComplex, profiles: Dict[int, LinkProfile]) -> int:
    interior = [m.bit_count() - 1 for m in delta.all_face_masks if m and profiles[m].kind != BALL]
    return max(0, delta.dim - min(interior))


def r_stackedness(delta: SimplicialComplex, field: Optional[FieldSpec] = None) -> int:
    """Least r such that no interior face has dimension <= dim - r - 1."""
    field = field or FieldSpec.default()
    if delta.is_void:
        raise DomainError("r-stackedness of the void complex")
    profiles = link_profiles(delta, field)
    if _closed_manifold(delta, profiles):
        raise DomainError("r-stackedness is only decided for manifolds with boundary")
    if _boundary_from_profiles(delta, field, profiles) is None:
        raise DomainError("not a homology manifold with boundary")
    return _stackedness(delta, profiles)


# ------------------ Classification ------------------

def classify(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
             face_cap: Optional[int] = None) -> ClassificationReport:
    field = field or FieldSpec.default()
    if delta.is_void:
        raise DomainError("cannot classify the void complex")
    d = delta.dim + 1
    skipped: List[str] = []
    betti = reduced_betti(delta, field)
    pure = delta.is_pure
    connected = delta.n > 0 and nx.is_connected(delta.graph)
    pseudomanifold = is_pseudomanifold(delta)
    missing = tuple(missing_faces(delta))
    flag = all(len(face) == 2 for face in missing)
    neighborly = delta.n if not missing else min(len(face) for face in missing) - 1

    normal = eulerian = semi_eulerian = None
    closed = with_boundary = sphere = ball = orientable = None
    boundary = None
    r_stacked = None
    try:
        profiles = link_profiles(delta, field, face_cap)
    except ResourceCapError as exc:
        logger.warning("link-based classification skipped: %s", exc)
        skipped.append(str(exc))
        profiles = None

    if profiles is not None:
        normal = pseudomanifold and all(
            _link_connected(delta, mask) for mask in profiles if mask.bit_count() <= d - 2)
        def expected(size: int) -> int:
            return 1 if (d - size - 1) % 2 == 0 else -1

        semi_eulerian = pure and all(p.reduced_euler == expected(len(p.face)) for p in profiles.values())
        eulerian = semi_eulerian and euler_characteristic(delta) == expected(0)
        closed = _closed_manifold(delta, profiles)
        boundary = _boundary_from_profiles(delta, field, profiles) if not closed else None
        with_boundary = boundary is not None
        sphere_profile = tuple(1 if i == d - 1 else 0 for i in range(-1, d))
        sphere = closed and betti.entries == sphere_profile
        ball = with_boundary and not any(betti.entries) and is_homology_sphere(boundary, field)
        if closed:
            top = betti[d - 1] + (1 if d == 1 else 0)
            orientable = top == number_of_components(delta)
        if with_boundary:
            r_stacked = _stackedness(delta, profiles)

    coloring = balanced_coloring(delta) if pure else None
    report = ClassificationReport(
        field=field, dim=delta.dim, n=delta.n, pure=pure, connected=connected,
        pseudomanifold=pseudomanifold, normal_pseudomanifold=normal,
        eulerian=eulerian, semi_eulerian=semi_eulerian,
        homology_manifold=closed, homology_manifold_with_boundary=with_boundary,
        homology_sphere=sphere, homology_ball=ball, orientable=orientable,
        balanced=coloring is not None if pure else False, coloring=coloring,
        flag=flag, missing_faces=missing, neighborliness=neighborly,
        r_stacked=r_stacked, betti=betti, boundary=boundary, skipped=tuple(skipped),
    )
    report.check_implications()
    return report


def is_homology_sphere(delta: SimplicialComplex, field: FieldSpec) -> bool:
    if delta.is_void or not is_homology_manifold(delta, field):
        return False
    d = delta.dim + 1
    return reduced_betti(delta, field).entries == tuple(1 if i == d - 1 else 0 for i in range(-1, d))
