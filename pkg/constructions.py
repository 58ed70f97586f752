"""
Generators for the named families of complexes.

Every generator returns a canonical SimplicialComplex; families that are
balanced by construction carry their coloring witness.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from complex_core import (SimplicialComplex, balanced_connected_sum, connected_sum, face_of,
                          from_facets, join, mask_of)
from errors import DomainError, MalformedInputError

logger = logging.getLogger(__name__)


# ------------------ Simplices and cross-polytopes ------------------

def simplex(d: int) -> SimplicialComplex:
    """The full d-simplex on vertices 0..d."""
    if d < 0:
        raise DomainError("simplex dimension must be >= 0")
    return SimplicialComplex.from_masks([(1 << (d + 1)) - 1], list(range(d + 1)), list(range(d + 1)))


def simplex_boundary(d: int) -> SimplicialComplex:
    if d < 1:
        raise DomainError("simplex boundary needs d >= 1")
    full = (1 << (d + 1)) - 1
    return SimplicialComplex.from_masks([full ^ (1 << v) for v in range(d + 1)], list(range(d + 1)))


def _two_points() -> SimplicialComplex:
    return SimplicialComplex(2, (1, 2), (0, 1), (0, 0))


def cross_polytope_boundary(d: int) -> SimplicialComplex:
    """Join of d copies of S^0; vertices 2i and 2i+1 are antipodal and share color i."""
    if d < 1:
        raise DomainError("cross-polytope needs d >= 1")
    result = _two_points()
    for _ in range(d - 1):
        result = join(result, _two_points())
    return result


def cycle(n: int) -> SimplicialComplex:
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    coloring = [v % 2 for v in range(n)] if n % 2 == 0 else None
    return SimplicialComplex.from_masks([mask_of((v, (v + 1) % n)) for v in range(n)], list(range(n)), coloring)


# ------------------ Cyclic polytopes ------------------

def _gale_even(chosen: Tuple[int, ...], n: int) -> bool:
    """Every run of chosen indices not touching either end has even length."""
    runs: List[List[int]] = []
    for v in chosen:
        if runs and runs[-1][-1] == v - 1:
            runs[-1].append(v)
        else:
            runs.append([v])
    return all(len(run) % 2 == 0 for run in runs if run[0] != 0 and run[-1] != n - 1)


def cyclic_boundary(d: int, n: int) -> SimplicialComplex:
    if d < 1 or n < d + 1:
        raise DomainError(f"cyclic polytope C_{d}({n}) needs n >= d + 1")
    facets = [mask_of(c) for c in itertools.combinations(range(n), d) if _gale_even(c, n)]
    return SimplicialComplex.from_masks(facets, list(range(n)))


# ------------------ Stacked spheres and balls ------------------

def _stack(n: int, d: int, seed: Optional[int]) -> Tuple[List[FrozenSet[int]], Set[FrozenSet[int]]]:
    if d < 1 or n < d + 1:
        raise DomainError(f"ST({n},{d}) needs n >= d + 1")
    simplices = [frozenset(range(d + 1))]
    boundary = {frozenset(c) for c in itertools.combinations(range(d + 1), d)}
    rng = random.Random(seed) if seed is not None else None
    for v in range(d + 1, n):
        if rng is None:
            newest = simplices[-1]
            candidates = [newest - {u} for u in newest if newest - {u} in boundary]
            ridge = min(candidates, key=sorted)
        else:
            ridge = rng.choice(sorted(boundary, key=sorted))
        new_simplex = ridge | {v}
        boundary.remove(ridge)
        boundary.update(new_simplex - {u} for u in ridge)
        simplices.append(new_simplex)
    return simplices, boundary


def stacked_ball(n: int, d: int, seed: Optional[int] = None) -> SimplicialComplex:
    """The solid stacked d-ball ST(n, d) on n vertices."""
    simplices, _ = _stack(n, d, seed)
    return SimplicialComplex.from_masks([mask_of(s) for s in simplices], list(range(n)))


def stacked_sphere(n: int, d: int, seed: Optional[int] = None) -> SimplicialComplex:
    """
    Boundary of ST(n, d).

    Without a seed each new simplex is glued onto the most recently added
    one; with a seed the gluing facet is drawn from the whole boundary.
    """
    _, boundary = _stack(n, d, seed)
    return SimplicialComplex.from_masks([mask_of(s) for s in boundary], list(range(n)))


def stacked_cross_polytopal(k: int, d: int) -> SimplicialComplex:
    """Balanced connected sum of k copies of the d-cross-polytope boundary."""
    if k < 1:
        raise DomainError("stacked cross-polytopal sphere needs k >= 1")
    base = cross_polytope_boundary(d)
    even = tuple(range(0, 2 * d, 2))
    glue = tuple(range(1, 2 * d, 2))
    result = base
    for _ in range(k - 1):
        offset = result.n
        result = balanced_connected_sum(result, base, glue, even)
        # odd vertices of the newest copy were appended in order
        glue = tuple(range(offset, offset + d))
    return result


# ------------------ Barycentric subdivision ------------------

def barycentric_subdivision(delta: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the nonempty faces; vertex colors are face cardinality minus one."""
    if delta.is_void:
        raise DomainError("cannot subdivide the void complex")
    faces = sorted((m for m in delta.all_face_masks if m), key=lambda m: (m.bit_count(), face_of(m)))
    index = {m: i for i, m in enumerate(faces)}
    chains = set()
    for facet in delta.facet_masks:
        for order in itertools.permutations(face_of(facet)):
            prefix, chain = 0, 0
            for v in order:
                prefix |= 1 << v
                chain |= 1 << index[prefix]
            chains.add(chain)
    labels = [delta.label_face(face_of(m)) for m in faces]
    coloring = [m.bit_count() - 1 for m in faces]
    return SimplicialComplex.from_masks(chains, labels, coloring)


# ------------------ Joins of cycles ------------------

def join_of_cycles(k: int, n: int) -> SimplicialComplex:
    """J_k(n): the join of k cycles whose lengths differ by at most one."""
    if k < 1:
        raise DomainError("join of cycles needs k >= 1")
    if n < 3 * k:
        raise DomainError(f"J_{k}({n}) would contain a cycle shorter than 3")
    if n < 4 * k:
        logger.warning("J_%d(%d) contains triangles and is not flag", k, n)
    lengths = [n // k + (1 if i < n % k else 0) for i in range(k)]
    result = cycle(lengths[0])
    for length in lengths[1:]:
        result = join(result, cycle(length))
    return result


# ------------------ Two-sided balls ------------------

def switch_ball(r: int, m: int) -> SimplicialComplex:
    """
    B(r, m): facets {z_1..z_m} with z_i in {x_i, y_i} that switch sides
    between consecutive indices at most r times.
    """
    if m < 2 or not 0 <= r <= m - 2:
        raise DomainError(f"B({r},{m}) needs 0 <= r <= m - 2")
    facets = []
    for sides in itertools.product((0, 1), repeat=m):
        switches = sum(1 for a, b in zip(sides, sides[1:]) if a != b)
        if switches <= r:
            facets.append([f"{'xy'[s]}{i + 1}" for i, s in enumerate(sides)])
    return from_facets(facets)


def switch_ball_boundary(r: int, m: int) -> SimplicialComplex:
    """Boundary of B(r, m): the ridges lying in exactly one facet."""
    ball = switch_ball(r, m)
    counts: Dict[int, int] = {}
    for facet in ball.facet_masks:
        for v in face_of(facet):
            ridge = facet ^ (1 << v)
            counts[ridge] = counts.get(ridge, 0) + 1
    return SimplicialComplex.from_masks([ridge for ridge, c in counts.items() if c == 1], ball.labels)


klee_novik_B = switch_ball


# ------------------ Construction specs ------------------

ALIASES = {
    "bnd-switch-ball": "switch-ball",
    "bnd-klee-novik": "switch-ball",
    "klee-novik-B": "switch-ball",
    "stacked-sphere": "stacked",
    "cross": "cross-polytope",
}

POLYTOPAL_FAMILIES = {
    "simplex-boundary", "cross-polytope", "cyclic", "stacked",
    "stacked-cross-polytopal", "join-of-cycles", "cycle",
}

_PARAMETERS = ("d", "n", "r", "k", "m", "seed")


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    d: Optional[int] = None
    n: Optional[int] = None
    r: Optional[int] = None
    k: Optional[int] = None
    m: Optional[int] = None
    seed: Optional[int] = None
    base: Optional["ConstructionSpec"] = None
    parts: Tuple["ConstructionSpec", ...] = field(default_factory=tuple)

    def __post_init__(self):
        family = ALIASES.get(self.family, self.family)
        object.__setattr__(self, "family", family)

    @property
    def is_polytopal_boundary(self) -> bool:
        """True when the family is known to give boundaries of simplicial polytopes."""
        if self.family in POLYTOPAL_FAMILIES:
            return True
        if self.family == "barycentric":
            return self.base is not None and self.base.is_polytopal_boundary
        if self.family == "connected-sum":
            return bool(self.parts) and all(p.is_polytopal_boundary for p in self.parts)
        return False

    def _params(self) -> List[str]:
        return [f"{name}={getattr(self, name)}" for name in _PARAMETERS if getattr(self, name) is not None]

    def to_token(self) -> str:
        """Single-line form, e.g. ``cyclic d=4 n=7``."""
        words = [self.family] + self._params()
        if self.base is not None:
            words.append("of=" + self.base._compact())
        if self.parts:
            words.append("parts=" + ";".join(p._compact() for p in self.parts))
        return " ".join(words)

    def _compact(self) -> str:
        params = ",".join(self._params())
        return f"{self.family}:{params}" if params else self.family

    @classmethod
    def _from_compact(cls, text: str) -> "ConstructionSpec":
        family, _, params = text.partition(":")
        values = {}
        for item in filter(None, params.split(",")):
            key, _, value = item.partition("=")
            values[key] = value
        return cls._from_values(family, values)

    @classmethod
    def _from_values(cls, family: str, values: Dict[str, str]) -> "ConstructionSpec":
        kwargs: Dict[str, object] = {}
        for key, value in values.items():
            if key in _PARAMETERS:
                try:
                    kwargs[key] = int(value)
                except ValueError:
                    raise MalformedInputError(f"parameter {key} must be an integer, got {value!r}")
            elif key == "of":
                kwargs["base"] = cls._from_compact(value)
            elif key == "parts":
                kwargs["parts"] = tuple(cls._from_compact(p) for p in value.split(";") if p)
            else:
                raise MalformedInputError(f"unknown construction parameter {key!r}")
        return cls(family=family, **kwargs)

    @classmethod
    def from_token(cls, text: str) -> "ConstructionSpec":
        words = text.split()
        if not words:
            raise MalformedInputError("empty construction token")
        values = {}
        for word in words[1:]:
            key, sep, value = word.partition("=")
            if not sep:
                raise MalformedInputError(f"expected key=value, got {word!r}")
            values[key] = value
        return cls._from_values(words[0], values)


def _need(spec: ConstructionSpec, *names: str) -> List[int]:
    missing = [name for name in names if getattr(spec, name) is None]
    if missing:
        raise DomainError(f"{spec.family} needs parameters: {', '.join(missing)}")
    return [getattr(spec, name) for name in names]


def build(spec: ConstructionSpec) -> SimplicialComplex:
    family = spec.family
    logger.debug("building %s", spec.to_token())
    if family == "simplex":
        return simplex(*_need(spec, "d"))
    if family == "simplex-boundary":
        return simplex_boundary(*_need(spec, "d"))
    if family == "cross-polytope":
        return cross_polytope_boundary(*_need(spec, "d"))
    if family == "cycle":
        return cycle(*_need(spec, "n"))
    if family == "cyclic":
        return cyclic_boundary(*_need(spec, "d", "n"))
    if family == "stacked":
        n, d = _need(spec, "n", "d")
        return stacked_sphere(n, d, spec.seed)
    if family == "stacked-ball":
        n, d = _need(spec, "n", "d")
        return stacked_ball(n, d, spec.seed)
    if family == "stacked-cross-polytopal":
        return stacked_cross_polytopal(*_need(spec, "k", "d"))
    if family == "barycentric":
        base = spec.base
        if base is None:
            base = ConstructionSpec("simplex-boundary", d=_need(spec, "d")[0])
        return barycentric_subdivision(build(base))
    if family == "join-of-cycles":
        return join_of_cycles(*_need(spec, "k", "n"))
    if family == "switch-ball":
        return switch_ball(*_need(spec, "r", "m"))
    if family == "switch-ball-boundary":
        return switch_ball_boundary(*_need(spec, "r", "m"))
    if family == "connected-sum":
        if not spec.parts:
            raise DomainError("connected-sum needs at least one part")
        result = build(spec.parts[0])
        for part in spec.parts[1:]:
            piece = build(part)
            result = connected_sum(result, piece, result.facets[-1], piece.facets[0])
        return result
    raise DomainError(f"unknown construction family {family!r}")


def with_boundary_flag(spec: ConstructionSpec) -> ConstructionSpec:
    """The boundary variant of a ball family."""
    if spec.family == "switch-ball":
        return replace(spec, family="switch-ball-boundary")
    if spec.family == "stacked-ball":
        return replace(spec, family="stacked")
    if spec.family == "simplex":
        return replace(spec, family="simplex-boundary")
    raise DomainError(f"{spec.family} has no boundary variant")
