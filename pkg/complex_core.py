"""
Canonical finite simplicial complexes and their combinatorial face operations.

Faces are handled internally as vertex bitmasks (plain Python ints, so there
is no width limit on the vertex count) and exposed to callers as strictly
increasing tuples of vertex indices.
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from config import workers as configured_workers
from errors import DegenerateGluingError, DomainError, MalformedInputError

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]
Label = Hashable


# ------------------ Bitmask helpers ------------------

def mask_of(face: Iterable[int]) -> int:
    mask = 0
    for v in face:
        mask |= 1 << v
    return mask


def face_of(mask: int) -> Face:
    verts = []
    while mask:
        low = mask & -mask
        verts.append(low.bit_length() - 1)
        mask ^= low
    return tuple(verts)


def submasks(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask``, including ``mask`` itself and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def label_key(label: Label) -> tuple:
    """Sort key: integers numerically, then strings, then tuples recursively."""
    if isinstance(label, bool):
        return (3, repr(label))
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(part) for part in label))
    return (3, repr(label))


def parallel_map(fn: Callable[[Any], Any], items: Sequence[Any], max_workers: Optional[int] = None) -> List[Any]:
    """Map ``fn`` over ``items`` on a thread pool, preserving input order."""
    width = configured_workers() if max_workers is None else max_workers
    if width <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=width) as pool:
        return list(pool.map(fn, items))


# ------------------ Indexed vectors ------------------

@dataclass(frozen=True)
class IndexedVector:
    """An integer or rational sequence whose first entry has index ``start``."""
    start: int
    entries: tuple

    def __getitem__(self, index: int):
        offset = index - self.start
        if offset < 0 or offset >= len(self.entries):
            raise IndexError(f"index {index} outside {self.start}..{self.stop - 1}")
        return self.entries[offset]

    def get(self, index: int, default=0):
        offset = index - self.start
        if 0 <= offset < len(self.entries):
            return self.entries[offset]
        return default

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def stop(self) -> int:
        return self.start + len(self.entries)

    def indices(self) -> range:
        return range(self.start, self.stop)

    def items(self):
        return zip(self.indices(), self.entries)

    def to_list(self) -> list:
        return list(self.entries)


class FVector(IndexedVector):
    """Face numbers f_{-1}..f_{d-1}."""

    def __init__(self, entries: Iterable[int]):
        super().__init__(-1, tuple(entries))


# ------------------ The complex ------------------

@dataclass(frozen=True)
class SimplicialComplex:
    """
    An immutable simplicial complex on vertices 0..n-1.

    ``facet_masks`` is the canonical antichain of maximal faces sorted by
    their vertex tuples. No facets at all is the void complex; the single
    facet 0 is the empty complex {∅}.
    """
    n: int
    facet_masks: Tuple[int, ...]
    labels: Tuple[Label, ...] = ()
    coloring: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    # ---- constructors ----

    @classmethod
    def void(cls) -> "SimplicialComplex":
        return cls(0, ())

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(0, (0,))

    @classmethod
    def from_masks(cls, masks: Iterable[int], labels: Sequence[Label],
                   coloring: Optional[Sequence[int]] = None) -> "SimplicialComplex":
        """
        Build the canonical complex generated by ``masks``.

        The masks live in an index space whose vertex ``i`` carries
        ``labels[i]``; unused vertices are dropped and the survivors are
        renumbered in their existing order.
        """
        masks = set(masks)
        if not masks:
            return cls.void()
        support = 0
        for m in masks:
            support |= m
        old = face_of(support)
        remap = {o: i for i, o in enumerate(old)}
        renumbered = {mask_of(remap[v] for v in face_of(m)) for m in masks}
        facets = _maximal(renumbered)
        new_coloring = None
        if coloring is not None:
            new_coloring = tuple(coloring[o] for o in old)
        return cls(
            n=len(old),
            facet_masks=tuple(sorted(facets, key=face_of)),
            labels=tuple(labels[o] for o in old) if labels else tuple(range(len(old))),
            coloring=new_coloring,
        )

    # ---- basic data ----

    @property
    def is_void(self) -> bool:
        return not self.facet_masks

    @property
    def is_empty_complex(self) -> bool:
        return self.facet_masks == (0,)

    @cached_property
    def dim(self) -> Optional[int]:
        """Maximum face dimension; None for the void complex."""
        if self.is_void:
            return None
        return max(m.bit_count() for m in self.facet_masks) - 1

    @property
    def d(self) -> int:
        """dim + 1, the number of vertices of a largest face."""
        if self.is_void:
            raise DomainError("the void complex has no dimension")
        return self.dim + 1

    @property
    def facets(self) -> Tuple[Face, ...]:
        return tuple(face_of(m) for m in self.facet_masks)

    @cached_property
    def label_map(self) -> Dict[Label, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def face_masks_by_size(self) -> Dict[int, List[int]]:
        seen = set()
        for facet in self.facet_masks:
            seen.update(submasks(facet))
        by_size: Dict[int, List[int]] = {}
        for m in seen:
            by_size.setdefault(m.bit_count(), []).append(m)
        for size in by_size:
            by_size[size].sort(key=face_of)
        return by_size

    @cached_property
    def all_face_masks(self) -> frozenset:
        return frozenset(m for masks in self.face_masks_by_size.values() for m in masks)

    @cached_property
    def is_pure(self) -> bool:
        return len({m.bit_count() for m in self.facet_masks}) <= 1

    @cached_property
    def graph(self) -> nx.Graph:
        """The 1-skeleton as a networkx graph on all vertices."""
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(face_of(m) for m in self.face_masks_by_size.get(2, []))
        return g

    def contains(self, face: Iterable[int]) -> bool:
        return mask_of(face) in self.all_face_masks

    def faces(self, k: int) -> List[Face]:
        return [face_of(m) for m in self.face_masks_by_size.get(k + 1, [])]

    def label_face(self, face: Iterable[int]) -> tuple:
        return tuple(self.labels[v] for v in face)

    def with_coloring(self, coloring: Optional[Sequence[int]]) -> "SimplicialComplex":
        return SimplicialComplex(self.n, self.facet_masks, self.labels,
                                 tuple(coloring) if coloring is not None else None)

    def with_integer_labels(self) -> "SimplicialComplex":
        return SimplicialComplex(self.n, self.facet_masks, tuple(range(self.n)), self.coloring)

    def __repr__(self) -> str:
        if self.is_void:
            return "SimplicialComplex(void)"
        return f"SimplicialComplex(n={self.n}, dim={self.dim}, facets={len(self.facet_masks)})"


def _maximal(masks: Iterable[int]) -> List[int]:
    ordered = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: List[int] = []
    for m in ordered:
        if not any(m & ~k == 0 for k in kept if k.bit_count() > m.bit_count()):
            kept.append(m)
    return kept


# ------------------ Operations ------------------

def from_facets(raw_faces: Iterable[Iterable[Label]]) -> SimplicialComplex:
    """
    Intern arbitrary vertex labels and build the canonical complex.

    Labels are numbered in sorted order (integers numerically, strings
    lexicographically); non-maximal input faces are dropped. The label map
    is available as ``complex.label_map``.
    """
    faces = []
    for raw in raw_faces:
        verts = list(raw)
        if len(set(verts)) != len(verts):
            raise MalformedInputError(f"face {verts!r} repeats a vertex")
        faces.append(verts)
    labels = sorted({v for f in faces for v in f}, key=label_key)
    index = {label: i for i, label in enumerate(labels)}
    masks = [mask_of(index[v] for v in f) for f in faces]
    return SimplicialComplex.from_masks(masks, labels)


def all_faces(delta: SimplicialComplex, k: int) -> List[Face]:
    if delta.is_void:
        return []
    return delta.faces(k)


def f_vector(delta: SimplicialComplex) -> FVector:
    if delta.is_void:
        raise DomainError("f-vector of the void complex is undefined")
    by_size = delta.face_masks_by_size
    return FVector(len(by_size.get(size, [])) for size in range(delta.dim + 2))


def skeleton(delta: SimplicialComplex, k: int) -> SimplicialComplex:
    if delta.is_void or not 0 <= k <= delta.dim:
        raise DomainError(f"skeleton dimension {k} out of range")
    masks = []
    for facet in delta.facet_masks:
        if facet.bit_count() <= k + 1:
            masks.append(facet)
        else:
            masks.extend(mask_of(c) for c in itertools.combinations(face_of(facet), k + 1))
    return SimplicialComplex.from_masks(masks, delta.labels, delta.coloring)


def _require_face(delta: SimplicialComplex, face: Iterable[int]) -> int:
    mask = mask_of(face)
    if delta.is_void or mask not in delta.all_face_masks:
        raise DomainError(f"{tuple(face)} is not a face of {delta!r}")
    return mask


def star_masks(delta: SimplicialComplex, face_mask: int) -> List[int]:
    return [m for m in delta.facet_masks if m & face_mask == face_mask]


def link_masks(delta: SimplicialComplex, face_mask: int) -> List[int]:
    """Facets of the link of a face, in the parent's vertex numbering."""
    return [m ^ face_mask for m in star_masks(delta, face_mask)]


def star(delta: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    mask = _require_face(delta, face)
    return SimplicialComplex.from_masks(star_masks(delta, mask), delta.labels, delta.coloring)


def link(delta: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """The link re-interned over its own vertices; labels follow the parent."""
    mask = _require_face(delta, face)
    return SimplicialComplex.from_masks(link_masks(delta, mask), delta.labels, delta.coloring)


def induced(delta: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    wanted = mask_of(vertices)
    if delta.is_void:
        raise DomainError("induced subcomplex of the void complex")
    if wanted >> delta.n:
        raise DomainError("induced vertex set is not a subset of V(Δ)")
    return SimplicialComplex.from_masks({m & wanted for m in delta.facet_masks}, delta.labels, delta.coloring)


def disjoint_union(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    """Disjoint union with integer labels: second's vertices follow first's."""
    if first.is_void or second.is_void:
        raise DomainError("disjoint union needs nonvoid operands")
    masks = list(first.facet_masks) + [m << first.n for m in second.facet_masks]
    coloring = None
    if first.coloring is not None and second.coloring is not None:
        coloring = first.coloring + second.coloring
    return SimplicialComplex.from_masks(masks, list(range(first.n + second.n)), coloring)


def join(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    """
    Join over disjoint vertex sets.

    The result is labelled by integers: first's vertex i keeps i, second's
    vertex j becomes first.n + j. Attached colorings are combined with the
    second operand's colors shifted past the first's.
    """
    if first.is_void or second.is_void:
        raise DomainError("join needs nonvoid operands")
    masks = [a | (b << first.n) for a in first.facet_masks for b in second.facet_masks]
    coloring = None
    if first.coloring is not None and second.coloring is not None:
        shift = first.dim + 1
        coloring = first.coloring + tuple(c + shift for c in second.coloring)
    return SimplicialComplex.from_masks(masks, list(range(first.n + second.n)), coloring)


def cone(delta: SimplicialComplex) -> SimplicialComplex:
    apex = SimplicialComplex(1, (1,), (0,), (0,))
    return join(delta, apex)


def suspension(delta: SimplicialComplex) -> SimplicialComplex:
    poles = SimplicialComplex(2, (1, 2), (0, 1), (0, 0))
    return join(delta, poles)


def connected_sum(first: SimplicialComplex, second: SimplicialComplex,
                  facet_first: Sequence[int], facet_second: Sequence[int],
                  matching: Optional[Mapping[int, int]] = None) -> SimplicialComplex:
    """
    Glue two pure complexes of equal dimension along a facet of each.

    ``matching`` maps each vertex of ``facet_first`` to a vertex of
    ``facet_second``; by default the facets are matched in sorted order.
    The glued facet is removed. The result is labelled by integers: first's
    vertices keep their indices, second's unmatched vertices follow.
    """
    if first.is_void or second.is_void or not first.is_pure or not second.is_pure:
        raise DomainError("connected sum needs pure nonvoid complexes")
    if first.dim != second.dim:
        raise DomainError(f"dimension mismatch: {first.dim} vs {second.dim}")
    mask_first, mask_second = mask_of(facet_first), mask_of(facet_second)
    if mask_first not in first.facet_masks or mask_second not in second.facet_masks:
        raise DomainError("connected sum must glue along facets")
    face_first, face_second = face_of(mask_first), face_of(mask_second)
    if matching is None:
        matching = dict(zip(face_first, face_second))
    if sorted(matching) != list(face_first) or sorted(matching.values()) != list(face_second):
        raise DomainError("matching must be a bijection between the two facets")

    remap: Dict[int, int] = {w: v for v, w in matching.items()}
    next_index = first.n
    for w in range(second.n):
        if w not in remap:
            remap[w] = next_index
            next_index += 1

    kept_first = [m for m in first.facet_masks if m != mask_first]
    moved_second = [mask_of(remap[w] for w in face_of(m)) for m in second.facet_masks if m != mask_second]
    if set(kept_first) & set(moved_second):
        raise DegenerateGluingError("gluing identifies two facets")

    coloring = None
    if first.coloring is not None and second.coloring is not None:
        if all(first.coloring[v] == second.coloring[w] for v, w in matching.items()):
            merged = list(first.coloring) + [0] * (next_index - first.n)
            for w, v in remap.items():
                if v >= first.n:
                    merged[v] = second.coloring[w]
            coloring = tuple(merged)
    result = SimplicialComplex.from_masks(kept_first + moved_second, list(range(next_index)), coloring)
    if result.n != first.n + second.n - (first.dim + 1):
        raise DegenerateGluingError("gluing lost vertices")
    return result


def balanced_connected_sum(first: SimplicialComplex, second: SimplicialComplex,
                           facet_first: Sequence[int], facet_second: Sequence[int]) -> SimplicialComplex:
    """Connected sum whose matching pairs vertices of equal color."""
    if first.coloring is None or second.coloring is None:
        raise DomainError("balanced connected sum needs colored operands")
    by_color = {second.coloring[w]: w for w in facet_second}
    matching = {}
    for v in facet_first:
        color = first.coloring[v]
        if color not in by_color:
            raise DomainError(f"color {color} missing from the second facet")
        matching[v] = by_color[color]
    return connected_sum(first, second, facet_first, facet_second, matching)
