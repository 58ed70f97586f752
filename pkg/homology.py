"""
Reduced simplicial homology over a field.

Betti numbers come from ranks of the augmented boundary maps; nothing here
computes torsion.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

import networkx as nx
import numpy as np

import linalg
from complex_core import IndexedVector, SimplicialComplex, f_vector, face_of, submasks
from config import FACENUM_CONFIG
from errors import DomainError, InternalConsistencyError, MalformedInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: GF(p) for a prime p < 2^31, or the rationals (characteristic 0)."""
    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p >= linalg.MAX_PRIME or not linalg.is_prime(p)):
            raise DomainError(f"GF({p}) is not a prime field below 2^31")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, token: str) -> "FieldSpec":
        """Parse ``q``, ``2``, ``3`` or ``p:<prime>``."""
        raw = token.strip().lower()
        if raw in ("q", "qq", "rationals"):
            return cls.rationals()
        if raw.startswith("p:"):
            raw = raw[2:]
        if raw.startswith("gf(") and raw.endswith(")"):
            raw = raw[3:-1]
        try:
            return cls.gf(int(raw))
        except ValueError:
            raise MalformedInputError(f"unrecognised field {token!r}")

    @classmethod
    def default(cls) -> "FieldSpec":
        return cls.parse(FACENUM_CONFIG['default_field'])

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def label(self) -> str:
        return "Q" if self.is_rational else f"GF({self.characteristic})"

    def rank(self, matrix: np.ndarray) -> int:
        return linalg.integer_rank(matrix, self.characteristic)

    def __str__(self) -> str:
        return self.label


class BettiVector(IndexedVector):
    """Reduced Betti numbers β_{-1}..β_{d-1}."""

    def __init__(self, entries: Iterable[int]):
        super().__init__(-1, tuple(entries))


# ------------------ Boundary matrices ------------------

def _boundary_from_masks(columns: Sequence[int], rows: Sequence[int]) -> np.ndarray:
    row_index = {m: i for i, m in enumerate(rows)}
    matrix = np.zeros((len(rows), len(columns)), dtype=np.int64)
    for c, face in enumerate(columns):
        for position, v in enumerate(face_of(face)):
            matrix[row_index[face ^ (1 << v)], c] = -1 if position % 2 else 1
    return matrix


def boundary_matrix(delta: SimplicialComplex, k: int, field: Optional[FieldSpec] = None):
    """
    The augmented boundary map from k-faces to (k-1)-faces.

    Without a field the integer matrix is returned. With GF(p) the result is
    a galois FieldArray; with the rationals a sympy DomainMatrix over ZZ.
    """
    if delta.is_void or not 0 <= k <= delta.dim:
        raise DomainError(f"boundary map in degree {k} out of range")
    by_size = delta.face_masks_by_size
    matrix = _boundary_from_masks(by_size.get(k + 1, []), by_size.get(k, []))
    if field is None:
        return matrix
    if field.is_rational:
        return linalg.to_domain_matrix(matrix)
    return linalg.galois_field(field.characteristic)(np.mod(matrix, field.characteristic))


# ------------------ Betti numbers ------------------

def betti_of_masks(faces_by_size: Dict[int, List[int]], field: FieldSpec) -> List[int]:
    """
    Reduced Betti numbers β_{-1}..β_{top} of the complex whose faces are given.

    ``faces_by_size`` maps face cardinality to face masks and must contain
    the empty face under size 0.
    """
    top = max(size for size, masks in faces_by_size.items() if masks)
    ranks = {0: 0, top + 1: 0}
    for size in range(1, top + 1):
        columns = faces_by_size.get(size, [])
        rows = faces_by_size.get(size - 1, [])
        if not columns or not rows:
            ranks[size] = 0
            continue
        ranks[size] = field.rank(_boundary_from_masks(columns, rows))
    return [len(faces_by_size.get(size, [])) - ranks[size] - ranks[size + 1] for size in range(0, top + 1)]


def betti_of_facet_masks(facet_masks: Iterable[int], field: FieldSpec) -> List[int]:
    seen = set()
    for facet in facet_masks:
        seen.update(submasks(facet))
    by_size: Dict[int, List[int]] = {}
    for m in seen:
        by_size.setdefault(m.bit_count(), []).append(m)
    return betti_of_masks(by_size, field)


def reduced_betti(delta: SimplicialComplex, field: Optional[FieldSpec] = None) -> BettiVector:
    if delta.is_void:
        raise DomainError("homology of the void complex is undefined")
    field = field or FieldSpec.default()
    betti = BettiVector(betti_of_masks(delta.face_masks_by_size, field))
    chi = euler_characteristic(delta)
    alternating = sum(-b if i % 2 else b for i, b in betti.items())
    if alternating != chi:
        raise InternalConsistencyError(f"Euler-Poincaré mismatch: {alternating} != {chi}")
    logger.debug("betti %s over %s: %s", delta, field, betti.entries)
    return betti


def euler_characteristic(delta: SimplicialComplex) -> int:
    """Reduced Euler characteristic: sum of (-1)^{i-1} f_{i-1}."""
    f = f_vector(delta)
    return sum(-count if i % 2 else count for i, count in f.items())


def number_of_components(delta: SimplicialComplex) -> int:
    if delta.n == 0:
        return 0
    return nx.number_connected_components(delta.graph)


def is_orientable(delta: SimplicialComplex, field: Optional[FieldSpec] = None) -> bool:
    """
    True iff the top Betti number equals the number of components.

    Only defined on closed homology manifolds over the same field.
    """
    from classify import is_homology_manifold

    field = field or FieldSpec.default()
    if delta.is_void or not is_homology_manifold(delta, field):
        raise DomainError("orientability is only defined for closed homology manifolds")
    betti = reduced_betti(delta, field)
    top = betti[delta.dim]
    if delta.dim == 0:
        top += 1
    return top == number_of_components(delta)
