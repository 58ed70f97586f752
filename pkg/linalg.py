"""
Exact rank backends.

Integer matrices with small entries (boundary matrices, face-ring maps over
the integers) are ranked either over the rationals, with sympy's
fraction-free row reduction, or over a prime field with galois. Matrices that
already live in a galois field are ranked there directly.
"""
from __future__ import annotations

import logging
from functools import lru_cache

import galois
import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

MAX_PRIME = 2 ** 31


@lru_cache(maxsize=None)
def galois_field(order: int):
    """The galois FieldArray class of the given prime or prime-power order."""
    return galois.GF(order)


def is_prime(p: int) -> bool:
    return p >= 2 and galois.is_prime(p)


def _trim(matrix: np.ndarray) -> np.ndarray:
    """Drop all-zero rows and columns."""
    if matrix.size == 0:
        return matrix
    rows = np.any(matrix != 0, axis=1)
    cols = np.any(matrix != 0, axis=0)
    return matrix[rows][:, cols]


def rank_over_rationals(matrix: np.ndarray) -> int:
    """Rank over Q via fraction-free (Bareiss-style) elimination over ZZ."""
    trimmed = _trim(np.asarray(matrix, dtype=np.int64))
    if trimmed.size == 0:
        return 0
    rows, cols = trimmed.shape
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in trimmed.tolist()], (rows, cols), ZZ).to_sparse()
    _, _, pivots = dm.rref_den()
    return len(pivots)


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    trimmed = _trim(np.mod(np.asarray(matrix, dtype=np.int64), p))
    if trimmed.size == 0:
        return 0
    gf = galois_field(p)
    return int(np.linalg.matrix_rank(gf(trimmed)))


def rank_in_field(matrix) -> int:
    """Rank of a galois FieldArray; empty matrices have rank 0."""
    if matrix.size == 0:
        return 0
    return int(np.linalg.matrix_rank(matrix))


def integer_rank(matrix: np.ndarray, characteristic: int) -> int:
    if characteristic == 0:
        return rank_over_rationals(matrix)
    return rank_mod_p(matrix, characteristic)


def to_domain_matrix(matrix: np.ndarray) -> DomainMatrix:
    rows, cols = matrix.shape
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in matrix.tolist()], (rows, cols), ZZ)


def right_null_space(matrix, gf, cols: int):
    """Columns spanning {x : matrix @ x = 0}; ``cols`` fixes the width when ``matrix`` has no rows."""
    if matrix.shape[0] == 0 or not matrix.view(np.ndarray).any():
        return gf.Identity(cols)
    basis = matrix.null_space()
    if basis.shape[0] == 0:
        return gf.Zeros((cols, 0))
    return basis.T


def matmul(left, right, gf):
    """Matrix product that tolerates empty operands."""
    if 0 in left.shape or 0 in right.shape:
        return gf.Zeros((left.shape[0], right.shape[1]))
    return left @ right


def concatenate(parts, gf, axis: int, shape):
    """Concatenate galois arrays, returning a zero array of ``shape`` when there is nothing to join."""
    parts = [p for p in parts if p.size]
    if not parts:
        return gf.Zeros(shape)
    return gf(np.concatenate([p.view(np.ndarray) for p in parts], axis=axis))
