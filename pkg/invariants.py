"""
Enumerative invariants: f/h transforms, g, h', h'', g~, gamma, short h, sigma, mu,
and the two Dehn-Sommerville residuals.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from complex_core import (FVector, IndexedVector, SimplicialComplex, f_vector, face_of, link,
                          parallel_map)
from config import FACENUM_CONFIG, workers
from errors import DomainError, InternalConsistencyError, NotEulerianError, ResourceCapError
from homology import BettiVector, FieldSpec, betti_of_masks, euler_characteristic, reduced_betti

logger = logging.getLogger(__name__)


class HVector(IndexedVector):
    """h_0..h_d."""

    def __init__(self, entries: Iterable[int]):
        super().__init__(0, tuple(entries))

    @property
    def d(self) -> int:
        return len(self.entries) - 1


class GammaVector(IndexedVector):
    def __init__(self, entries: Iterable[int]):
        super().__init__(0, tuple(entries))


class RationalVector(IndexedVector):
    """Exact rationals with an arbitrary starting index."""

    def __init__(self, start: int, entries: Iterable[Fraction]):
        super().__init__(start, tuple(Fraction(x) for x in entries))


@dataclass(frozen=True)
class CorrectedHVectors:
    h_prime: Tuple[int, ...]
    h_double_prime: Tuple[int, ...]
    tilde_g: Tuple[int, ...]
    field: FieldSpec

    @property
    def g_double_prime(self) -> Tuple[int, ...]:
        h2 = self.h_double_prime
        half = (len(h2) - 1) // 2
        return tuple(h2[j] - (h2[j - 1] if j else 0) for j in range(half + 1))


@dataclass(frozen=True)
class MuSigma:
    sigma: RationalVector  # σ_{-1}..σ_{d-1}
    mu: RationalVector  # μ_0..μ_{d-1}
    field: FieldSpec
    isolated_vertices: Tuple[int, ...] = ()


# ------------------ f and h ------------------

def h_from_f(f: FVector, d: Optional[int] = None) -> HVector:
    """h_j = sum_{i<=j} (-1)^{j-i} C(d-i, d-j) f_{i-1}."""
    entries = list(f)
    if d is None:
        d = len(entries) - 1
    if len(entries) != d + 1:
        raise DomainError(f"f-vector has {len(entries)} entries, expected {d + 1}")
    return HVector(
        sum((-1) ** (j - i) * comb(d - i, d - j) * entries[i] for i in range(j + 1))
        for j in range(d + 1)
    )


def f_from_h(h: HVector) -> FVector:
    entries = list(h)
    d = len(entries) - 1
    return FVector(sum(comb(d - j, d - i) * entries[j] for j in range(i + 1)) for i in range(d + 1))


def h_vector(delta: SimplicialComplex) -> HVector:
    return h_from_f(f_vector(delta))


def g_vector(h: HVector) -> Tuple[int, ...]:
    """g_0..g_{floor(d/2)} with g_j = h_j - h_{j-1}."""
    entries = list(h)
    d = len(entries) - 1
    return tuple(entries[j] - (entries[j - 1] if j else 0) for j in range(d // 2 + 1))


def g_numbers(h: HVector, upto: int) -> Tuple[int, ...]:
    """g_0..g_upto over the whole range, with h_i = 0 outside 0..d."""
    entries = list(h)

    def at(i: int) -> int:
        return entries[i] if 0 <= i < len(entries) else 0

    return tuple(at(j) - at(j - 1) for j in range(upto + 1))


# ------------------ Betti-corrected h-numbers ------------------

def _betti_for(delta: SimplicialComplex, field: Optional[FieldSpec],
               betti: Optional[BettiVector]) -> BettiVector:
    return betti if betti is not None else reduced_betti(delta, field)


def h_prime(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
            betti: Optional[BettiVector] = None) -> Tuple[int, ...]:
    betti = _betti_for(delta, field, betti)
    h = list(h_vector(delta))
    d = len(h) - 1
    return tuple(
        h[j] + comb(d, j) * sum((-1) ** (j - i - 1) * betti.get(i - 1) for i in range(1, j))
        for j in range(d + 1)
    )


def h_double_prime(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
                   betti: Optional[BettiVector] = None) -> Tuple[int, ...]:
    betti = _betti_for(delta, field, betti)
    h = list(h_vector(delta))
    d = len(h) - 1
    values = [
        h[j] - comb(d, j) * sum((-1) ** (j - i) * betti.get(i - 1) for i in range(j + 1))
        for j in range(d)
    ]
    values.append(betti.get(d - 1))
    return tuple(values)


def tilde_g(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
            betti: Optional[BettiVector] = None) -> Tuple[int, ...]:
    """g~_r for r <= floor(d/2), cross-checked against its h''-expression."""
    betti = _betti_for(delta, field, betti)
    h = h_vector(delta)
    d = h.d
    if d < 2:
        raise DomainError("g~ needs d >= 2")
    g = g_vector(h)
    h2 = h_double_prime(delta, field, betti)
    values = []
    for r in range(d // 2 + 1):
        direct = g[r] - comb(d + 1, r) * sum((-1) ** (r - j) * betti.get(j - 1) for j in range(1, r + 1))
        if r >= 1:
            via_h2 = h2[r] - h2[r - 1] - comb(d, r - 1) * betti.get(r - 1)
            if via_h2 != direct:
                raise InternalConsistencyError(f"g~_{r}: {direct} != {via_h2}")
        values.append(direct)
    return tuple(values)


def corrected_h_vectors(delta: SimplicialComplex, field: Optional[FieldSpec] = None) -> CorrectedHVectors:
    field = field or FieldSpec.default()
    betti = reduced_betti(delta, field)
    return CorrectedHVectors(
        h_prime=h_prime(delta, field, betti),
        h_double_prime=h_double_prime(delta, field, betti),
        tilde_g=tilde_g(delta, field, betti) if delta.dim >= 1 else (),
        field=field,
    )


# ------------------ gamma ------------------

def gamma_vector(h: HVector) -> GammaVector:
    entries = list(h)
    d = len(entries) - 1
    if entries != entries[::-1]:
        raise NotEulerianError(f"h = {tuple(entries)} is not palindromic")
    remainder = entries[:]
    gamma = []
    for i in range(d // 2 + 1):
        coefficient = remainder[i]
        gamma.append(coefficient)
        for k in range(d - 2 * i + 1):
            remainder[i + k] -= coefficient * comb(d - 2 * i, k)
    if any(remainder):
        raise InternalConsistencyError(f"gamma expansion left {remainder}")
    return GammaVector(gamma)


def gamma_to_h(gamma: GammaVector, d: int) -> HVector:
    entries = [0] * (d + 1)
    for i, coefficient in gamma.items():
        for k in range(d - 2 * i + 1):
            entries[i + k] += coefficient * comb(d - 2 * i, k)
    return HVector(entries)


# ------------------ short h ------------------

def short_h(delta: SimplicialComplex) -> Tuple[int, ...]:
    """Sum of the h-vectors of all vertex links."""
    if delta.is_void or not delta.is_pure:
        raise DomainError("short h-vector needs a pure complex")
    d = delta.dim + 1
    totals = [0] * d
    for v in range(delta.n):
        h = h_from_f(f_vector(link(delta, (v,))), d - 1)
        for i, value in enumerate(h):
            totals[i] += value
    return tuple(totals)


def short_h_coefficients(d: int) -> List[List[Fraction]]:
    """
    Row i holds the coefficients expressing f_i in terms of short h.

    Each vertex link has dimension d - 2 and every i-face has i + 1 vertices,
    so f_i = (1/(i+1)) sum_j C(d-1-j, i-j) short_h_j.
    """
    return [
        [Fraction(comb(d - 1 - j, i - j), i + 1) if j <= i else Fraction(0) for j in range(d)]
        for i in range(d)
    ]


def f_from_short_h(values: Sequence[int]) -> Tuple[int, ...]:
    d = len(values)
    rows = short_h_coefficients(d)
    result = []
    for row in rows:
        total = sum(c * v for c, v in zip(row, values))
        if total.denominator != 1:
            raise InternalConsistencyError(f"non-integral face number {total}")
        result.append(int(total))
    return tuple(result)


# ------------------ sigma and mu ------------------

def _cap_check(n: int, cap: Optional[int], what: str) -> None:
    limit = FACENUM_CONFIG['mu_vertex_cap'] if cap is None else cap
    if n > limit:
        raise ResourceCapError(
            f"{what} needs 2^{n} = {2 ** n} induced homology computations; vertex cap is {limit}",
            cap=limit, size=n)


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def _gray_block(delta: SimplicialComplex, field: FieldSpec, start: int, stop: int) -> Counter:
    """
    Betti sums over induced subcomplexes for Gray-code positions start..stop-1.

    Keys are (|W|, j) and values sum beta_j(Delta_W).
    """
    containing: List[List[int]] = [[] for _ in range(delta.n)]
    all_faces = [m for m in delta.all_face_masks if m]
    for m in all_faces:
        for v in face_of(m):
            containing[v].append(m)
    subset = _gray(start)
    current = {0} | {m for m in all_faces if m & ~subset == 0}
    sums: Counter = Counter()

    def record() -> None:
        by_size: Dict[int, List[int]] = {}
        for m in current:
            by_size.setdefault(m.bit_count(), []).append(m)
        size = subset.bit_count()
        for j, value in enumerate(betti_of_masks(by_size, field), start=-1):
            if value:
                sums[(size, j)] += value

    record()
    for i in range(start + 1, stop):
        v = (i & -i).bit_length() - 1
        subset ^= 1 << v
        if subset >> v & 1:
            current.update(m for m in containing[v] if m & ~subset == 0)
        else:
            current.difference_update(containing[v])
        record()
    return sums


def induced_betti_sums(delta: SimplicialComplex, field: FieldSpec,
                       max_workers: Optional[int] = None) -> Counter:
    total = 1 << delta.n
    width = workers() if max_workers is None else max_workers
    blocks = max(1, min(width * 4, total // 64 or 1))
    bounds = [(total * b // blocks, total * (b + 1) // blocks) for b in range(blocks)]
    merged: Counter = Counter()
    for part in parallel_map(lambda span: _gray_block(delta, field, *span), bounds, width):
        merged.update(part)
    return merged


def sigma_vector(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
                 cap: Optional[int] = None) -> RationalVector:
    """sigma_j = sum over W of beta_j(Delta_W) / C(n, |W|), for j = -1..d-1."""
    field = field or FieldSpec.default()
    if delta.is_void:
        raise DomainError("sigma of the void complex")
    _cap_check(delta.n, cap, "sigma")
    sums = induced_betti_sums(delta, field)
    n = delta.n
    top = delta.dim
    return RationalVector(-1, (
        sum((Fraction(value, comb(n, size)) for (size, jj), value in sums.items() if jj == j), Fraction(0))
        for j in range(-1, top + 1)
    ))


def mu_sigma(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
             cap: Optional[int] = None) -> MuSigma:
    field = field or FieldSpec.default()
    if delta.is_void:
        raise DomainError("mu of the void complex")
    _cap_check(delta.n, cap, "mu")
    sigma = sigma_vector(delta, field, cap)
    d = delta.dim + 1
    mu = [Fraction(0)] * d
    isolated = []
    for v in range(delta.n):
        lk = link(delta, (v,))
        if lk.is_empty_complex:
            isolated.append(v)
        lk_sigma = sigma_vector(lk, field, cap)
        weight = lk.n + 1
        for j in range(d):
            mu[j] += lk_sigma.get(j - 1, Fraction(0)) / weight
    if isolated:
        logger.warning("isolated vertices %s contribute sigma_{-1}({∅}) = 1 to mu_0", isolated)
    return MuSigma(sigma=sigma, mu=RationalVector(0, mu), field=field, isolated_vertices=tuple(isolated))


def mu_vector(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
              cap: Optional[int] = None) -> RationalVector:
    return mu_sigma(delta, field, cap).mu


# ------------------ Dehn-Sommerville ------------------

def dehn_sommerville_residual(delta: SimplicialComplex, field: Optional[FieldSpec] = None) -> Tuple[int, ...]:
    """(h_{d-j} - h_j) - (-1)^j C(d,j) [chi~ - (-1)^{d-1}] for j = 0..d."""
    if delta.is_void:
        raise DomainError("Dehn-Sommerville residual of the void complex")
    h = list(h_vector(delta))
    d = len(h) - 1
    chi = euler_characteristic(delta)
    sphere_chi = (-1) ** (d - 1) if d >= 1 else -1
    return tuple((h[d - j] - h[j]) - (-1) ** j * comb(d, j) * (chi - sphere_chi) for j in range(d + 1))


def ds_boundary_residual(delta: SimplicialComplex, field: Optional[FieldSpec] = None) -> Tuple[int, ...]:
    """h_{d-i} - h_i - C(d,i)(-1)^{d-i-1} chi~ + g_i(boundary) for i = 0..d."""
    from classify import BALL, link_profiles, boundary_complex

    field = field or FieldSpec.default()
    if delta.is_void:
        raise DomainError("boundary residual of the void complex")
    profiles = link_profiles(delta, field)
    if not any(p.kind == BALL for p in profiles.values()):
        raise DomainError("boundary Dehn-Sommerville needs a homology manifold with boundary")
    boundary = boundary_complex(delta, field)
    h = list(h_vector(delta))
    d = len(h) - 1
    chi = euler_characteristic(delta)
    g_boundary = g_numbers(h_vector(boundary), d)
    return tuple(
        h[d - i] - h[i] - comb(d, i) * (-1 if (d - i - 1) % 2 else 1) * chi + g_boundary[i]
        for i in range(d + 1)
    )
