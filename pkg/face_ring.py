"""
Linear-algebra models of the Stanley-Reisner ring k[Δ].

Graded pieces are spanned by monomials whose support is a face. Artinian
reductions k(Δ; Θ) = k[Δ]/(Θ) are handled degree by degree as quotients of
those spans: the ideal (Θ)_j is the row space of the stacked multiplication
matrices ×θ_s: k[Δ]_{j-1} → k[Δ]_j, and a quotient class is read off through
a basis of the annihilator of that row space. Everything is exact over a
galois field; ℚ is probed over a large prime.

Graded Betti numbers come from Hochster's formula with the generators of the
Stanley-Reisner ideal at homological index 1.
"""
from __future__ import annotations

import itertools
import logging
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import linalg
from classify import balanced_coloring
from complex_core import SimplicialComplex, face_of, parallel_map
from config import FACENUM_CONFIG
from errors import DomainError, ResourceCapError, UnluckyFieldError
from homology import FieldSpec, betti_of_facet_masks
from invariants import HVector, RationalVector

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]  # vertex multiset, sorted


# ------------------ Monomial bases ------------------

@dataclass(frozen=True)
class MonomialBasis:
    """Degree-``degree`` monomials of k[Δ], stored as sorted vertex multisets."""
    degree: int
    n: int
    monomials: Tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def exponent_vectors(self) -> List[Tuple[int, ...]]:
        vectors = []
        for m in self.monomials:
            exps = [0] * self.n
            for v in m:
                exps[v] += 1
            vectors.append(tuple(exps))
        return vectors


def monomial_basis(delta: SimplicialComplex, degree: int) -> MonomialBasis:
    if degree < 0:
        raise DomainError("degree must be >= 0")
    if delta.is_void:
        raise DomainError("the void complex has no face ring")
    if degree == 0:
        return MonomialBasis(0, delta.n, ((),))
    monomials = []
    for size in range(1, degree + 1):
        for mask in delta.face_masks_by_size.get(size, []):
            support = face_of(mask)
            for extra in itertools.combinations_with_replacement(support, degree - size):
                monomials.append(tuple(sorted(support + extra)))
    monomials.sort()
    return MonomialBasis(degree, delta.n, tuple(monomials))


def face_ring_dimension(delta: SimplicialComplex, degree: int) -> int:
    """dim k[Δ]_i = sum over nonempty faces F of C(i-1, |F|-1)."""
    if degree == 0:
        return 1
    by_size = delta.face_masks_by_size
    return sum(len(by_size.get(size, [])) * comb(degree - 1, size - 1) for size in range(1, degree + 1))


def hilbert_series_coefficient(h: HVector, degree: int) -> int:
    """Coefficient of t^i in h(t) / (1 - t)^d."""
    entries = list(h)
    d = len(entries) - 1
    if degree < 0:
        return 0
    if d == 0:
        return entries[0] if degree == 0 else 0
    return sum(entries[j] * comb(degree - j + d - 1, d - 1) for j in range(min(d, degree) + 1))


# ------------------ Linear systems of parameters ------------------

def ring_field_order(field: FieldSpec, extend: bool = True) -> int:
    """
    Order of the field the ring computations run in.

    ℚ is probed over the configured prime. A small prime p is replaced by
    GF(p^e), the smallest extension with at least the configured number of
    elements, unless ``extend`` is off.
    """
    if field.is_rational:
        return FACENUM_CONFIG['probe_prime']
    p = field.characteristic
    minimum = FACENUM_CONFIG['lsop_min_field_size']
    if not extend or p >= minimum:
        return p
    exponent = 1
    while p ** exponent < minimum:
        exponent += 1
    return p ** exponent


def field_label(order: int) -> str:
    gf = linalg.galois_field(order)
    if gf.degree == 1:
        return f"GF({order})"
    return f"GF({gf.characteristic}^{gf.degree})"


@dataclass(frozen=True)
class LinearSystem:
    """d linear forms θ_1..θ_d and an optional extra form ω over GF(order)."""
    field: FieldSpec
    order: int
    theta: Tuple[Tuple[int, ...], ...]
    omega: Optional[Tuple[int, ...]] = None
    seed: Optional[int] = None
    attempts: int = 1
    colored: bool = False

    @property
    def gf(self):
        return linalg.galois_field(self.order)

    @property
    def label(self) -> str:
        return field_label(self.order)

    def theta_array(self):
        return self.gf(np.array(self.theta, dtype=np.int64).reshape(len(self.theta), -1))

    def omega_array(self):
        if self.omega is None:
            raise DomainError("this linear system carries no ω")
        return self.gf(np.array(self.omega, dtype=np.int64))


def _is_lsop(theta, delta: SimplicialComplex) -> bool:
    """Restriction criterion: on every facet F the columns of Θ have rank |F|."""
    for facet in delta.facet_masks:
        columns = list(face_of(facet))
        if not columns:
            continue
        if linalg.rank_in_field(theta[:, columns]) != len(columns):
            return False
    return True


def _as_ints(array) -> Tuple:
    return tuple(array.view(np.ndarray).astype(np.int64).tolist())


def random_lsop(delta: SimplicialComplex, field: Optional[FieldSpec] = None, seed: Optional[int] = None,
                extend: bool = True, attempts: Optional[int] = None) -> LinearSystem:
    """
    Draw d uniformly random linear forms and verify they form an l.s.o.p.

    A random ω is drawn alongside. Raises UnluckyFieldError when every
    draw fails the facet-rank test.
    """
    field = field or FieldSpec.default()
    if delta.is_void or delta.is_empty_complex:
        raise DomainError("an l.s.o.p. needs a complex with vertices")
    order = ring_field_order(field, extend)
    gf = linalg.galois_field(order)
    budget = FACENUM_CONFIG['lsop_max_attempts'] if attempts is None else attempts
    seed = FACENUM_CONFIG['default_seed'] if seed is None else seed
    rng = np.random.default_rng(seed)
    d = delta.d
    for attempt in range(1, budget + 1):
        theta = gf.Random((d, delta.n), seed=rng)
        omega = gf.Random(delta.n, seed=rng)
        if _is_lsop(theta, delta):
            logger.debug("l.s.o.p. over %s found on draw %d", field_label(order), attempt)
            return LinearSystem(field, order, tuple(_as_ints(row) for row in theta), _as_ints(omega),
                                seed, attempt)
        logger.warning("draw %d over %s is not an l.s.o.p.", attempt, field_label(order))
    raise UnluckyFieldError(f"no l.s.o.p. over {field_label(order)} in {budget} draws")


def colored_lsop(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
                 seed: Optional[int] = None, extend: bool = True) -> LinearSystem:
    """θ_c = sum of the variables of color c, for a balanced complex."""
    field = field or FieldSpec.default()
    coloring = balanced_coloring(delta)
    if coloring is None:
        raise DomainError("colored l.s.o.p. needs a balanced complex")
    order = ring_field_order(field, extend)
    gf = linalg.galois_field(order)
    theta = np.zeros((delta.d, delta.n), dtype=np.int64)
    for v, color in enumerate(coloring.colors):
        theta[color, v] = 1
    if not _is_lsop(gf(theta), delta):
        raise DomainError("color classes do not give an l.s.o.p.")
    seed = FACENUM_CONFIG['default_seed'] if seed is None else seed
    omega = gf.Random(delta.n, seed=np.random.default_rng(seed))
    return LinearSystem(field, order, tuple(tuple(row) for row in theta.tolist()), _as_ints(omega),
                        seed, 1, colored=True)


# ------------------ Artinian reductions ------------------

class ArtinianReduction:
    """k(Δ; Θ) in degrees 0..top."""

    def __init__(self, delta: SimplicialComplex, system: LinearSystem, top: Optional[int] = None):
        if len(system.theta) != delta.d:
            raise DomainError(f"expected {delta.d} forms, got {len(system.theta)}")
        self.delta = delta
        self.system = system
        self.gf = system.gf
        self.top = delta.d + 1 if top is None else top
        self.bases = [monomial_basis(delta, j) for j in range(self.top + 1)]
        self._index = [{m: r for r, m in enumerate(b.monomials)} for b in self.bases]
        self._theta = system.theta_array()
        self._shifts: Dict[int, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        self._ideals: Dict[int, object] = {}
        self._annihilators: Dict[int, object] = {}

    def _shift(self, j: int):
        """Nonzero pattern of x_v: k[Δ]_j → k[Δ]_{j+1} as (rows, cols, vertices)."""
        if j not in self._shifts:
            target = self._index[j + 1]
            rows, cols, verts = [], [], []
            for r, m in enumerate(self.bases[j].monomials):
                for v in range(self.delta.n):
                    col = target.get(tuple(sorted(m + (v,))))
                    if col is not None:
                        rows.append(r)
                        cols.append(col)
                        verts.append(v)
            self._shifts[j] = (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64),
                               np.array(verts, dtype=np.int64))
        return self._shifts[j]

    def multiplication(self, j: int, form):
        """Matrix of ×form: k[Δ]_j → k[Δ]_{j+1} acting on row vectors."""
        matrix = self.gf.Zeros((len(self.bases[j]), len(self.bases[j + 1])))
        rows, cols, verts = self._shift(j)
        if rows.size:
            matrix[rows, cols] = form[verts]
        return matrix

    def variable(self, j: int, v: int):
        unit = self.gf.Zeros(self.delta.n)
        unit[v] = 1
        return self.multiplication(j, unit)

    def ideal(self, j: int):
        """Rows spanning (Θ)_j inside k[Δ]_j."""
        if j not in self._ideals:
            width = len(self.bases[j])
            if j == 0:
                self._ideals[j] = self.gf.Zeros((0, width))
            else:
                parts = [self.multiplication(j - 1, self._theta[s]) for s in range(self._theta.shape[0])]
                self._ideals[j] = linalg.concatenate(parts, self.gf, 0, (0, width))
        return self._ideals[j]

    def annihilator(self, j: int):
        """Columns c with v ∈ (Θ)_j iff v @ c = 0."""
        if j not in self._annihilators:
            self._annihilators[j] = linalg.right_null_space(self.ideal(j), self.gf, len(self.bases[j]))
        return self._annihilators[j]

    def dimension(self, j: int) -> int:
        if j > self.top:
            raise DomainError(f"degree {j} beyond the modelled range 0..{self.top}")
        return len(self.bases[j]) - linalg.rank_in_field(self.ideal(j))

    def hilbert(self) -> Tuple[int, ...]:
        return tuple(parallel_map(self.dimension, list(range(self.top + 1))))

    def map_rank(self, j: int, form, power: int = 1) -> int:
        """Rank of ×form^power: k(Δ)_j → k(Δ)_{j+power}."""
        product = self.gf.Identity(len(self.bases[j]))
        for step in range(power):
            product = linalg.matmul(product, self.multiplication(j + step, form), self.gf)
        return linalg.rank_in_field(linalg.matmul(product, self.annihilator(j + power), self.gf))

    def socle_dimension(self, j: int) -> int:
        """dim of {f ∈ k(Δ)_j : x_v f = 0 for all v} via one stacked kernel."""
        rows = len(self.bases[j])
        quotient = self.annihilator(j + 1)
        parts = [linalg.matmul(self.variable(j, v), quotient, self.gf) for v in range(self.delta.n)]
        stacked = linalg.concatenate(parts, self.gf, 1, (rows, 0))
        return rows - linalg.rank_in_field(stacked) - linalg.rank_in_field(self.ideal(j))


def hilbert_artinian(delta: SimplicialComplex, system: LinearSystem,
                     max_degree: Optional[int] = None) -> Tuple[int, ...]:
    """dim k(Δ; Θ)_j for j = 0..max_degree (default d + 1)."""
    model = ArtinianReduction(delta, system, max_degree)
    dims = model.hilbert()
    logger.debug("Hilbert function over %s: %s", system.label, dims)
    return dims


def socle_dims(delta: SimplicialComplex, system: LinearSystem) -> Tuple[int, ...]:
    """dim Soc(k(Δ; Θ))_j for j = 0..d."""
    model = ArtinianReduction(delta, system)
    return tuple(model.socle_dimension(j) for j in range(delta.d + 1))


def gorenstein_quotient_dims(delta: SimplicialComplex, system: LinearSystem) -> Tuple[int, ...]:
    """Dimensions of k(Δ) modulo the socle below the top degree."""
    model = ArtinianReduction(delta, system)
    d = delta.d
    dims = [model.dimension(j) for j in range(d + 1)]
    return tuple(dims[j] - (model.socle_dimension(j) if 0 < j < d else 0) for j in range(d + 1))


# ------------------ Lefschetz probes ------------------

@dataclass(frozen=True)
class MapStatus:
    source: int
    target: int
    rank: int
    source_dim: int
    target_dim: int

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def status(self) -> str:
        if self.injective and self.surjective:
            return "bijective"
        if self.injective:
            return "injective"
        if self.surjective:
            return "surjective"
        return "neither"


@dataclass(frozen=True)
class LefschetzReport:
    field_label: str
    hilbert: Tuple[int, ...]
    weak: Tuple[MapStatus, ...]
    strong: Tuple[MapStatus, ...]
    seed: Optional[int] = None

    @property
    def has_wlp(self) -> bool:
        return all(m.injective or m.surjective for m in self.weak)

    @property
    def has_slp(self) -> bool:
        return all(m.injective and m.surjective for m in self.strong)


def wlp_probe(delta: SimplicialComplex, system: LinearSystem) -> LefschetzReport:
    """
    Ranks of ×ω: k(Δ)_i → k(Δ)_{i+1} for i < d, and of ×ω^{d-2j}:
    k(Δ)_j → k(Δ)_{d-j} for j <= d/2.
    """
    model = ArtinianReduction(delta, system)
    omega = system.omega_array()
    d = delta.d
    dims = model.hilbert()
    weak = tuple(MapStatus(i, i + 1, model.map_rank(i, omega), dims[i], dims[i + 1]) for i in range(d))
    strong = tuple(MapStatus(j, d - j, model.map_rank(j, omega, d - 2 * j), dims[j], dims[d - j])
                   for j in range(d // 2 + 1))
    return LefschetzReport(system.label, dims, weak, strong, system.seed)


@dataclass(frozen=True)
class LefschetzProbe:
    report: LefschetzReport
    attempts: int
    seeds: Tuple[int, ...]
    certified: bool

    @property
    def verdict(self) -> str:
        return "certified-modulo-probe" if self.certified else "not-certified"


def probe_lefschetz(delta: SimplicialComplex, field: Optional[FieldSpec] = None, seed: Optional[int] = None,
                    strong: bool = False, retries: Optional[int] = None) -> LefschetzProbe:
    """
    Probe the WLP (or SLP) with fresh random Θ and ω, redrawing after a
    rank-deficient result. Full rank over GF(p) for a lift of the forms
    certifies full rank over ℚ; a deficient result certifies nothing.
    """
    field = field or FieldSpec.default()
    budget = FACENUM_CONFIG['lefschetz_retries'] if retries is None else retries
    base = FACENUM_CONFIG['default_seed'] if seed is None else seed
    seeds = []
    report = None
    for attempt in range(budget):
        draw_seed = base + attempt
        seeds.append(draw_seed)
        report = wlp_probe(delta, random_lsop(delta, field, draw_seed))
        if report.has_slp if strong else report.has_wlp:
            return LefschetzProbe(report, attempt + 1, tuple(seeds), True)
        logger.info("Lefschetz probe with seed %d was rank deficient; redrawing", draw_seed)
    return LefschetzProbe(report, budget, tuple(seeds), False)


# ------------------ Graded Betti numbers ------------------

@dataclass(frozen=True)
class GradedBettiTable:
    """β_{i,j}(k[Δ]) for i >= 1; generators of the Stanley-Reisner ideal sit in row i = 1."""
    n: int
    dim: int
    field: FieldSpec
    entries: Tuple[Tuple[Tuple[int, int], int], ...] = ()

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.entries)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.as_dict().get(key, 0)

    def generators(self, degree: int) -> int:
        return self[(1, degree)]

    def projective_dimension(self) -> int:
        return max((i for (i, _), _v in self.entries), default=0)

    def murai_sigma(self) -> RationalVector:
        """σ_{j-1} = [j = 0] + sum_k β_{k-j,k} / C(n, k)."""
        values = []
        for j in range(0, self.dim + 2):
            total = Fraction(1 if j == 0 else 0)
            for (i, k), value in self.entries:
                if k - i == j:
                    total += Fraction(value, comb(self.n, k))
            values.append(total)
        return RationalVector(-1, values)


def _stratum(delta: SimplicialComplex, field: FieldSpec, size: int) -> Dict[Tuple[int, int], int]:
    sums: Dict[Tuple[int, int], int] = {}
    for chosen in itertools.combinations(range(delta.n), size):
        wanted = 0
        for v in chosen:
            wanted |= 1 << v
        betti = betti_of_facet_masks({f & wanted for f in delta.facet_masks}, field)
        for position, value in enumerate(betti):
            j = position  # betti[position] is β_{j-1}
            i = size - j
            if value and i >= 1:
                sums[(i, size)] = sums.get((i, size), 0) + value
    return sums


def graded_betti_hochster(delta: SimplicialComplex, field: Optional[FieldSpec] = None,
                          cap: Optional[int] = None) -> GradedBettiTable:
    """β_{i,i+j} = sum over |W| = i+j of β_{j-1}(Δ_W)."""
    field = field or FieldSpec.default()
    if delta.is_void:
        raise DomainError("graded Betti numbers of the void complex")
    limit = FACENUM_CONFIG['hochster_vertex_cap'] if cap is None else cap
    if delta.n > limit:
        raise ResourceCapError(
            f"Hochster's formula needs 2^{delta.n} = {2 ** delta.n} induced homology computations; "
            f"vertex cap is {limit}", cap=limit, size=delta.n)
    merged: Dict[Tuple[int, int], int] = {}
    for part in parallel_map(lambda size: _stratum(delta, field, size), list(range(delta.n + 1))):
        for key, value in part.items():
            merged[key] = merged.get(key, 0) + value
    return GradedBettiTable(delta.n, delta.dim, field, tuple(sorted(merged.items())))


# ------------------ Macaulay and Kruskal-Katona ------------------

def binomial_representation(m: int, i: int) -> List[Tuple[int, int]]:
    """Greedy m = C(a_i, i) + C(a_{i-1}, i-1) + ... with a_i > a_{i-1} > ... >= j >= 1."""
    if m < 0:
        raise DomainError(f"cannot decompose negative {m}")
    if i < 1:
        raise DomainError("binomial representation needs i >= 1")
    parts = []
    k = i
    while m > 0 and k >= 1:
        # comb(a, k) >= a - k + 1, so a < m + k
        a = k - 1 + bisect_right(range(k, m + k), m, key=lambda b: comb(b, k))
        parts.append((a, k))
        m -= comb(a, k)
        k -= 1
    return parts


def macaulay_next(m: int, i: int) -> int:
    """m^<i>: the Macaulay bound on the next entry of an M-sequence."""
    return sum(comb(a + 1, k + 1) for a, k in binomial_representation(m, i))


def kruskal_katona_bound(m: int, i: int) -> int:
    """Largest number of (i+1)-sets whose i-shadow can have m elements."""
    return sum(comb(a, k + 1) for a, k in binomial_representation(m, i))


def _nonnegative(values: List[int]) -> None:
    negative = [v for v in values if v < 0]
    if negative:
        raise DomainError(f"negative entries {negative} in {tuple(values)}")


def is_M_sequence(vector: Sequence[int]) -> bool:
    """(1, F_1, F_2, ...) with 0 <= F_{i+1} <= F_i^<i>. Raises DomainError on negative entries."""
    values = list(vector)
    _nonnegative(values)
    if not values:
        return True
    if values[0] != 1:
        return False
    return all(values[i + 1] <= macaulay_next(values[i], i) for i in range(1, len(values) - 1))


def is_f_vector(vector: Sequence[int]) -> bool:
    """Kruskal-Katona test on (f_{-1}, f_0, f_1, ...) with f_{-1} = 1."""
    values = list(vector)
    _nonnegative(values)
    if not values:
        return True
    if values[0] != 1:
        return False
    return all(values[t + 1] <= kruskal_katona_bound(values[t], t) for t in range(1, len(values) - 1))
