"""
Inequality audit.

Every known face-number theorem or conjecture is registered here as a check.
A check reads what it needs from a shared AuditContext, raises Skip when the
hypotheses of the statement are not met, and otherwise returns an Outcome
with a verdict and, where the statement is an inequality, the exact slack.

Theorem-status checks that fail on an input satisfying their hypotheses are
flagged as probable implementation bugs. Conjecture-status checks only report.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from classify import ClassificationReport, classify
from complex_core import SimplicialComplex, f_vector, link, parallel_map
from config import FACENUM_CONFIG, Caps
from constructions import ConstructionSpec, join_of_cycles
from errors import DomainError, ResourceCapError, UnluckyFieldError
from face_ring import LefschetzProbe, is_f_vector, is_M_sequence, macaulay_next, probe_lefschetz, random_lsop, socle_dims
from homology import BettiVector, FieldSpec, euler_characteristic, reduced_betti
from invariants import (HVector, MuSigma, dehn_sommerville_residual, ds_boundary_residual, g_numbers,
                        gamma_vector, h_double_prime, h_prime, h_vector, mu_sigma, tilde_g)

logger = logging.getLogger(__name__)

THEOREM = "theorem"
CONJECTURE = "conjecture"

HOLDS = "holds"
FAILS = "fails"
SKIPPED = "skipped"

Number = Union[int, Fraction]


def _binom(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _exact(value: Optional[Number]) -> Optional[Number]:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


# ------------------ Results ------------------

class Skip(Exception):
    """Raised by a check whose hypotheses do not hold (or cannot be decided within caps)."""

    def __init__(self, reason: str, resource: bool = False):
        super().__init__(reason)
        self.reason = reason
        self.resource = resource


@dataclass
class Outcome:
    holds: bool
    slack: Optional[Number] = None
    witnesses: Sequence[str] = ()
    field: Optional[FieldSpec] = None
    note: str = ""
    status: Optional[str] = None  # overrides the registered status (provenance upgrades)
    equality: Optional[str] = None  # overrides the registered equality annotation


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    title: str
    status: str
    verdict: str
    applicable: bool
    reason: str = ""
    slack: Optional[Number] = None
    witnesses: Tuple[str, ...] = ()
    field: Optional[str] = None
    note: str = ""
    equality_case: str = ""
    resource_skip: bool = False
    probable_bug: bool = False

    @property
    def is_equality(self) -> bool:
        return self.verdict == HOLDS and self.slack is not None and self.slack == 0

    @property
    def theorem_failure(self) -> bool:
        return self.status == THEOREM and self.verdict == FAILS


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    status: str
    title: str
    equality: str
    run: Callable[["AuditContext"], Outcome]


REGISTRY: Dict[str, CheckSpec] = {}


def register(check_id: str, status: str, title: str, equality: str = ""):
    """Add a check to the audit. Checks run in registration order."""
    def decorator(fn: Callable[["AuditContext"], Outcome]):
        if check_id in REGISTRY:
            raise ValueError(f"check {check_id!r} registered twice")
        REGISTRY[check_id] = CheckSpec(check_id, status, title, equality, fn)
        return fn
    return decorator


@dataclass(frozen=True)
class AuditReport:
    classification: ClassificationReport
    checks: Tuple[CheckResult, ...]
    fields: Tuple[FieldSpec, ...]
    seed: int
    provenance: Optional[ConstructionSpec] = None

    def __getitem__(self, check_id: str) -> CheckResult:
        for result in self.checks:
            if result.check_id == check_id:
                return result
        raise KeyError(check_id)

    @property
    def theorem_failures(self) -> List[CheckResult]:
        return [r for r in self.checks if r.theorem_failure]

    @property
    def conjecture_failures(self) -> List[CheckResult]:
        return [r for r in self.checks if r.status == CONJECTURE and r.verdict == FAILS]

    @property
    def resource_skips(self) -> List[CheckResult]:
        return [r for r in self.checks if r.resource_skip]


@dataclass(frozen=True)
class EqualityWitness:
    check_id: str
    annotation: str
    note: str = ""


# ------------------ Shared context ------------------

class AuditContext:
    """Lazily computed data shared by all checks of one audit."""

    def __init__(self, delta: SimplicialComplex, fields: Sequence[FieldSpec], caps: Caps,
                 seed: int, provenance: Optional[ConstructionSpec] = None):
        self.delta = delta
        self.fields = tuple(fields)
        self.primary = self.fields[0]
        self.caps = caps
        self.seed = seed
        self.provenance = provenance
        self._classifications: Dict[FieldSpec, ClassificationReport] = {}
        self._probes: Dict[FieldSpec, Dict[int, LefschetzProbe]] = {}

    @property
    def d(self) -> int:
        return self.delta.d

    @cached_property
    def h(self) -> HVector:
        return h_vector(self.delta)

    @cached_property
    def hl(self) -> List[int]:
        return list(self.h)

    @cached_property
    def mu(self) -> MuSigma:
        return mu_sigma(self.delta, self.primary, self.caps.mu_vertex_cap)

    @property
    def polytopal(self) -> bool:
        return self.provenance is not None and self.provenance.is_polytopal_boundary

    def classification(self, field: Optional[FieldSpec] = None) -> ClassificationReport:
        field = field or self.primary
        if field not in self._classifications:
            self._classifications[field] = classify(self.delta, field, self.caps.face_cap)
        return self._classifications[field]

    def betti(self, field: Optional[FieldSpec] = None) -> BettiVector:
        return self.classification(field).betti

    def h_double_prime(self, field: Optional[FieldSpec] = None) -> Tuple[int, ...]:
        return h_double_prime(self.delta, field or self.primary, self.betti(field))

    @staticmethod
    def require(value: Optional[bool], reason: str) -> None:
        if value is None:
            raise Skip("link-based classification was skipped at the face cap", resource=True)
        if not value:
            raise Skip(reason)

    def require_manifold(self, field: Optional[FieldSpec] = None, closed: bool = False) -> ClassificationReport:
        report = self.classification(field)
        if closed:
            self.require(report.homology_manifold, f"not a closed homology manifold over {report.field}")
        elif report.homology_manifold is None:
            self.require(None, "")
        else:
            self.require(report.any_manifold, f"not a homology manifold over {report.field}")
        return report

    def orientable_field(self, required: bool = True) -> Optional[FieldSpec]:
        """First requested field over which the complex is a closed orientable homology manifold."""
        undecided = False
        for field in self.fields:
            report = self.classification(field)
            if report.homology_manifold is None:
                undecided = True
            elif report.homology_manifold and report.orientable and report.connected:
                return field
        if not required:
            return None
        if undecided:
            self.require(None, "")
        raise Skip(f"not a connected closed orientable homology manifold over {', '.join(f.label for f in self.fields)}")

    def link_probes(self, field: FieldSpec) -> Dict[int, LefschetzProbe]:
        """WLP probe of every vertex link, keyed by vertex."""
        if field not in self._probes:
            cap = self.caps.link_probe_vertex_cap
            links = [link(self.delta, (v,)) for v in range(self.delta.n)]
            largest = max((lk.n for lk in links), default=0)
            if largest > cap:
                raise ResourceCapError(
                    f"vertex link with {largest} vertices exceeds the link-probe cap {cap}", cap=cap, size=largest)
            probes = parallel_map(lambda pair: probe_lefschetz(pair[1], field, self.seed + pair[0]),
                                  list(enumerate(links)))
            self._probes[field] = dict(enumerate(probes))
        return self._probes[field]

    def require_dim(self, condition: bool, reason: str) -> None:
        if not condition:
            raise Skip(reason)


def _uncertified(probes: Dict[int, LefschetzProbe]) -> List[int]:
    return [v for v, probe in sorted(probes.items()) if not probe.certified]


def _probe_note(probes: Dict[int, LefschetzProbe], field: FieldSpec) -> str:
    certified = sum(1 for probe in probes.values() if probe.certified)
    return f"vertex-link WLP certified-modulo-probe on {certified}/{len(probes)} links over {field.label}"


def _m_sequence(vector: Sequence[int]) -> bool:
    """is_M_sequence, with negative entries counted as a failure."""
    try:
        return is_M_sequence(vector)
    except DomainError:
        return False


def _f_vector(vector: Sequence[int]) -> bool:
    try:
        return is_f_vector(vector)
    except DomainError:
        return False


def _margins(pairs: Sequence[Tuple[str, Number]]) -> Tuple[Optional[Number], List[str]]:
    """Minimum margin and the labels of negative margins."""
    if not pairs:
        return None, []
    return min(value for _, value in pairs), [f"{label}: {_exact(value)}" for label, value in pairs if value < 0]


# ------------------ Classical checks ------------------

@register("dehn-sommerville", THEOREM, "h_{d-j} - h_j = (-1)^j C(d,j) (χ̃ - χ̃(S^{d-1})) for semi-Eulerian complexes")
def _dehn_sommerville(ctx: AuditContext) -> Outcome:
    ctx.require(ctx.classification().semi_eulerian, "not semi-Eulerian")
    residual = dehn_sommerville_residual(ctx.delta)
    return Outcome(not any(residual), witnesses=[f"j={j}: residual {r}" for j, r in enumerate(residual) if r])


@register("dehn-sommerville-boundary", THEOREM, "h_{d-i} - h_i relation with g_i of the boundary")
def _dehn_sommerville_boundary(ctx: AuditContext) -> Outcome:
    ctx.require(ctx.classification().homology_manifold_with_boundary, "not a homology manifold with boundary")
    residual = ds_boundary_residual(ctx.delta, ctx.primary)
    return Outcome(not any(residual), witnesses=[f"i={i}: residual {r}" for i, r in enumerate(residual) if r],
                   field=ctx.primary)


@register("lbt", THEOREM, "h_2 >= h_1 for connected normal pseudomanifolds, d >= 3", equality="stacked")
def _lower_bound(ctx: AuditContext) -> Outcome:
    report = ctx.classification()
    ctx.require(report.connected, "not connected")
    ctx.require(report.normal_pseudomanifold, "not a normal pseudomanifold")
    ctx.require_dim(ctx.d >= 3, f"d = {ctx.d} < 3")
    slack = ctx.hl[2] - ctx.hl[1]
    if ctx.d == 3:
        return Outcome(slack >= 0, slack, equality="", note="in dimension 2 equality holds for every sphere")
    note = ""
    if slack == 0 and ctx.provenance is not None and ctx.provenance.family in ("stacked", "simplex-boundary"):
        note = "stacked polytope boundary confirmed by provenance"
    return Outcome(slack >= 0, slack, note=note)


@register("lee-g2", THEOREM, "(1, g_1, g_2) is an M-sequence for connected normal pseudomanifolds, d >= 3")
def _lee_g2(ctx: AuditContext) -> Outcome:
    report = ctx.classification()
    ctx.require(report.connected, "not connected")
    ctx.require(report.normal_pseudomanifold, "not a normal pseudomanifold")
    ctx.require_dim(ctx.d >= 3, f"d = {ctx.d} < 3")
    g = g_numbers(ctx.h, 2)
    slack = macaulay_next(g[1], 1) - g[2] if g[1] >= 0 else None
    return Outcome(_m_sequence(g), slack, witnesses=[] if _m_sequence(g) else [f"(1, g_1, g_2) = {g}"])


@register("ubt", THEOREM, "h_j <= h_j(C_d(n)) for closed homology manifolds", equality="floor(d/2)-neighborly")
def _upper_bound(ctx: AuditContext) -> Outcome:
    gate = FieldSpec.parse(FACENUM_CONFIG['ubt_gate_field'])
    report = ctx.require_manifold(gate, closed=True)
    ctx.require(report.connected, "not connected")
    d, n = ctx.d, ctx.delta.n
    ctx.require_dim(d >= 2, f"d = {d} < 2")
    if (d - 1) % 2 == 0:
        k = (d - 1) // 2
        b = report.betti
        bound = 2 * b.get(k - 1) + 2 * sum(b.get(i) for i in range(0, k - 2))
        if b.get(k) > bound:
            raise Skip(f"β_{k} = {b.get(k)} exceeds 2β_{k - 1} + 2Σβ_i = {bound} over {gate.label}")
    half = [_binom(n - d + j - 1, j) for j in range(d // 2 + 1)]
    cyclic = [half[j] if j <= d // 2 else half[d - j] for j in range(d + 1)]
    margins = [(f"h_{j}", cyclic[j] - ctx.hl[j]) for j in range(d + 1)]
    _, bad = _margins(margins)
    slack, _ = _margins(margins[2:d - 1])
    return Outcome(not bad, slack, bad, field=gate)


@register("h-double-prime", THEOREM, "h''_j >= 0 on homology manifolds; h'' symmetric when closed and orientable")
def _h_double_prime(ctx: AuditContext) -> Outcome:
    field = ctx.orientable_field(required=False)
    report = ctx.require_manifold(field)
    h2 = ctx.h_double_prime(report.field)
    _, bad = _margins([(f"h''_{j}", value) for j, value in enumerate(h2)])
    note = "nonnegativity only"
    if field is not None:
        note = "nonnegativity and symmetry"
        d = len(h2) - 1
        bad += [f"h''_{j} = {h2[j]} != h''_{d - j} = {h2[d - j]}" for j in range(d // 2 + 1) if h2[j] != h2[d - j]]
    return Outcome(not bad, min(h2), bad, field=report.field, note=note)


@register("kuhnel", THEOREM, "(-1)^k C(2k+1,k)(χ̃ - 1) <= C(n-k-2,k+1) for orientable 2k-manifolds",
          equality="(k+1)-neighborly")
def _kuhnel(ctx: AuditContext) -> Outcome:
    field = ctx.orientable_field()
    dim = ctx.d - 1
    ctx.require_dim(dim >= 2 and dim % 2 == 0, f"dimension {dim} is not even and positive")
    k = dim // 2
    n = ctx.delta.n
    lhs = _sign(k) * comb(2 * k + 1, k) * (euler_characteristic(ctx.delta) - 1)
    rhs = _binom(n - k - 2, k + 1)
    neighborly = ctx.classification(field).neighborliness >= k + 1
    witnesses = []
    if (lhs == rhs) != neighborly:
        witnesses.append(f"equality {lhs == rhs} but ({k + 1})-neighborly {neighborly}")
    if lhs > rhs:
        witnesses.append(f"{lhs} > {rhs}")
    note = f"{lhs} <= {rhs}"
    if lhs == rhs and neighborly:
        note += f"; ({k + 1})-neighborliness confirmed"
    return Outcome(not witnesses, rhs - lhs, witnesses, field=field, note=note)


@register("murai-middle-betti", THEOREM, "C(2k+1,k) β_k <= C(n-k-2,k+1) for homology 2k-manifolds")
def _murai_middle_betti(ctx: AuditContext) -> Outcome:
    report = ctx.require_manifold(closed=True)
    ctx.require(report.connected, "not connected")
    dim = ctx.d - 1
    ctx.require_dim(dim >= 2 and dim % 2 == 0, f"dimension {dim} is not even and positive")
    k = dim // 2
    lhs = comb(2 * k + 1, k) * report.betti.get(k)
    rhs = _binom(ctx.delta.n - k - 2, k + 1)
    return Outcome(lhs <= rhs, rhs - lhs, [] if lhs <= rhs else [f"{lhs} > {rhs}"], field=report.field)


@register("murai-polytopal-links", THEOREM, "C(d+1,j+1) β_j <= C(n-d+j-1,j+1) when all vertex links are polytopal")
def _murai_polytopal_links(ctx: AuditContext) -> Outcome:
    raise Skip("polytopality of vertex links is not decidable here")


# ------------------ Betti and μ bounds on g_2 ------------------

def _g2_gate(ctx: AuditContext) -> None:
    ctx.require(ctx.classification().normal_pseudomanifold, "not a normal pseudomanifold")
    ctx.require_dim(ctx.d - 1 >= 3, f"d-1 = {ctx.d - 1} < 3")


@register("g2-betti", THEOREM, "g_2 >= C(d+1,2)(β_1 - β_0) for normal pseudomanifolds, d-1 >= 3",
          equality="stacked manifold (not verified)")
def _g2_betti(ctx: AuditContext) -> Outcome:
    _g2_gate(ctx)
    b = ctx.betti()
    slack = g_numbers(ctx.h, 2)[2] - comb(ctx.d + 1, 2) * (b.get(1) - b.get(0))
    return Outcome(slack >= 0, slack, field=ctx.primary)


@register("g2-mu", THEOREM, "g_2 >= C(d+1,2)(μ_1 - μ_0 + 1) for normal pseudomanifolds, d-1 >= 3")
def _g2_mu(ctx: AuditContext) -> Outcome:
    _g2_gate(ctx)
    mu = ctx.mu.mu
    slack = g_numbers(ctx.h, 2)[2] - comb(ctx.d + 1, 2) * (mu.get(1) - mu.get(0) + 1)
    return Outcome(slack >= 0, _exact(slack), field=ctx.primary)


@register("mu-betti", THEOREM, "μ_j >= β_j, μ_0 >= β_0 + 1 and the alternating-sum inequalities")
def _mu_betti(ctx: AuditContext) -> Outcome:
    ctx.require_dim(ctx.delta.n >= 1, "no vertices")
    mu = ctx.mu.mu
    b = ctx.betti()
    top = ctx.d
    margins: List[Tuple[str, Number]] = [("μ_0 - β_0 - 1", mu.get(0) - b.get(0) - 1)]
    margins += [(f"μ_{j} - β_{j}", mu.get(j) - b.get(j)) for j in range(1, top)]
    for j in range(top):
        alternating = sum((_sign(j - k) * (mu.get(k) - b.get(k)) for k in range(j + 1)), Fraction(0))
        margins.append((f"alternating sum to {j}", alternating - _sign(j)))
    slack, bad = _margins(margins)
    note = f"isolated vertices {list(ctx.mu.isolated_vertices)}" if ctx.mu.isolated_vertices else ""
    return Outcome(not bad, _exact(slack), bad, field=ctx.primary, note=note)


# ------------------ Lefschetz-conditional checks ------------------

@register("tilde-g", THEOREM, "g~ is a nonnegative M-sequence when every vertex link has the WLP",
          equality="locally (r-1)-stacked where g~_r = 0")
def _tilde_g(ctx: AuditContext) -> Outcome:
    field = ctx.orientable_field()
    ctx.require_dim(ctx.d >= 2, f"d = {ctx.d} < 2")
    probes = ctx.link_probes(field)
    failed = _uncertified(probes)
    if failed:
        raise Skip(f"hypothesis not certified: WLP probe failed on vertex links {failed}")
    values = tilde_g(ctx.delta, field, ctx.betti(field))
    holds = all(v >= 0 for v in values) and _m_sequence(values)
    zeros = [r for r, v in enumerate(values) if r >= 1 and v == 0]
    note = _probe_note(probes, field)
    if ctx.d % 2 == 0 and ctx.d // 2 in zeros:
        note += f"; g~_{ctx.d // 2} = 0 with d = {ctx.d}: stackedness is not concluded"
    slack = min(values[1:]) if len(values) > 1 else None
    witnesses = [f"g~_{r} = 0" for r in zeros] if holds else [f"g~ = {values}"]
    return Outcome(holds, slack, witnesses, field=field, note=note)


@register("h-double-prime-lefschetz", THEOREM,
          "h'' unimodal and g'' an M-sequence when all but d+1 vertex links have the WLP")
def _h_double_prime_lefschetz(ctx: AuditContext) -> Outcome:
    field = ctx.orientable_field()
    ctx.require_dim(ctx.d >= 2, f"d = {ctx.d} < 2")
    probes = ctx.link_probes(field)
    failed = _uncertified(probes)
    if len(failed) > ctx.d + 1:
        raise Skip(f"hypothesis not certified: WLP probe failed on {len(failed)} > d+1 vertex links")
    h2 = ctx.h_double_prime(field)
    half = ctx.d // 2
    g2 = tuple(h2[j] - (h2[j - 1] if j else 0) for j in range(half + 1))
    witnesses = []
    if any(v < 0 for v in g2[1:]):
        witnesses.append(f"h'' not increasing to the middle: {h2[:half + 1]}")
    if not _m_sequence(g2):
        witnesses.append(f"g'' = {g2} is not an M-sequence")
    return Outcome(not witnesses, witnesses=witnesses, field=field, note=_probe_note(probes, field))


# ------------------ Manifolds with boundary ------------------

@register("r-stacked-h-double-prime", THEOREM, "h''_r = 0 iff (r-1)-stacked, for manifolds with boundary")
def _r_stacked(ctx: AuditContext) -> Outcome:
    report = ctx.classification()
    ctx.require(report.homology_manifold_with_boundary, "not a homology manifold with boundary")
    h2 = ctx.h_double_prime()
    stacked = report.r_stacked
    witnesses = []
    for r in range(1, ctx.d + 1):
        vanishes = h2[r] == 0
        if vanishes != (stacked <= r - 1):
            witnesses.append(f"r={r}: h''_r = {h2[r]} but stackedness is {stacked}")
    return Outcome(not witnesses, witnesses=witnesses, field=ctx.primary, note=f"{stacked}-stacked")


@register("bagchi", THEOREM, "g_r = C(d+1,r)[(-1)^r + Σ (-1)^{r-j} μ_{j-1}] for locally (r-1)-stacked manifolds")
def _bagchi(ctx: AuditContext) -> Outcome:
    spec = ctx.provenance
    if spec is None or spec.family != "switch-ball-boundary":
        raise Skip("needs a switch-ball boundary by provenance")
    stacked = spec.r
    d = ctx.d
    rs = list(range(max(1, stacked + 1), d // 2 + 1))
    if not rs:
        raise Skip(f"no r with {stacked + 1} <= r <= d/2 = {d / 2}")
    mu = ctx.mu.mu
    g = g_numbers(ctx.h, rs[-1])
    witnesses = []
    for r in rs:
        expected = comb(d + 1, r) * (_sign(r) + sum((_sign(r - j) * mu.get(j - 1) for j in range(1, r + 1)),
                                                    Fraction(0)))
        if g[r] != expected:
            witnesses.append(f"r={r}: g_r = {g[r]} but the μ expression gives {_exact(expected)}")
    return Outcome(not witnesses, witnesses=witnesses, field=ctx.primary,
                   note=f"locally {stacked}-stacked; checked r in {rs}")


@register("lbt-boundary", THEOREM, "h_2 >= f_0° + C(d,2)β_1(∂) + dβ_0(∂) for manifolds with boundary, d >= 4")
def _lbt_boundary(ctx: AuditContext) -> Outcome:
    d = ctx.d
    ctx.require_dim(d >= 4, f"d = {d} < 4")
    field = FieldSpec.gf(2) if d == 4 else ctx.primary
    report = ctx.classification(field)
    ctx.require(report.connected, "not connected")
    ctx.require(report.homology_manifold_with_boundary, f"not a homology manifold with boundary over {field.label}")
    boundary = report.boundary
    bb = reduced_betti(boundary, field)
    interior_vertices = ctx.delta.n - boundary.n
    bound = interior_vertices + comb(d, 2) * bb.get(1) + d * bb.get(0)
    slack = ctx.hl[2] - bound
    return Outcome(slack >= 0, slack, field=field)


@register("billera-lee", CONJECTURE, "ball difference vectors (h_0 - h_{d+k}, ...) are M-sequences")
def _billera_lee(ctx: AuditContext) -> Outcome:
    ctx.require(ctx.classification().homology_ball, "not a homology ball")
    d = ctx.d
    hl = ctx.hl

    def at(i: int) -> int:
        return hl[i] if 0 <= i <= d else 0

    witnesses = []
    for k in range(d + 2):
        top = (d + k - 1) // 2
        vector = tuple(at(i) - at(d + k - i) for i in range(top + 1))
        if not _m_sequence(vector):
            witnesses.append(f"k={k}: {vector}")
    return Outcome(not witnesses, witnesses=witnesses)


# ------------------ Balanced complexes ------------------

def _balanced_gate(ctx: AuditContext, min_d: int) -> ClassificationReport:
    report = ctx.classification()
    ctx.require(report.balanced, "not balanced")
    ctx.require(report.normal_pseudomanifold, "not a normal pseudomanifold")
    ctx.require_dim(ctx.d >= min_d, f"d = {ctx.d} < {min_d}")
    return report


@register("balanced-lbt", THEOREM, "2h_2 >= (d-1)h_1 for balanced normal pseudomanifolds, d >= 3",
          equality="stacked cross-polytopal")
def _balanced_lbt(ctx: AuditContext) -> Outcome:
    report = _balanced_gate(ctx, 3)
    ctx.require(report.connected, "not connected")
    slack = 2 * ctx.hl[2] - (ctx.d - 1) * ctx.hl[1]
    if ctx.d == 3:
        return Outcome(slack >= 0, slack, equality="cross-polytopal 2-sphere",
                       note="in dimension 2 equality holds for every balanced sphere")
    note = ""
    if slack == 0 and ctx.provenance is not None and ctx.provenance.family in ("stacked-cross-polytopal",
                                                                               "cross-polytope"):
        note = "confirmed by provenance"
    return Outcome(slack >= 0, slack, note=note)


@register("balanced-betti-lbt", CONJECTURE, "2h_2 - (d-1)h_1 >= 4C(d,2)(β_1 - β_0) for balanced normal pseudomanifolds, d >= 4")
def _balanced_betti_lbt(ctx: AuditContext) -> Outcome:
    _balanced_gate(ctx, 4)
    b = ctx.betti()
    slack = 2 * ctx.hl[2] - (ctx.d - 1) * ctx.hl[1] - 4 * comb(ctx.d, 2) * (b.get(1) - b.get(0))
    return Outcome(slack >= 0, slack, field=ctx.primary)


@register("balanced-h-double-prime", THEOREM, "h'' is the f-vector of a complex for balanced homology manifolds")
def _balanced_h_double_prime(ctx: AuditContext) -> Outcome:
    report = ctx.require_manifold()
    ctx.require(report.balanced, "not balanced")
    h2 = ctx.h_double_prime()
    holds = _f_vector(h2)
    return Outcome(holds, witnesses=[] if holds else [f"h'' = {h2}"], field=ctx.primary)


@register("balanced-g-double-prime", CONJECTURE,
          "(h''_j - h''_{j-1}) for j <= d/2 is an f-vector for balanced orientable closed manifolds")
def _balanced_g_double_prime(ctx: AuditContext) -> Outcome:
    field = ctx.orientable_field()
    ctx.require(ctx.classification(field).balanced, "not balanced")
    h2 = ctx.h_double_prime(field)
    g2 = tuple(h2[j] - (h2[j - 1] if j else 0) for j in range(ctx.d // 2 + 1))
    holds = _f_vector(g2)
    return Outcome(holds, witnesses=[] if holds else [f"g'' = {g2}"], field=field)


@register("balanced-glbc", CONJECTURE, "h_j / C(d,j) nondecreasing up to d/2 for balanced homology spheres")
def _balanced_glbc(ctx: AuditContext) -> Outcome:
    report = ctx.classification()
    ctx.require(report.homology_sphere, "not a homology sphere")
    ctx.require(report.balanced, "not balanced")
    d = ctx.d
    ratios = [Fraction(ctx.hl[j], comb(d, j)) for j in range(d // 2 + 1)]
    margins = [(f"j={j}", ratios[j] - ratios[j - 1]) for j in range(1, len(ratios))]
    slack, bad = _margins(margins)
    status = THEOREM if ctx.polytopal else None
    return Outcome(not bad, _exact(slack), bad, status=status)


# ------------------ Flag complexes ------------------

def _flag_sphere(ctx: AuditContext) -> None:
    report = ctx.classification()
    ctx.require(report.homology_sphere, "not a homology sphere")
    ctx.require(report.flag, "not flag")


@register("gal", CONJECTURE, "γ_i >= 0 for flag homology spheres")
def _gal(ctx: AuditContext) -> Outcome:
    _flag_sphere(ctx)
    gamma = list(gamma_vector(ctx.h))
    slack, bad = _margins([(f"γ_{i}", value) for i, value in enumerate(gamma) if i >= 1])
    return Outcome(not bad, slack, bad)


@register("gamma-f-vector", CONJECTURE, "γ is the f-vector of a complex for flag homology spheres")
def _gamma_f_vector(ctx: AuditContext) -> Outcome:
    _flag_sphere(ctx)
    gamma = tuple(gamma_vector(ctx.h))
    holds = _f_vector(gamma)
    return Outcome(holds, witnesses=[] if holds else [f"γ = {gamma}"])


@register("charney-davis", CONJECTURE, "(-1)^k Σ (-1)^j h_j >= 0 for flag homology (2k-1)-spheres")
def _charney_davis(ctx: AuditContext) -> Outcome:
    _flag_sphere(ctx)
    ctx.require_dim(ctx.d % 2 == 0 and ctx.d >= 2, f"d = {ctx.d} is not even")
    k = ctx.d // 2
    value = _sign(k) * sum(_sign(j) * h for j, h in enumerate(ctx.hl))
    return Outcome(value >= 0, value)


@register("flag-join-of-cycles", CONJECTURE,
          "f, h, g and γ of flag closed manifolds with d = 2k >= 4 are at most those of J_k(n)",
          equality="join of cycles")
def _flag_join_of_cycles(ctx: AuditContext) -> Outcome:
    report = ctx.require_manifold(closed=True)
    ctx.require(report.flag, "not flag")
    d = ctx.d
    ctx.require_dim(d >= 4 and d % 2 == 0, f"d = {d} is not an even number >= 4")
    k = d // 2
    n = ctx.delta.n
    if n < 3 * k:
        raise Skip(f"n = {n} < 3k")
    reference = join_of_cycles(k, n)
    f, f_ref = f_vector(ctx.delta), f_vector(reference)
    h_ref = h_vector(reference)
    hr = list(h_ref)
    g, g_ref = g_numbers(ctx.h, k), g_numbers(h_ref, k)
    margins: List[Tuple[str, Number]] = [(f"f_{i}", f_ref.get(i) - f.get(i)) for i in range(1, d)]
    margins += [(f"h_{i}", hr[i] - ctx.hl[i]) for i in range(2, d - 1)]
    margins += [(f"g_{i}", g_ref[i] - g[i]) for i in range(2, k + 1)]
    if ctx.hl == ctx.hl[::-1]:
        gamma, gamma_ref = list(gamma_vector(ctx.h)), list(gamma_vector(h_ref))
        margins += [(f"γ_{i}", gamma_ref[i] - gamma[i]) for i in range(2, k + 1)]
    slack, bad = _margins(margins)
    return Outcome(not bad, slack, bad, field=report.field, note=f"compared with J_{k}({n})")


# ------------------ Spheres ------------------

@register("g-theorem", CONJECTURE, "h symmetric, unimodal and g an M-sequence for homology spheres")
def _g_theorem(ctx: AuditContext) -> Outcome:
    ctx.require(ctx.classification().homology_sphere, "not a homology sphere")
    hl = ctx.hl
    d = ctx.d
    witnesses = []
    if hl != hl[::-1]:
        witnesses.append(f"h = {tuple(hl)} is not palindromic")
    g = tuple(hl[j] - (hl[j - 1] if j else 0) for j in range(d // 2 + 1))
    if not _m_sequence(g):
        witnesses.append(f"g = {g} is not an M-sequence")
    status = THEOREM if ctx.polytopal else None
    return Outcome(not witnesses, witnesses=witnesses, status=status)


# ------------------ Face-ring checks ------------------

@register("h-prime-m-sequence", THEOREM, "h' and its socle-corrected truncations are M-sequences")
def _h_prime_m_sequence(ctx: AuditContext) -> Outcome:
    report = ctx.require_manifold()
    b = report.betti
    hp = h_prime(ctx.delta, report.field, b)
    d = ctx.d
    witnesses = [] if _m_sequence(hp) else [f"h' = {hp}"]
    for j in range(1, d):
        vector = hp[:j] + (hp[j] - comb(d, j) * b.get(j - 1), hp[j + 1])
        if not _m_sequence(vector):
            witnesses.append(f"j={j}: {vector}")
    return Outcome(not witnesses, witnesses=witnesses, field=report.field)


@register("socle-bound", THEOREM, "dim Soc_j >= C(d,j) β_{j-1}, with equality for closed orientable manifolds")
def _socle_bound(ctx: AuditContext) -> Outcome:
    orientable = ctx.orientable_field(required=False)
    field = orientable or ctx.primary
    report = ctx.require_manifold(field)
    cap = ctx.caps.ring_vertex_cap
    if ctx.delta.n > cap:
        raise ResourceCapError(f"{ctx.delta.n} vertices exceed the ring cap {cap}", cap=cap, size=ctx.delta.n)
    system = random_lsop(ctx.delta, field, ctx.seed)
    socle = socle_dims(ctx.delta, system)
    bound = [comb(ctx.d, j) * report.betti.get(j - 1) for j in range(ctx.d + 1)]
    slack, bad = _margins([(f"Soc_{j}", socle[j] - bound[j]) for j in range(ctx.d + 1)])
    if orientable is not None:
        bad += [f"Soc_{j} = {socle[j]} != {bound[j]}" for j in range(ctx.d + 1) if socle[j] > bound[j]]
    return Outcome(not bad, slack, bad, field=field, note=f"socle {socle} over {system.label}")


@register("balanced-pi1", THEOREM, "balanced g_2 bound in terms of fundamental-group generators")
def _balanced_pi1(ctx: AuditContext) -> Outcome:
    raise Skip("fundamental-group generators are not computed")


# ------------------ Runner ------------------

def run_check(spec: CheckSpec, ctx: AuditContext) -> CheckResult:
    base = dict(check_id=spec.check_id, title=spec.title, status=spec.status)
    try:
        outcome = spec.run(ctx)
    except Skip as skip:
        if skip.resource:
            logger.warning("%s skipped: %s", spec.check_id, skip.reason)
        return CheckResult(verdict=SKIPPED, applicable=False, reason=skip.reason,
                           resource_skip=skip.resource, **base)
    except ResourceCapError as exc:
        logger.warning("%s skipped: %s", spec.check_id, exc)
        return CheckResult(verdict=SKIPPED, applicable=False, reason=str(exc), resource_skip=True, **base)
    except (UnluckyFieldError, DomainError) as exc:
        return CheckResult(verdict=SKIPPED, applicable=False, reason=str(exc), **base)

    status = outcome.status or spec.status
    verdict = HOLDS if outcome.holds else FAILS
    bug = status == THEOREM and not outcome.holds
    if bug:
        logger.error("%s fails on an input satisfying its hypotheses; probable implementation bug: %s",
                     spec.check_id, list(outcome.witnesses))
    else:
        logger.debug("%s %s (slack %s)", spec.check_id, verdict, outcome.slack)
    return CheckResult(
        check_id=spec.check_id, title=spec.title, status=status, verdict=verdict, applicable=True,
        slack=_exact(outcome.slack), witnesses=tuple(outcome.witnesses),
        field=outcome.field.label if outcome.field else None, note=outcome.note,
        equality_case=spec.equality if outcome.equality is None else outcome.equality,
        probable_bug=bug,
    )


def run_audit(delta: SimplicialComplex, fields: Optional[Sequence[FieldSpec]] = None, caps: Optional[Caps] = None,
              seed: Optional[int] = None, provenance: Optional[ConstructionSpec] = None) -> AuditReport:
    """Run every registered check once, in registration order."""
    if delta.is_void:
        raise DomainError("cannot audit the void complex")
    fields = tuple(fields) if fields else (FieldSpec.default(),)
    caps = caps or Caps.from_config()
    seed = FACENUM_CONFIG['default_seed'] if seed is None else seed
    ctx = AuditContext(delta, fields, caps, seed, provenance)
    classification = ctx.classification()
    results = parallel_map(lambda spec: run_check(spec, ctx), list(REGISTRY.values()))
    report = AuditReport(classification, tuple(results), fields, seed, provenance)
    logger.info("audit: %d checks, %d theorem failures, %d conjecture failures, %d resource skips",
                len(results), len(report.theorem_failures), len(report.conjecture_failures),
                len(report.resource_skips))
    return report


def equality_witnesses(report: AuditReport) -> List[EqualityWitness]:
    return [EqualityWitness(r.check_id, r.equality_case, r.note) for r in report.checks if r.is_equality]


def exit_code(report: AuditReport, strict: bool = False) -> int:
    """0 when no theorem fails, 2 on a theorem failure, 3 on a resource skip under --strict."""
    if report.theorem_failures:
        return 2
    if strict and report.resource_skips:
        return 3
    return 0
