from dataclasses import replace

import pytest

from audit import (CONJECTURE, FAILS, HOLDS, REGISTRY, SKIPPED, THEOREM, AuditContext, CheckResult,
                   equality_witnesses, exit_code, register, run_audit, run_check)
from complex_core import SimplicialComplex
from config import Caps
from constructions import ConstructionSpec, stacked_ball, stacked_cross_polytopal, stacked_sphere, switch_ball_boundary
from errors import DomainError
from homology import FieldSpec


def _no_theorem_failures(report):
    assert not report.theorem_failures, [(r.check_id, r.witnesses) for r in report.theorem_failures]


# ------------------ Registry ------------------

def test_registry_order_and_statuses():
    ids = list(REGISTRY)
    assert ids[0] == "dehn-sommerville"
    assert len(ids) == len(set(ids)) == 31
    assert {spec.status for spec in REGISTRY.values()} == {THEOREM, CONJECTURE}
    assert REGISTRY["gal"].status == CONJECTURE
    assert REGISTRY["lbt"].equality == "stacked"


def test_register_rejects_duplicates():
    with pytest.raises(ValueError):
        register("lbt", THEOREM, "again")(lambda ctx: None)


def test_void_complex_cannot_be_audited():
    with pytest.raises(DomainError):
        run_audit(SimplicialComplex.void())


# ------------------ Spheres ------------------

def test_octahedron(octahedron, qq):
    report = run_audit(octahedron, [qq])
    _no_theorem_failures(report)
    assert len(report.checks) == len(REGISTRY)
    balanced = report["balanced-lbt"]
    assert balanced.verdict == HOLDS
    assert balanced.slack == 0
    assert balanced.is_equality
    assert report["gal"].verdict == HOLDS
    assert report["balanced-pi1"].verdict == SKIPPED
    assert report["socle-bound"].verdict == HOLDS
    assert report["balanced-g-double-prime"].verdict == HOLDS
    assert report["gamma-f-vector"].verdict == HOLDS
    assert report["gamma-f-vector"].status == CONJECTURE
    assert exit_code(report) == 0


def test_tetrahedron_is_kuhnel_tight(tetrahedron, qq):
    kuhnel = run_audit(tetrahedron, [qq])["kuhnel"]
    assert kuhnel.verdict == HOLDS
    assert kuhnel.slack == 0
    assert "neighborliness confirmed" in kuhnel.note


def test_stacked_sphere_is_lbt_tight(qq):
    spec = ConstructionSpec("stacked", n=7, d=4)
    report = run_audit(stacked_sphere(7, 4), [qq], provenance=spec)
    _no_theorem_failures(report)
    lbt = report["lbt"]
    assert lbt.slack == 0
    assert "provenance" in lbt.note
    witnesses = {w.check_id: w for w in equality_witnesses(report)}
    assert witnesses["lbt"].annotation == "stacked"
    assert report["g-theorem"].status == THEOREM


def test_stacked_cross_polytopal_sphere_is_balanced_lbt_tight(qq):
    report = run_audit(stacked_cross_polytopal(2, 3), [qq])
    _no_theorem_failures(report)
    assert report["balanced-lbt"].slack == 0
    assert "balanced-lbt" in {w.check_id for w in equality_witnesses(report)}


# ------------------ Manifolds ------------------

def test_torus(torus, qq):
    report = run_audit(torus, [qq])
    _no_theorem_failures(report)
    g2 = report["g2-betti"]
    assert g2.verdict == SKIPPED
    assert "2 < 3" in g2.reason
    kuhnel = report["kuhnel"]
    assert kuhnel.slack == 4
    assert kuhnel.note.startswith("6 <= 10")
    assert report["lbt"].slack == 6
    assert report["h-double-prime"].verdict == HOLDS
    assert report["ubt"].verdict == SKIPPED
    assert exit_code(report) == 0


def test_torus_mu_cap_is_a_resource_skip(torus, qq):
    report = run_audit(torus, [qq], caps=Caps.from_config(mu_vertex_cap=4))
    assert report["mu-betti"].resource_skip
    assert exit_code(report) == 0
    assert exit_code(report, strict=True) == 3


def test_projective_plane_uses_the_orienting_field(rp2, qq, gf2):
    report = run_audit(rp2, [qq, gf2])
    _no_theorem_failures(report)
    kuhnel = report["kuhnel"]
    assert kuhnel.field == "GF(2)"
    assert kuhnel.slack == 0
    assert report["h-double-prime"].field == "GF(2)"
    socle = report["socle-bound"]
    assert socle.verdict == HOLDS
    assert "(0, 0, 3, 1)" in socle.note


def test_projective_plane_over_rationals_skips_orientable_checks(rp2, qq):
    report = run_audit(rp2, [qq])
    assert report["kuhnel"].verdict == SKIPPED
    assert report["h-double-prime"].verdict == HOLDS


def test_disjoint_spheres_satisfy_the_mu_formula(qq):
    spec = ConstructionSpec("switch-ball-boundary", r=0, m=4)
    report = run_audit(switch_ball_boundary(0, 4), [qq], provenance=spec)
    _no_theorem_failures(report)
    assert report["bagchi"].verdict == HOLDS
    assert report["ubt"].reason == "not connected"
    assert report["mu-betti"].verdict == HOLDS


def test_stacked_ball(qq):
    report = run_audit(stacked_ball(6, 3), [qq])
    _no_theorem_failures(report)
    assert report["r-stacked-h-double-prime"].verdict == HOLDS
    assert report["r-stacked-h-double-prime"].note == "1-stacked"
    assert report["billera-lee"].verdict == HOLDS
    assert report["billera-lee"].status == CONJECTURE
    assert report["lbt"].verdict == SKIPPED


def test_non_pseudomanifold(three_triangles, qq):
    report = run_audit(three_triangles, [qq])
    _no_theorem_failures(report)
    assert report["lbt"].reason == "not a normal pseudomanifold"
    assert report["mu-betti"].verdict == HOLDS
    assert exit_code(report, strict=True) == 0


def test_negative_difference_vector_is_a_failing_witness(octahedron, qq):
    ctx = AuditContext(octahedron, [qq], Caps.from_config(), seed=0)
    ctx.hl = [1, -1, -1, 1]
    result = run_check(REGISTRY["g-theorem"], ctx)
    assert result.applicable
    assert result.verdict == FAILS
    assert result.witnesses == ("g = (1, -2) is not an M-sequence",)


# ------------------ Exit codes ------------------

def test_theorem_failure_sets_exit_code(octahedron, qq):
    report = run_audit(octahedron, [qq])
    failing = CheckResult("synthetic", "always fails", THEOREM, FAILS, True)
    assert exit_code(replace(report, checks=report.checks + (failing,))) == 2
    conjecture = CheckResult("synthetic", "always fails", CONJECTURE, FAILS, True)
    assert exit_code(replace(report, checks=report.checks + (conjecture,))) == 0


@pytest.mark.slow
def test_sphere_product_four_manifold_is_kuhnel_slack():
    report = run_audit(switch_ball_boundary(2, 6), [FieldSpec.rationals()],
                       caps=Caps.from_config(mu_vertex_cap=0, link_probe_vertex_cap=0, ring_vertex_cap=0))
    _no_theorem_failures(report)
    assert report["kuhnel"].slack == 36
