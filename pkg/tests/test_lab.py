""" Tests for the polytope lab.
"""

import json

from pytest import raises
from pwlsep.testing import run_tests_if_main, need_slow

from pwlsep import enumerate_feasible, check_inequality, theorem_suite
from pwlsep.core import Instance, ZInequality, Provenance, CutKind, LabLimitError
from pwlsep.generators import THEOREM_CASES, TheoremCase
from pwlsep.plugins.convex_inclusion import inclusion_inequality
from pwlsep.lab import ZPolytope, FacetVerdict, LabOptions, TheoremContradiction
from pwlsep.lab import affine_rank, polytope_dimension, audit_cuts, lemma_holds


def triangle_instance(blue_groups=1, red_groups=1):
    return Instance.from_points([(0, 0), (4, 0), (0, 4)], [(1, 1)], blue_groups, red_groups)


def inequality(coeffs, rhs):
    return ZInequality(coeffs, rhs, Provenance(CutKind.MODEL_ROW, row="test"))


def test_affine_rank():

    assert affine_rank([]) == -1
    assert affine_rank([(0, 0)]) == 0
    assert affine_rank([(0, 0), (1, 0), (2, 0)]) == 1
    assert affine_rank([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 3
    assert affine_rank([(1, 1), (1, 1)]) == 0
    # Early stop at the ambient dimension
    assert affine_rank([(0, 0), (1, 0), (0, 1), (1, 1)], n=2) == 2


def test_zpolytope():

    inst = triangle_instance()
    zp = ZPolytope(inst, [(1, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0)])
    assert len(zp) == 2
    assert zp.vectors == ((0, 0, 0, 0), (1, 0, 0, 0))
    assert (1, 0, 0, 0) in zp and [0, 1, 0, 0] not in zp
    assert zp.n == 4 and zp.dimension == 1

    with raises(ValueError):
        ZPolytope(inst, [(1, 0)])


def test_enumerate_feasible():

    inst = triangle_instance()
    zp = enumerate_feasible(inst)
    assert len(zp) == 15
    assert (1, 1, 1, 1) not in zp
    assert (1, 1, 1, 0) in zp and (0, 1, 1, 1) in zp
    assert polytope_dimension(zp) == 4 == zp.n

    zp2 = enumerate_feasible(inst, workers=2)
    assert zp2.vectors == zp.vectors

    # Coinciding blue and red points never share a pair of groups
    inst = Instance.from_points([(0, 0)], [(0, 0)])
    assert enumerate_feasible(inst).vectors == ((0, 0), (0, 1), (1, 0))

    inst = Instance.from_points([(i, 0) for i in range(13)], [(i, 1) for i in range(12)])
    with raises(LabLimitError):
        enumerate_feasible(inst)


def test_check_inequality():

    inst = triangle_instance(1, 2)
    zp = enumerate_feasible(inst)
    q = inclusion_inequality(inst, inst.blue, 3, 0)
    report = check_inequality(zp, q)
    assert report.verdict is FacetVerdict.FACET and report.facet
    assert report.valid and report.violating is None
    assert report.face_dimension == report.polytope_dimension - 1 == 4

    inst = triangle_instance()
    zp = enumerate_feasible(inst)

    # All three blue points fit in one group
    report = check_inequality(zp, inequality({(0, 0): 1, (1, 0): 1, (2, 0): 1, (3, 0): 1}, 2))
    assert report.verdict is FacetVerdict.NOT_VALID
    assert not report.valid
    assert sum(report.violating) == 3

    report = check_inequality(zp, inequality({(0, 0): 1}, 2))
    assert report.verdict is FacetVerdict.NOT_SUPPORTING
    assert report.tight_count == 0 and report.face_dimension == -1

    report = check_inequality(zp, inequality({(0, 0): 1, (1, 0): 1}, 2))
    assert report.verdict is FacetVerdict.PROPER_FACE
    assert report.tight_count == 3 and report.face_dimension == 2

    # The lower bound of a variable
    report = check_inequality(zp, inequality({(3, 0): -1}, 0))
    assert report.verdict is FacetVerdict.FACET

    data = report.to_dict()
    assert data["verdict"] == "Facet"
    assert data["polytope"] == "Proj_z"
    assert data["inequality"]["rhs"] == 0

    with raises(ValueError):
        check_inequality(zp, inequality({(0, 1): 1}, 1))


def test_audit_cuts():

    inst = triangle_instance(1, 2)
    reports = audit_cuts(inst)
    assert reports
    assert all(r.valid for r in reports)
    inclusion = [r for r in reports if r.inequality.kind is CutKind.CONVEX_INCLUSION]
    assert inclusion and all(r.facet for r in inclusion)

    reports = audit_cuts(inst, ["farkas"], workers=2)
    assert all(r.inequality.kind is CutKind.FARKAS_PROJECTION for r in reports)


def test_theorem_suite():

    report = theorem_suite(seeds=2)
    assert report.ok, report.contradictions
    assert len(report.rows) == 2 * len(THEOREM_CASES)
    summary = report.summary()
    assert summary["inclusion-minimal"].cases == 2
    assert summary["inclusion-minimal"].facets == 2
    assert summary["obstacle-trivial"].non_facets == 2
    assert summary["dimension"].contradictions == 0
    assert summary["obstacle-extension"].lemmas == 4
    for row in report.rows:
        assert all(lemma["holds"] for lemma in row.lemmas)

    data = json.loads(report.to_json())
    assert data["polytope"] == "Proj_z"
    assert data["cases"] == len(report.rows)
    assert data["contradictions"] == []
    assert "contradictions" in report.to_text()

    # Seeds and workers do not change the report
    a = theorem_suite(["obstacle-minimal"], seeds=2, first_seed=5)
    b = theorem_suite(["obstacle-minimal"], seeds=2, first_seed=5, options=LabOptions(workers=2))
    assert a.to_dict() == b.to_dict()
    assert [row.seed for row in a.rows] == [5, 6]

    with raises(ValueError):
        theorem_suite(["no-such-theorem"])


def test_theorem_suite_all_seeds():
    need_slow()

    report = theorem_suite(seeds=50)
    assert report.ok, report.contradictions[:5]
    assert len(report.rows) == 50 * len(THEOREM_CASES)
    summary = report.summary()
    assert summary["obstacle-extension"].lemmas == 100
    assert summary["inclusion-minimal"].facets == 50


def test_lemmas(monkeypatch):

    # The big triangle already holds both red points
    inst = Instance.from_points([(-2, -2), (2, -2), (0, 3), (0, -5)], [(-1, 0), (1, 0)])
    assert not inst.is_blue(4) and not inst.is_blue(5)
    assert not lemma_holds(inst, ("obstacle-extension", 4, 5, [0, 1, 2], 3))
    assert lemma_holds(inst, ("obstacle-extension", 4, 5, [0, 1], 3))
    with raises(ValueError):
        lemma_holds(inst, ("no-such-lemma", 4, 5, [0, 1], 3))

    def failing(rng):
        return TheoremCase(
            "failing", inst, [], lemmas=[("obstacle-extension", 4, 5, [0, 1, 2], 3)]
        )

    monkeypatch.setitem(THEOREM_CASES, "failing", failing)
    report = theorem_suite(["failing"], seeds=1)
    assert not report.ok
    assert any("lemma obstacle-extension fails" in c for c in report.contradictions)
    assert report.rows[0].lemmas == [{"lemma": "obstacle-extension", "holds": False}]


def test_contradictions(monkeypatch):

    def bogus(rng):
        inst = triangle_instance()
        return TheoremCase("bogus", inst, [(inequality({(0, 0): 1, (1, 0): 1}, 2), True)])

    monkeypatch.setitem(THEOREM_CASES, "bogus", bogus)
    report = theorem_suite(["bogus"], seeds=1)
    assert not report.ok
    assert len(report.contradictions) == 1
    assert "expected a facet" in report.contradictions[0]
    assert "CONTRADICTION" in report.to_text()
    assert report.summary()["bogus"].non_facets == 1

    with raises(TheoremContradiction):
        theorem_suite(["bogus"], seeds=1, options=LabOptions(strict=True))


run_tests_if_main()
