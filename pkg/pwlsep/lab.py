# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
The polytope lab: exact facet checks on small instances.

The projection of the formulation onto the assignment variables is the
convex hull of the feasible 0/1 assignments. For instances with at most
24 z-variables the lab enumerates all of them, computes the affine
dimension of the polytope and of the face an inequality defines, and
classifies the inequality:

  * Facet - valid, and the face has dimension one less than the polytope.
  * ProperFaceNotFacet - valid and tight somewhere, but a smaller face.
  * NotValid - some feasible assignment violates it.
  * NotSupporting - valid but tight nowhere.

``theorem_suite`` runs the theorem cases of ``pwlsep.generators`` and
reports every verdict that disagrees with the facet theorems, and every
lemma check on obstacles that fails.
"""

import logging
import itertools
from enum import Enum
from concurrent.futures import ThreadPoolExecutor

from .core import Dict, EchelonBasis, BaseProgressIndicator, env_int, dumps_json
from .core import check_enumeration_limit, iter_feasible, generate_cuts
from .core import check_obstacle_extension, check_separable_extension
from .generators import THEOREM_CASES, generate_case

logger = logging.getLogger(__name__)

POLYTOPE = "Proj_z"


class TheoremContradiction(RuntimeError):
    """ Raised in strict mode when a verdict contradicts a facet theorem.
    """


class FacetVerdict(Enum):
    FACET = "Facet"
    PROPER_FACE = "ProperFaceNotFacet"
    NOT_VALID = "NotValid"
    NOT_SUPPORTING = "NotSupporting"


class LabOptions(object):
    """ LabOptions(workers=None, strict=False)

    Parameters
    ----------
    workers : int | None
        Threads for enumeration and for running cases. Defaults to
        PWLSEP_WORKERS or 1. Reports do not depend on it.
    strict : bool
        Raise TheoremContradiction at the first contradiction instead of
        collecting them.
    """

    def __init__(self, workers=None, strict=False):
        if workers is None:
            workers = env_int("PWLSEP_WORKERS", 1)
        self.workers = max(1, int(workers))
        self.strict = bool(strict)

    def __repr__(self):
        return "<LabOptions workers=%i strict=%s>" % (self.workers, self.strict)


class ZPolytope(object):
    """ ZPolytope(inst, vectors)

    The feasible 0/1 assignments of an instance, as sorted z-vector tuples
    ordered like ``inst.z_vars``. Their convex hull is the polytope.
    """

    def __init__(self, inst, vectors):
        self.instance = inst
        self.vectors = tuple(sorted(set(tuple(int(v) for v in z) for z in vectors)))
        for z in self.vectors:
            if len(z) != inst.n_vars:
                raise ValueError("Vector of length %i, expected %i." % (len(z), inst.n_vars))
        self._dimension = None

    def __repr__(self):
        return "<ZPolytope of %i points in dimension %i>" % (len(self.vectors), self.n)

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, z):
        return tuple(z) in set(self.vectors)

    @property
    def n(self):
        """ The ambient dimension (number of z-variables).
        """
        return self.instance.n_vars

    @property
    def dimension(self):
        if self._dimension is None:
            self._dimension = affine_rank(self.vectors, self.n)
        return self._dimension


def affine_rank(vectors, n=None):
    """ affine_rank(vectors, n=None)

    The dimension of the affine hull of the vectors (-1 when there are
    none). Stops early once the rank reaches n.
    """
    vectors = list(vectors)
    if not vectors:
        return -1
    base = vectors[0]
    basis = EchelonBasis()
    for z in vectors[1:]:
        basis.add([a - b for a, b in zip(z, base)])
        if n is not None and basis.rank >= n:
            break
    return basis.rank


def enumerate_feasible(inst, workers=None, progress=None):
    """ enumerate_feasible(inst, workers=None, progress=None)

    Enumerate every feasible assignment of an instance with at most 24
    z-variables and return the ZPolytope. Work is split into blocks by
    the options of the first two points and the blocks run in a thread
    pool; the result does not depend on the number of workers.

    Raises LabLimitError for larger instances.
    """
    check_enumeration_limit(inst)
    if workers is None:
        workers = env_int("PWLSEP_WORKERS", 1)
    progress = progress or BaseProgressIndicator("enumerate")
    options = [[None] + list(range(inst.n_groups(i))) for i in range(min(2, inst.m))]
    prefixes = list(itertools.product(*options))
    progress.start("enumerating", "blocks", len(prefixes))

    def block(prefix):
        found = list(iter_feasible(inst, prefix))
        progress.increase_progress(1)
        return found

    if workers > 1:
        with ThreadPoolExecutor(workers) as executor:
            blocks = list(executor.map(block, prefixes))
    else:
        blocks = [block(prefix) for prefix in prefixes]
    vectors = [z for found in blocks for z in found]
    progress.finish()
    logger.debug("Enumerated %i feasible assignments of %r" % (len(vectors), inst))
    return ZPolytope(inst, vectors)


def polytope_dimension(zp):
    """ polytope_dimension(zp)

    Affine dimension of the polytope; it equals zp.n when the polytope is
    full-dimensional.
    """
    return zp.dimension


class FacetReport(object):
    """ FacetReport(inequality, valid, violating, tight_count, face_dimension,
    polytope_dimension, verdict)

    The outcome of check_inequality(). ``violating`` is the first
    violating assignment (None when valid); the face dimension is -1 when
    no assignment is tight.
    """

    def __init__(
        self,
        inequality,
        valid,
        violating,
        tight_count,
        face_dimension,
        polytope_dimension,
        verdict,
    ):
        self.inequality = inequality
        self.valid = valid
        self.violating = violating
        self.tight_count = tight_count
        self.face_dimension = face_dimension
        self.polytope_dimension = polytope_dimension
        self.verdict = verdict
        self.polytope = POLYTOPE

    def __repr__(self):
        return "<FacetReport %s: face %i of %i, %i tight>" % (
            self.verdict.value,
            self.face_dimension,
            self.polytope_dimension,
            self.tight_count,
        )

    @property
    def facet(self):
        return self.verdict is FacetVerdict.FACET

    def to_dict(self, as_float=False):
        return {
            "inequality": self.inequality.to_dict(as_float),
            "verdict": self.verdict.value,
            "valid": self.valid,
            "violating": None if self.violating is None else list(self.violating),
            "tight_count": self.tight_count,
            "face_dimension": self.face_dimension,
            "polytope_dimension": self.polytope_dimension,
            "polytope": self.polytope,
        }


def check_inequality(zp, q):
    """ check_inequality(zp, q)

    Classify the ZInequality q on the polytope zp, exactly: validity over
    every feasible assignment, then the affine dimension of the tight
    ones. Returns a FacetReport.
    """
    inst = zp.instance
    try:
        terms = [(inst.z_position(v), c) for v, c in q.coeffs.items()]
    except KeyError as err:
        raise ValueError("Inequality uses a variable the instance lacks: %s" % (err,))
    tight = []
    for z in zp.vectors:
        lhs = sum(c * z[p] for p, c in terms)
        if lhs > q.rhs:
            return FacetReport(q, False, z, 0, -1, zp.dimension, FacetVerdict.NOT_VALID)
        if lhs == q.rhs:
            tight.append(z)
    face = affine_rank(tight, zp.n)
    if not tight:
        verdict = FacetVerdict.NOT_SUPPORTING
    elif face == zp.dimension - 1:
        verdict = FacetVerdict.FACET
    else:
        verdict = FacetVerdict.PROPER_FACE
    return FacetReport(q, True, None, len(tight), face, zp.dimension, verdict)


def audit_cuts(inst, names=None, workers=None, progress=None):
    """ audit_cuts(inst, names=None, workers=None, progress=None)

    Generate all cuts of the given families (all by default) for an
    instance and check each of them. Returns a list of FacetReport.
    """
    zp = enumerate_feasible(inst, workers, progress)
    return [check_inequality(zp, q) for q in generate_cuts(inst, names)]


## Theorem suite


def lemma_holds(inst, lemma):
    """ lemma_holds(inst, lemma)

    Check a lemma tuple (kind, j1, j2, S, extra) of a TheoremCase on its
    instance.
    """
    kind, j1, j2, S, extra = lemma
    pts = inst.points
    args = (pts[j1], pts[j2], [pts[i] for i in S], pts[extra])
    if kind == "obstacle-extension":
        return check_obstacle_extension(*args)
    if kind == "separable-extension":
        return check_separable_extension(*args) is not None
    raise ValueError("Unknown lemma kind %r." % (kind,))


def _judge(case, zp, options, progress):
    """ Check a case; returns its row of the report. """
    inst = case.instance
    row = Dict(
        theorem=case.theorem,
        seed=case.seed,
        instance=inst.to_dict(),
        n=zp.n,
        dimension=zp.dimension,
        checks=[],
        lemmas=[],
        contradictions=[],
    )
    found = []
    if zp.dimension != zp.n:
        found.append("polytope has dimension %i < %i" % (zp.dimension, zp.n))
    for q, expected in case.checks:
        report = check_inequality(zp, q)
        check = report.to_dict()
        check["expected_facet"] = expected
        row.checks.append(check)
        if not report.valid:
            found.append("inequality %r is violated by %s" % (q, list(report.violating)))
        elif expected is True and not report.facet:
            found.append("expected a facet, got %s for %r" % (report.verdict.value, q))
        elif expected is False and report.facet:
            found.append("expected no facet, got Facet for %r" % (q,))
    for lemma in case.lemmas:
        holds = lemma_holds(inst, lemma)
        row.lemmas.append({"lemma": lemma[0], "holds": holds})
        if not holds:
            found.append("lemma %s fails for %r" % (lemma[0], lemma[1:]))
    for message in found:
        text = "%s seed %s: %s" % (case.theorem, case.seed, message)
        row.contradictions.append(text)
        progress.write("Contradiction: " + text)
        if options.strict:
            raise TheoremContradiction(text)
    return row


class SuiteReport(object):
    """ SuiteReport(rows)

    Rows of a theorem suite run (one per case), in generation order.
    """

    def __init__(self, rows):
        self.rows = list(rows)

    def __repr__(self):
        return "<SuiteReport %i cases, %i contradictions>" % (
            len(self.rows),
            len(self.contradictions),
        )

    @property
    def contradictions(self):
        return [c for row in self.rows for c in row.contradictions]

    @property
    def ok(self):
        return not self.contradictions

    def summary(self):
        """ Per theorem: cases, facet and non-facet verdicts, lemma checks and
        contradictions.
        """
        out = Dict()
        for row in self.rows:
            entry = out.setdefault(
                row.theorem,
                Dict(cases=0, facets=0, non_facets=0, no_claim=0, lemmas=0, contradictions=0),
            )
            entry.cases += 1
            entry.contradictions += len(row.contradictions)
            entry.lemmas += len(row.lemmas)
            for check in row.checks:
                if check["expected_facet"] is None:
                    entry.no_claim += 1
                elif check["verdict"] == FacetVerdict.FACET.value:
                    entry.facets += 1
                else:
                    entry.non_facets += 1
        return out

    def to_dict(self):
        return {
            "polytope": POLYTOPE,
            "cases": len(self.rows),
            "summary": {k: dict(v) for k, v in self.summary().items()},
            "contradictions": self.contradictions,
            "rows": [dict(row) for row in self.rows],
        }

    def to_json(self):
        return dumps_json(self.to_dict())

    def to_text(self):
        lines = [
            "Theorem suite on %s: %i cases, %i contradictions"
            % (POLYTOPE, len(self.rows), len(self.contradictions))
        ]
        for name, entry in self.summary().items():
            lines.append(
                "  %-20s %4i cases %5i facet %5i not facet %4i unclaimed"
                " %4i lemmas %4i contradictions"
                % (
                    name,
                    entry.cases,
                    entry.facets,
                    entry.non_facets,
                    entry.no_claim,
                    entry.lemmas,
                    entry.contradictions,
                )
            )
        for text in self.contradictions:
            lines.append("CONTRADICTION " + text)
        return "\n".join(lines) + "\n"


def theorem_suite(theorems=None, seeds=50, first_seed=0, options=None, progress=None):
    """ theorem_suite(theorems=None, seeds=50, first_seed=0, options=None, progress=None)

    Run the named theorem cases (all registered kinds by default) for
    ``seeds`` consecutive seeds each, starting at first_seed. Returns a
    SuiteReport; with ``options.strict`` the first contradiction raises
    TheoremContradiction.
    """
    options = options or LabOptions()
    progress = progress or BaseProgressIndicator("theorem suite")
    names = list(THEOREM_CASES) if theorems is None else list(theorems)
    for name in names:
        if name not in THEOREM_CASES:
            raise ValueError(
                "Unknown theorem case %r; available: %s" % (name, ", ".join(THEOREM_CASES))
            )
    jobs = [(name, s) for name in names for s in range(first_seed, first_seed + seeds)]
    progress.start("checking", "cases", len(jobs))

    def run(job):
        case = generate_case(*job)
        zp = enumerate_feasible(case.instance, workers=1)
        row = _judge(case, zp, options, progress)
        progress.increase_progress(1)
        return row

    try:
        if options.workers > 1:
            with ThreadPoolExecutor(options.workers) as executor:
                rows = list(executor.map(run, jobs))
        else:
            rows = [run(job) for job in jobs]
    except TheoremContradiction as err:
        progress.fail(str(err))
        raise
    report = SuiteReport(rows)
    progress.finish()
    logger.info("Theorem suite: %r" % report)
    return report
