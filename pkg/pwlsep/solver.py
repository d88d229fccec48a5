# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
The exact branch-and-cut solver.

The relaxation lives in the space of the assignment variables z only: the
assignment rows, the bounds 0 ≤ z ≤ 1, branching fixings and the cuts in
the pool. Separation of the plugin families tightens fractional points;
integral points that fail the separability test receive a Farkas
projection cut, so every incumbent is feasible and every bound is valid.
"""

import math
import time
import heapq
import logging
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .core import Dict, env_int, format_rational
from .core import LinearProgram, NumericFailure, solve_exact, solve_float
from .core import Assignment, BigMConfig, is_feasible, objective_value
from .core import iter_feasible, check_enumeration_limit, farkas_projection_cut
from .core import CutPool, PoolConfig, separate_cuts, as_zmap, z_name

logger = logging.getLogger(__name__)

OPTIMAL = "Optimal"
INCOMPLETE = "Incomplete"

INTEGRALITY_TOL = 1e-6


class SolverOptions(object):
    """ SolverOptions(time_limit=None, node_limit=None, cut_families=None,
    workers=None, seed=0, max_rounds=5, threshold=1/100, exact_lp=False,
    symmetry=True, tol=1e-9)

    Settings of the branch-and-cut solver.

    Parameters
    ----------
    time_limit : float | None
        Wall clock limit in seconds; the solve returns Incomplete when hit.
    node_limit : int | None
        Maximum number of processed nodes.
    cut_families : list of str | None
        Names of the cut families used for separation; None means all
        registered families, an empty list disables separation (lazy
        projection cuts are always used).
    workers : int | None
        Threads for separation. Defaults to PWLSEP_WORKERS or 1. Results
        do not depend on it.
    seed : int
        Recorded in the output only; the solver is deterministic.
    max_rounds : int
        Separation rounds per node before branching.
    threshold : Rational
        Minimum violation of separated cuts.
    exact_lp : bool
        Solve every relaxation with the rational simplex.
    symmetry : bool
        Restrict the lowest blue and the lowest red point to group 0.
    tol : float
        Tolerance of the floating point LP engine.
    """

    def __init__(
        self,
        time_limit=None,
        node_limit=None,
        cut_families=None,
        workers=None,
        seed=0,
        max_rounds=5,
        threshold=Fraction(1, 100),
        exact_lp=False,
        symmetry=True,
        tol=1e-9,
    ):
        self.time_limit = None if time_limit is None else float(time_limit)
        self.node_limit = None if node_limit is None else int(node_limit)
        self.cut_families = None if cut_families is None else list(cut_families)
        if workers is None:
            workers = env_int("PWLSEP_WORKERS", 1)
        self.workers = max(1, int(workers))
        self.seed = int(seed)
        self.max_rounds = int(max_rounds)
        self.threshold = Fraction(threshold)
        self.exact_lp = bool(exact_lp)
        self.symmetry = bool(symmetry)
        self.tol = float(tol)

    def __repr__(self):
        return "<SolverOptions %s>" % self.to_dict()

    def to_dict(self):
        """ The options as recorded in result files (workers excluded).
        """
        return {
            "time_limit": self.time_limit,
            "node_limit": self.node_limit,
            "cut_families": self.cut_families,
            "seed": self.seed,
            "max_rounds": self.max_rounds,
            "threshold": format_rational(self.threshold),
            "exact_lp": self.exact_lp,
            "symmetry": self.symmetry,
        }


class Node(object):
    """ Node(fixed, bound, depth, ident)

    A branch-and-bound node: fixings of z-variables to 0 or 1, the LP
    bound inherited from its parent and its depth. ``cuts`` lists the
    cuts found while processing it.
    """

    def __init__(self, fixed, bound, depth, ident):
        self.fixed = dict(fixed)
        self.bound = bound
        self.depth = depth
        self.ident = ident
        self.cuts = []

    def __repr__(self):
        return "<Node %i depth=%i bound=%s fixed=%i>" % (
            self.ident,
            self.depth,
            self.bound,
            len(self.fixed),
        )

    def __lt__(self, other):
        return self.ident < other.ident


class SolveResult(object):
    """ SolveResult(inst, status, incumbent, bound, stats, options=None, pool=None)

    The outcome of solve() or solve_enumerative(). The incumbent is
    re-verified on construction; ``separators`` maps every (k, l) pair to
    its Hyperplane.
    """

    def __init__(self, inst, status, incumbent, bound, stats, options=None, pool=None):
        witness = is_feasible(inst, incumbent)
        if not witness:  # pragma: no cover
            raise RuntimeError("Incumbent failed exact verification.")
        self.instance = inst
        self.status = status
        self.incumbent = incumbent
        self.separators = witness.separators
        self.objective = objective_value(incumbent)
        self.bound = max(bound, self.objective)
        self.stats = stats
        self.options = options
        self.pool = pool

    def __repr__(self):
        return "<SolveResult %s: %i assigned, %i outliers, gap %s>" % (
            self.status,
            self.objective,
            len(self.outliers),
            self.gap,
        )

    @property
    def outliers(self):
        return self.incumbent.outliers

    @property
    def gap(self):
        return self.bound - self.objective

    @property
    def optimal(self):
        return self.status == OPTIMAL

    def to_dict(self, as_float=False):
        """ The result as a JSON-ready dict; rationals are exact unless
        as_float is given. Only ``stats.time`` depends on the run.
        """
        inst = self.instance
        separators = []
        for (k, l), h in sorted(self.separators.items()):
            separators.append(
                {
                    "pair": [k, l],
                    "p": [format_rational(v, as_float) for v in h.p],
                    "q": format_rational(h.q, as_float),
                }
            )
        out = {
            "status": self.status,
            "objective": self.objective,
            "outliers": self.outliers,
            "n_outliers": len(self.outliers),
            "bound": self.bound,
            "gap": self.gap,
            "assignment": {
                "groups": list(self.incumbent.groups),
                "z": sorted(z_name(v) for v in self.incumbent.zmap),
            },
            "separators": separators,
            "stats": dict(self.stats),
            "metadata": {
                "pwlsep": __version__,
                "instance": inst.name,
                "blue_groups": inst.blue_groups,
                "red_groups": inst.red_groups,
                "M": format_rational(BigMConfig.default_for(inst).M, as_float),
                "note": "outliers are points assigned to no group",
            },
        }
        if self.options is not None:
            out["options"] = self.options.to_dict()
        return out


## Heuristic


def repair_feasibility(inst, zstar):
    """ repair_feasibility(inst, zstar)

    Round a z-point (each point goes to its largest group value when that
    is at least one half) and unassign points until the assignment is
    feasible. Each step takes the first inseparable pair and drops the
    point of its certificate support with the smallest z-value.
    """
    zmap = as_zmap(inst, zstar)
    half = Fraction(1, 2)
    groups = []
    for i in range(inst.m):
        values = [zmap.get((i, g), 0) for g in range(inst.n_groups(i))]
        best = max(range(len(values)), key=lambda g: (values[g], -g))
        groups.append(best if values[best] >= half else None)
    a = Assignment(inst, groups)
    while True:
        witness = is_feasible(inst, a)
        if witness:
            return a
        k, l = witness.failing_pair
        cert = witness.certificate
        support = [(i, k) for i, _ in cert.support_blue]
        support += [(j, l) for j, _ in cert.support_red]
        i, _ = min(support, key=lambda v: (zmap.get(v, 0), v))
        a = a.without([i])


## Branch and cut


class _Search(object):
    """ State of one branch-and-cut run. """

    def __init__(self, inst, options):
        self.inst = inst
        self.options = options
        self.cfg = BigMConfig.default_for(inst)
        self.pool = CutPool()
        self.pool_config = PoolConfig(options.threshold, options.cut_families)
        self.separation = options.cut_families is None or len(options.cut_families) > 0
        self.incumbent = Assignment.outliers_only(inst)
        self.value = 0
        self.stats = Dict(
            nodes=0,
            lp_solves=0,
            exact_fallbacks=0,
            rounds=0,
            lazy_cuts=0,
            heuristic_updates=0,
            max_depth=0,
            cuts=Dict(),
        )
        self.next_ident = 0

    def new_node(self, fixed, bound, depth):
        node = Node(fixed, bound, depth, self.next_ident)
        self.next_ident += 1
        return node

    def update(self, a, source):
        value = objective_value(a)
        if value > self.value:
            self.incumbent, self.value = a, value
            if source == "heuristic":
                self.stats.heuristic_updates += 1
            logger.info("New incumbent with %i assigned points (%s)" % (value, source))

    def relaxation(self, node):
        inst = self.inst
        lower = [node.fixed.get(v, 0) for v in inst.z_vars]
        upper = [node.fixed.get(v, 1) for v in inst.z_vars]
        rows, senses, rhs = [], [], []
        for i in range(inst.m):
            if inst.n_groups(i) > 1:
                row = [0] * inst.n_vars
                for g in range(inst.n_groups(i)):
                    row[inst.z_position((i, g))] = 1
                rows.append(row)
                senses.append("<=")
                rhs.append(1)
        for cut in self.pool:
            row = [0] * inst.n_vars
            for v, c in cut.coeffs.items():
                row[inst.z_position(v)] = c
            rows.append(row)
            senses.append("<=")
            rhs.append(cut.rhs)
        if not rows:
            rows, senses, rhs = [[0] * inst.n_vars], ["<="], [0]
        return LinearProgram(
            rows,
            senses,
            rhs,
            objective=[1] * inst.n_vars,
            lower=lower,
            upper=upper,
            maximize=True,
            names=[z_name(v) for v in inst.z_vars],
        )

    def solve_lp(self, lp):
        self.stats.lp_solves += 1
        if not self.options.exact_lp:
            try:
                return solve_float(lp, self.options.tol)
            except NumericFailure as err:
                logger.warning("Falling back to the exact LP engine: %s" % err)
                self.stats.exact_fallbacks += 1
        return solve_exact(lp)

    def process(self, node, executor):
        """ Solve a node; returns child nodes (possibly none).
        """
        inst = self.inst
        rounds = 0
        while True:
            outcome = self.solve_lp(self.relaxation(node))
            if not outcome.optimal:
                return []
            objective = outcome.objective
            if isinstance(objective, Fraction):
                bound = objective.numerator // objective.denominator
            else:
                bound = int(math.floor(objective + INTEGRALITY_TOL))
            node.bound = min(node.bound, bound)
            if node.bound <= self.value:
                return []
            values = [float(v) for v in outcome.primal]
            integral = all(abs(v - round(v)) <= INTEGRALITY_TOL for v in values)
            if integral:
                a = Assignment.from_z(inst, [int(round(v)) for v in values])
                witness = is_feasible(inst, a)
                if witness:
                    self.update(a, "relaxation")
                    return []
                k, l = witness.failing_pair
                cut = farkas_projection_cut(inst, k, l, witness.certificate, self.cfg)
                if not self.pool.add(cut, a.zmap):  # pragma: no cover
                    raise RuntimeError("Projection cut did not cut off the assignment.")
                node.cuts.append(cut)
                self.stats.lazy_cuts += 1
                continue

            zmap = as_zmap(inst, values)
            self.update(repair_feasibility(inst, zmap), "heuristic")
            if node.bound <= self.value:
                return []
            if self.separation and rounds < self.options.max_rounds:
                rounds += 1
                self.stats.rounds += 1
                cuts = separate_cuts(inst, zmap, self.pool_config, executor=executor)
                new = [c for c in cuts if self.pool.add(c, zmap)]
                node.cuts.extend(new)
                if new:
                    continue
            return self.branch(node, values)

    def branch(self, node, values):
        inst = self.inst
        best, var = None, None
        for v, x in zip(inst.z_vars, values):
            if v in node.fixed:
                continue
            distance = abs(x - 0.5)
            if distance < 0.5 - INTEGRALITY_TOL and (best is None or distance < best):
                best, var = distance, v
        if var is None:  # pragma: no cover
            raise RuntimeError("No fractional variable to branch on.")
        children = []
        for value in (1, 0):
            fixed = dict(node.fixed)
            fixed[var] = value
            children.append(self.new_node(fixed, node.bound, node.depth + 1))
        self.stats.max_depth = max(self.stats.max_depth, node.depth + 1)
        return children


def solve(inst, options=None):
    """ solve(inst, options=None)

    Find an assignment of the instance's points to groups that maximizes
    the number of assigned points, by branch and cut. Returns a
    SolveResult; its status is "Optimal" with gap 0, or "Incomplete" when
    a time or node limit stopped the search (the bound stays valid).
    """
    options = options or SolverOptions()
    t0 = time.time()
    search = _Search(inst, options)

    root_fixed = {}
    if options.symmetry:
        for indices in (inst.blue, inst.red):
            if indices:
                i = indices[0]
                for g in range(1, inst.n_groups(i)):
                    root_fixed[(i, g)] = 0
    heap = []
    root = search.new_node(root_fixed, inst.m, 0)
    heapq.heappush(heap, (-root.bound, root.ident, root))

    status = OPTIMAL
    executor = ThreadPoolExecutor(options.workers) if options.workers > 1 else None
    try:
        while heap:
            if heap[0][2].bound <= search.value:
                break
            if options.time_limit is not None and time.time() - t0 > options.time_limit:
                status = INCOMPLETE
                break
            if options.node_limit is not None and search.stats.nodes >= options.node_limit:
                status = INCOMPLETE
                break
            _, _, node = heapq.heappop(heap)
            search.stats.nodes += 1
            for child in search.process(node, executor):
                heapq.heappush(heap, (-child.bound, child.ident, child))
    finally:
        if executor is not None:
            executor.shutdown()

    open_bounds = [n.bound for _, _, n in heap]
    bound = max([search.value] + open_bounds) if status == INCOMPLETE else search.value
    search.stats.cuts = search.pool.counts()
    search.stats.time = round(time.time() - t0, 3)
    logger.info(
        "Solve finished (%s): %i assigned, %i nodes, %i cuts"
        % (status, search.value, search.stats.nodes, len(search.pool))
    )
    return SolveResult(
        inst, status, search.incumbent, bound, search.stats, options, search.pool
    )


def solve_enumerative(inst):
    """ solve_enumerative(inst)

    Exact optimum by enumerating every feasible assignment. Only for
    instances with at most 24 z-variables (LabLimitError otherwise); used
    as the reference for solve().
    """
    check_enumeration_limit(inst)
    t0 = time.time()
    best, best_value, count = None, -1, 0
    for z in iter_feasible(inst):
        count += 1
        value = sum(z)
        if value > best_value:
            best, best_value = z, value
    a = Assignment.from_z(inst, best)
    stats = Dict(enumerated=count, time=round(time.time() - t0, 3))
    return SolveResult(inst, OPTIMAL, a, best_value, stats)
