# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
Instances, assignments and the big-M mixed integer model.

An instance is a list of labelled points with a budget of blue groups and
red groups. An assignment places every point in at most one group of its
own class (or leaves it out as an outlier). It is feasible when every
blue group is linearly separable from every red group.
"""

import logging
from fractions import Fraction

from .util import Dict, as_point, as_rational, format_rational
from .lp import LinearProgram, solve_exact
from .geometry import separate
from .family import CutKind, Provenance, ZInequality, z_name

logger = logging.getLogger(__name__)

BLUE = "B"
RED = "R"


class InstanceError(ValueError):
    """ Raised for malformed instance data or files.
    """


class Instance(object):
    """ Instance(points, labels, blue_groups=1, red_groups=1, name=None)

    A labelled point set with group budgets. Immutable.

    Parameters
    ----------
    points : list of sequences
        The m points; coordinates are converted to Fractions.
    labels : list of str
        "B" or "R" per point.
    blue_groups, red_groups : int
        Number of blue and red groups (at least one each).
    name : str | None
        Optional name, recorded in output metadata.
    """

    def __init__(self, points, labels, blue_groups=1, red_groups=1, name=None):
        try:
            self._points = tuple(as_point(x) for x in points)
        except (TypeError, ValueError) as err:
            raise InstanceError("Invalid point coordinates: %s" % err)
        self._labels = tuple(str(v).upper() for v in labels)
        if not self._points:
            raise InstanceError("An instance needs at least one point.")
        if len(self._labels) != len(self._points):
            raise InstanceError(
                "Got %i labels for %i points." % (len(self._labels), len(self._points))
            )
        bad = [v for v in self._labels if v not in (BLUE, RED)]
        if bad:
            raise InstanceError("Labels must be 'B' or 'R', got %r." % bad[0])
        d = len(self._points[0])
        if d < 1:
            raise InstanceError("Points need at least one coordinate.")
        for i, x in enumerate(self._points):
            if len(x) != d:
                raise InstanceError(
                    "Point %i has dimension %i, expected %i." % (i, len(x), d)
                )
        self._dimension = d
        for budget in (blue_groups, red_groups):
            if int(budget) != budget or budget < 1:
                raise InstanceError("Group budgets must be positive integers.")
        self._blue_groups = int(blue_groups)
        self._red_groups = int(red_groups)
        self.name = name
        self._blue = tuple(i for i, v in enumerate(self._labels) if v == BLUE)
        self._red = tuple(i for i, v in enumerate(self._labels) if v == RED)
        self._z_vars = tuple(
            (i, g) for i in range(len(self._points)) for g in range(self.n_groups(i))
        )
        self._z_index = {v: n for n, v in enumerate(self._z_vars)}

    @classmethod
    def from_points(cls, blue, red, blue_groups=1, red_groups=1, name=None):
        """ from_points(blue, red, blue_groups=1, red_groups=1, name=None)

        Build an instance from separate blue and red point lists; blue
        points come first.
        """
        points = list(blue) + list(red)
        labels = [BLUE] * len(blue) + [RED] * len(red)
        return cls(points, labels, blue_groups, red_groups, name)

    def with_budgets(self, blue_groups, red_groups):
        """ A copy of this instance with other group budgets.
        """
        return Instance(self._points, self._labels, blue_groups, red_groups, self.name)

    def __repr__(self):
        return "<Instance %s: %i blue, %i red in R^%i, groups %i/%i>" % (
            self.name or "",
            len(self._blue),
            len(self._red),
            self._dimension,
            self._blue_groups,
            self._red_groups,
        )

    def __eq__(self, other):
        return isinstance(other, Instance) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self._points, self._labels, self._blue_groups, self._red_groups)

    @property
    def points(self):
        return self._points

    @property
    def labels(self):
        return self._labels

    @property
    def m(self):
        """ The number of points.
        """
        return len(self._points)

    @property
    def dimension(self):
        return self._dimension

    @property
    def blue(self):
        """ Indices of the blue points, ascending.
        """
        return self._blue

    @property
    def red(self):
        """ Indices of the red points, ascending.
        """
        return self._red

    @property
    def blue_groups(self):
        return self._blue_groups

    @property
    def red_groups(self):
        return self._red_groups

    @property
    def pairs(self):
        """ All (k, l) pairs of a blue group k and a red group l.
        """
        return [(k, l) for k in range(self._blue_groups) for l in range(self._red_groups)]

    def is_blue(self, i):
        return self._labels[i] == BLUE

    def n_groups(self, i):
        """ Number of groups available to point i.
        """
        return self._blue_groups if self._labels[i] == BLUE else self._red_groups

    @property
    def z_vars(self):
        """ The z-variables (i, g), ordered by point index then group.
        """
        return self._z_vars

    @property
    def n_vars(self):
        return len(self._z_vars)

    def z_position(self, var):
        """ Position of z-variable (i, g) in ``z_vars``.
        """
        return self._z_index[tuple(var)]

    def max_abs_coordinate(self):
        return max(abs(v) for x in self._points for v in x)

    def to_dict(self):
        """ The instance as a JSON-ready dict (rationals as ints or strings).
        """
        out = {
            "dimension": self._dimension,
            "points": [[format_rational(v) for v in x] for x in self._points],
            "labels": list(self._labels),
            "blue_groups": self._blue_groups,
            "red_groups": self._red_groups,
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_dict(cls, data):
        """ from_dict(data)

        Inverse of to_dict(); validates the declared dimension.
        """
        try:
            points = data["points"]
            labels = data["labels"]
        except (KeyError, TypeError):
            raise InstanceError("Instance data needs 'points' and 'labels'.")
        inst = cls(
            points,
            labels,
            data.get("blue_groups", 1),
            data.get("red_groups", 1),
            data.get("name"),
        )
        if "dimension" in data and int(data["dimension"]) != inst.dimension:
            raise InstanceError(
                "Declared dimension %s does not match the points (%i)."
                % (data["dimension"], inst.dimension)
            )
        return inst


class Assignment(object):
    """ Assignment(inst, groups)

    Group of every point: ``groups[i]`` is a group index of the point's
    class, or None for an outlier. Equivalent to a 0/1 vector z over the
    instance's z-variables that satisfies the assignment rows.
    """

    def __init__(self, inst, groups):
        groups = tuple(None if g is None else int(g) for g in groups)
        if len(groups) != inst.m:
            raise ValueError("Expected %i group entries, got %i." % (inst.m, len(groups)))
        for i, g in enumerate(groups):
            if g is not None and not 0 <= g < inst.n_groups(i):
                raise ValueError("Point %i has no group %i." % (i, g))
        self._inst = inst
        self._groups = groups

    @classmethod
    def outliers_only(cls, inst):
        """ The assignment that leaves every point out.
        """
        return cls(inst, [None] * inst.m)

    @classmethod
    def from_z(cls, inst, z):
        """ from_z(inst, z)

        Build an assignment from a 0/1 vector (ordered like
        ``inst.z_vars``) or a mapping {(i, g): value}. Raises ValueError
        for fractional values or violated assignment rows.
        """
        if hasattr(z, "items"):
            items = list(z.items())
        else:
            z = list(z)
            if len(z) != inst.n_vars:
                raise ValueError("Expected %i z-values, got %i." % (inst.n_vars, len(z)))
            items = list(zip(inst.z_vars, z))
        groups = [None] * inst.m
        for (i, g), value in items:
            if value not in (0, 1):
                raise ValueError("z_%i_%i = %r is not binary." % (i, g, value))
            if value:
                if groups[i] is not None:
                    raise ValueError("Point %i is assigned to two groups." % i)
                groups[i] = g
        return cls(inst, groups)

    def __repr__(self):
        return "<Assignment %s>" % (self._groups,)

    def __eq__(self, other):
        return (
            isinstance(other, Assignment)
            and self._inst.key == other._inst.key
            and self._groups == other._groups
        )

    def __hash__(self):
        return hash(self._groups)

    @property
    def instance(self):
        return self._inst

    @property
    def groups(self):
        return self._groups

    def z(self, i, g):
        return 1 if self._groups[i] == g else 0

    @property
    def vector(self):
        """ The 0/1 z-vector, ordered like ``inst.z_vars``.
        """
        return tuple(1 if self._groups[i] == g else 0 for i, g in self._inst.z_vars)

    @property
    def zmap(self):
        """ The assigned variables as a dict {(i, g): 1}.
        """
        return {(i, g): 1 for i, g in enumerate(self._groups) if g is not None}

    @property
    def outliers(self):
        """ Indices of the points assigned to no group.
        """
        return [i for i, g in enumerate(self._groups) if g is None]

    def members(self, blue, g):
        """ members(blue, g)

        Indices of the points in blue group g (blue=True) or red group g.
        """
        label = BLUE if blue else RED
        return [
            i
            for i, h in enumerate(self._groups)
            if h == g and self._inst.labels[i] == label
        ]

    def without(self, indices):
        """ A copy with the given points turned into outliers.
        """
        indices = set(indices)
        return Assignment(
            self._inst, [None if i in indices else g for i, g in enumerate(self._groups)]
        )


class FeasibilityWitness(object):
    """ FeasibilityWitness(separators, failing_pair=None, certificate=None)

    Result of is_feasible(). Truthy when feasible; then ``separators``
    maps every (k, l) pair to a Hyperplane. Otherwise ``failing_pair`` is
    the first inseparable pair and ``certificate`` proves it, with
    instance point indices attached.
    """

    def __init__(self, separators, failing_pair=None, certificate=None):
        self.separators = separators
        self.failing_pair = failing_pair
        self.certificate = certificate

    def __bool__(self):
        return self.failing_pair is None

    @property
    def feasible(self):
        return self.failing_pair is None

    def __repr__(self):
        if self.feasible:
            return "<FeasibilityWitness feasible, %i separators>" % len(self.separators)
        return "<FeasibilityWitness infeasible at %s>" % (self.failing_pair,)


def is_feasible(inst, a):
    """ is_feasible(inst, a)

    Check that every blue group of the assignment is separable from every
    red group. Pairs are checked in (k, l) order; returns a
    FeasibilityWitness.
    """
    if a.instance.key != inst.key:
        raise ValueError("Assignment belongs to another instance.")
    separators = {}
    for k, l in inst.pairs:
        bi, ri = a.members(True, k), a.members(False, l)
        outcome = separate(
            [inst.points[i] for i in bi], [inst.points[j] for j in ri], inst.dimension
        )
        if outcome.separable:
            separators[(k, l)] = outcome.separator
        else:
            cert = outcome.certificate.relabel(bi, ri)
            return FeasibilityWitness(separators, (k, l), cert)
    return FeasibilityWitness(separators)


def objective_value(a):
    """ Number of assigned points.
    """
    return a.instance.m - len(a.outliers)


def outlier_count(a):
    """ Number of outliers (points assigned to no group).
    """
    return len(a.outliers)


## Enumeration

ENUMERATION_LIMIT = 24


class LabLimitError(ValueError):
    """ Raised when exhaustive enumeration is asked for more z-variables
    than ENUMERATION_LIMIT.
    """


def check_enumeration_limit(inst):
    if inst.n_vars > ENUMERATION_LIMIT:
        raise LabLimitError(
            "Exhaustive enumeration is limited to %i z-variables, the instance has %i."
            % (ENUMERATION_LIMIT, inst.n_vars)
        )


def iter_feasible(inst, prefix=()):
    """ iter_feasible(inst, prefix=())

    Yield every feasible assignment as a 0/1 z-vector (ordered like
    ``inst.z_vars``), depth first over points with the outlier option
    first. Infeasibility is hereditary, so branches are pruned as soon as
    a pair becomes inseparable. Separators of the partial assignment are
    reused while new points respect them.

    ``prefix`` fixes the options (None or a group) of the first points.
    """
    points = inst.points
    m = inst.m
    blue_members = [[] for _ in range(inst.blue_groups)]
    red_members = [[] for _ in range(inst.red_groups)]
    separators = {}
    cache = {}
    groups = [None] * m

    def pair_ok(k, l):
        bi, ri = blue_members[k], red_members[l]
        if not bi or not ri:
            separators.pop((k, l), None)
            return True
        key = (tuple(bi), tuple(ri))
        if key not in cache:
            outcome = separate([points[i] for i in bi], [points[j] for j in ri])
            cache[key] = outcome.separator
        sep = cache[key]
        if sep is None:
            return False
        separators[(k, l)] = sep
        return True

    def place(i, g):
        """ Put point i in group g; returns the saved separators, or None
        if the placement is infeasible (and undone).
        """
        blue = inst.is_blue(i)
        saved = dict(separators)
        (blue_members if blue else red_members)[g].append(i)
        others = range(inst.red_groups) if blue else range(inst.blue_groups)
        ok = True
        for h in others:
            k, l = (g, h) if blue else (h, g)
            sep = separators.get((k, l))
            if sep is not None:
                value = sep.evaluate(points[i])
                if (value <= -1) if blue else (value >= 1):
                    continue
            if not pair_ok(k, l):
                ok = False
                break
        if not ok:
            (blue_members if blue else red_members)[g].pop()
            separators.clear()
            separators.update(saved)
            return None
        return saved

    def unplace(i, g, saved):
        (blue_members if inst.is_blue(i) else red_members)[g].pop()
        separators.clear()
        separators.update(saved)

    def vector():
        return tuple(1 if groups[i] == g else 0 for i, g in inst.z_vars)

    def recurse(i):
        if i == m:
            yield vector()
            return
        if i < len(prefix):
            options = [prefix[i]]
        else:
            options = [None] + list(range(inst.n_groups(i)))
        for g in options:
            if g is None:
                groups[i] = None
                for v in recurse(i + 1):
                    yield v
                continue
            saved = place(i, g)
            if saved is None:
                continue
            groups[i] = g
            for v in recurse(i + 1):
                yield v
            groups[i] = None
            unplace(i, g, saved)

    for v in recurse(0):
        yield v


## Big-M model


class BigMConfig(object):
    """ BigMConfig(M)

    The constant that switches separation rows off. Any M ≥ 1 is accepted;
    the feasible group assignments do not depend on it for separators
    within the box it allows.
    """

    def __init__(self, M):
        M = as_rational(M)
        if M < 1:
            raise ValueError("Big-M must be at least 1, got %s." % M)
        self.M = M

    def __repr__(self):
        return "<BigMConfig M=%s>" % self.M

    @classmethod
    def default_for(cls, inst):
        """ default_for(inst)

        M = 10 · (1 + max |coordinate|) · d.
        """
        return cls(10 * (1 + inst.max_abs_coordinate()) * inst.dimension)


class Variable(object):
    """ Variable(name, kind="continuous", lower=None, upper=None)

    A model column; kind is "continuous" or "binary".
    """

    def __init__(self, name, kind="continuous", lower=None, upper=None):
        if kind not in ("continuous", "binary"):
            raise ValueError("Unknown variable kind %r." % kind)
        self.name = name
        self.kind = kind
        if kind == "binary":
            lower, upper = 0, 1
        self.lower = None if lower is None else as_rational(lower)
        self.upper = None if upper is None else as_rational(upper)

    def __repr__(self):
        return "<Variable %s %s [%s, %s]>" % (self.name, self.kind, self.lower, self.upper)

    def __eq__(self, other):
        return isinstance(other, Variable) and vars(self) == vars(other)


class LinearRow(object):
    """ LinearRow(name, coeffs, sense, rhs, provenance=None)

    A model row Σ coeffs[name] x_name (sense) rhs, sense in "<=", "=", ">=".
    Rows added on top of the big-M model carry a Provenance.
    """

    def __init__(self, name, coeffs, sense, rhs, provenance=None):
        if sense not in ("<=", "=", ">="):
            raise ValueError("Unknown row sense %r." % sense)
        self.name = name
        self.coeffs = {v: as_rational(c) for v, c in coeffs.items() if as_rational(c)}
        self.sense = sense
        self.rhs = as_rational(rhs)
        self.provenance = provenance

    def __repr__(self):
        return "<LinearRow %s: %i terms %s %s>" % (
            self.name,
            len(self.coeffs),
            self.sense,
            self.rhs,
        )

    def __eq__(self, other):
        return isinstance(other, LinearRow) and (
            self.name,
            self.coeffs,
            self.sense,
            self.rhs,
        ) == (other.name, other.coeffs, other.sense, other.rhs)

    def evaluate(self, values):
        return sum(c * values.get(v, 0) for v, c in self.coeffs.items())


class MilpModel(object):
    """ MilpModel(name="pwlsep", sense="max")

    A mixed integer linear model: ordered variables, named rows and a
    linear objective. ``metadata`` records how it was built (M, variant).
    """

    def __init__(self, name="pwlsep", sense="max"):
        if sense not in ("max", "min"):
            raise ValueError("Objective sense must be 'max' or 'min'.")
        self.name = name
        self.sense = sense
        self.variables = []
        self.rows = []
        self.objective = {}
        self.metadata = Dict()
        self._names = {}

    def __repr__(self):
        return "<MilpModel %s: %i variables, %i rows>" % (
            self.name,
            len(self.variables),
            len(self.rows),
        )

    def add_variable(self, var):
        if var.name in self._names:
            raise ValueError("Duplicate variable name %r." % var.name)
        self._names[var.name] = var
        self.variables.append(var)
        return var

    def variable(self, name):
        return self._names[name]

    def add_row(self, row):
        """ add_row(row)

        Append a LinearRow; every referenced variable must exist.
        """
        for name in row.coeffs:
            if name not in self._names:
                raise ValueError("Row %s uses unknown variable %r." % (row.name, name))
        self.rows.append(row)
        return row

    @property
    def binaries(self):
        return [v.name for v in self.variables if v.kind == "binary"]


def p_name(k, l, a):
    return "p_%i_%i_%i" % (k, l, a)


def q_name(k, l):
    return "q_%i_%i" % (k, l)


def o_name(i):
    return "o_%i" % i


def build_milp(inst, cfg=None, outliers=False, lifted=False):
    """ build_milp(inst, cfg=None, outliers=False, lifted=False)

    Build the big-M model: for every pair (k, l) a hyperplane (p_kl, q_kl)
    with

        p_kl·x_i + q_kl ≤ M - (M+1) z_ik   for blue i,
        p_kl·x_j + q_kl ≥ -M + (M+1) z_jl  for red j,

    assignment rows Σ_g z_ig ≤ 1 and objective max Σ z. With outliers=True
    the assignment rows read Σ_g z_ig + o_i = 1 with binary o_i and the
    objective is min Σ o.
    With lifted=True the rows of lifted_margin_rows() are appended.
    """
    cfg = cfg or BigMConfig.default_for(inst)
    M = cfg.M
    model = MilpModel("pwlsep", "min" if outliers else "max")
    model.metadata.M = M
    model.metadata.variant = "outliers" if outliers else "assignments"
    model.metadata.note = "feasibility of the model does not depend on the value of M"

    for k, l in inst.pairs:
        for a in range(inst.dimension):
            model.add_variable(Variable(p_name(k, l, a)))
        model.add_variable(Variable(q_name(k, l)))
    for var in inst.z_vars:
        model.add_variable(Variable(z_name(var), "binary"))
    if outliers:
        for i in range(inst.m):
            model.add_variable(Variable(o_name(i), "binary"))

    for i in inst.blue:
        x = inst.points[i]
        for k in range(inst.blue_groups):
            for l in range(inst.red_groups):
                coeffs = {p_name(k, l, a): x[a] for a in range(inst.dimension)}
                coeffs[q_name(k, l)] = 1
                coeffs[z_name((i, k))] = M + 1
                model.add_row(LinearRow("blue_%i_%i_%i" % (i, k, l), coeffs, "<=", M))
    for j in inst.red:
        x = inst.points[j]
        for l in range(inst.red_groups):
            for k in range(inst.blue_groups):
                coeffs = {p_name(k, l, a): x[a] for a in range(inst.dimension)}
                coeffs[q_name(k, l)] = 1
                coeffs[z_name((j, l))] = -(M + 1)
                model.add_row(LinearRow("red_%i_%i_%i" % (j, l, k), coeffs, ">=", -M))
    for i in range(inst.m):
        coeffs = {z_name((i, g)): 1 for g in range(inst.n_groups(i))}
        if outliers:
            coeffs[o_name(i)] = 1
            model.add_row(LinearRow("assign_%i" % i, coeffs, "=", 1))
        else:
            model.add_row(LinearRow("assign_%i" % i, coeffs, "<=", 1))
    if lifted:
        for row in lifted_margin_rows(inst, cfg):
            model.add_row(row)
        model.metadata.lifted = True

    if outliers:
        model.objective = {o_name(i): Fraction(1) for i in range(inst.m)}
    else:
        model.objective = {z_name(var): Fraction(1) for var in inst.z_vars}
    return model


## Inequalities from the model


def model_rows(inst):
    """ model_rows(inst)

    The assignment rows and the bounds z ≥ 0 as ZInequality objects.
    """
    rows = []
    for i in range(inst.m):
        coeffs = {(i, g): 1 for g in range(inst.n_groups(i))}
        rows.append(ZInequality(coeffs, 1, Provenance(CutKind.MODEL_ROW, row="assign", point=i)))
    for var in inst.z_vars:
        rows.append(
            ZInequality({var: -1}, 0, Provenance(CutKind.MODEL_ROW, row="nonneg", var=z_name(var)))
        )
    return rows


def farkas_projection_cut(inst, k, l, cert, cfg=None):
    """ farkas_projection_cut(inst, k, l, cert, cfg=None)

    Turn a certificate that blue group k and red group l intersect into
    the cut (M'+1)(Σ υ_i z_ik + Σ υ_j z_jl) ≤ 2M' over its support. The
    certificate's indices must be instance point indices (see
    ConvexCombinationCertificate.relabel) and its weights sum to one on
    each side.

    M' = max(M, 2/υ_min - 1) for the smallest positive weight υ_min. With
    that constant the cut holds whenever one support point is left out, so
    it is valid for every feasible assignment.
    """
    cfg = cfg or BigMConfig.default_for(inst)
    support_b, support_r = cert.support_blue, cert.support_red
    if not support_b or not support_r:
        raise ValueError("A projection cut needs support on both sides.")
    if sum(w for _, w in support_b) != 1 or sum(w for _, w in support_r) != 1:
        raise ValueError("Certificate weights must sum to one on each side.")
    for i, _ in support_b:
        if not inst.is_blue(i):
            raise ValueError("Point %i is not blue." % i)
    for j, _ in support_r:
        if inst.is_blue(j):
            raise ValueError("Point %i is not red." % j)
    smallest = min(w for _, w in support_b + support_r)
    M = max(cfg.M, 2 / smallest - 1)
    coeffs = {}
    for i, w in support_b:
        coeffs[(i, k)] = (M + 1) * w
    for j, w in support_r:
        coeffs[(j, l)] = (M + 1) * w
    provenance = Provenance(
        CutKind.FARKAS_PROJECTION,
        pair=[k, l],
        blue={i: w for i, w in support_b},
        red={j: w for j, w in support_r},
        M=cfg.M,
        M_effective=M,
    )
    return ZInequality(coeffs, 2 * M, provenance)


def lift_hyperplane_inequality(
    inst, blue_subset, red_subset, alpha, lambda0, Mprime, k=0, l=0, check=True, name=None
):
    """ lift_hyperplane_inequality(inst, blue_subset, red_subset, alpha, lambda0,
    Mprime, k=0, l=0, check=True, name=None)

    Lift an inequality α·(p, q) ≤ λ0, valid for the separators of the
    given blue and red subsets, to the big-M model of pair (k, l):

        α·(p_kl, q_kl) ≤ λ0 + M'(|B'| + |R'| - Σ_{B'} z_ik - Σ_{R'} z_jl)

    Returns a LinearRow for MilpModel.add_row(); the lifted export of
    build_milp() is made of these rows. With check=True the
    validity of α·(p, q) ≤ λ0 on the separator polyhedron is verified by
    an exact LP and ValueError is raised when it fails.
    """
    d = inst.dimension
    alpha = [as_rational(a) for a in alpha]
    if len(alpha) != d + 1:
        raise ValueError("Expected %i coefficients for (p, q), got %i." % (d + 1, len(alpha)))
    lambda0, Mprime = as_rational(lambda0), as_rational(Mprime)
    if Mprime < 0:
        raise ValueError("The lifting constant must be nonnegative.")
    blue_subset, red_subset = sorted(set(blue_subset)), sorted(set(red_subset))
    if any(not inst.is_blue(i) for i in blue_subset) or any(
        inst.is_blue(j) for j in red_subset
    ):
        raise ValueError("Lifting needs blue and red subsets of the matching colors.")
    if not (0 <= k < inst.blue_groups and 0 <= l < inst.red_groups):
        raise ValueError("Group pair (%i, %i) does not exist." % (k, l))

    if check:
        rows = [list(inst.points[i]) + [1] for i in blue_subset]
        rows += [list(inst.points[j]) + [1] for j in red_subset]
        if not rows:
            valid = not any(alpha) and lambda0 >= 0
        else:
            senses = ["<="] * len(blue_subset) + [">="] * len(red_subset)
            rhs = [-1] * len(blue_subset) + [1] * len(red_subset)
            outcome = solve_exact(
                LinearProgram(rows, senses, rhs, objective=alpha, maximize=True)
            )
            if outcome.infeasible:
                valid = True
            elif outcome.optimal:
                valid = outcome.objective <= lambda0
            else:
                valid = False
        if not valid:
            raise ValueError(
                "The inequality with rhs %s is not valid for the given subsets." % lambda0
            )

    coeffs = {p_name(k, l, a): alpha[a] for a in range(d)}
    coeffs[q_name(k, l)] = alpha[d]
    for i in blue_subset:
        coeffs[z_name((i, k))] = Mprime
    for j in red_subset:
        coeffs[z_name((j, l))] = Mprime
    rhs = lambda0 + Mprime * (len(blue_subset) + len(red_subset))
    if name is None:
        name = "lift_%i_%i_b%s_r%s" % (
            k,
            l,
            "_".join(str(i) for i in blue_subset),
            "_".join(str(j) for j in red_subset),
        )
    provenance = Provenance(
        CutKind.LIFTED,
        blue=blue_subset,
        red=red_subset,
        groups=[k, l],
        alpha=alpha,
        lambda0=lambda0,
        M=Mprime,
    )
    return LinearRow(name, coeffs, "<=", rhs, provenance)


def lifted_margin_rows(inst, cfg=None):
    """ lifted_margin_rows(inst, cfg=None)

    For every pair (k, l), blue point i and red point j, the margin
    inequality (x_i - x_j)·p ≤ -2 of the separators of {x_i} and {x_j},
    lifted to the big-M model with M' = M + 1. With this constant the row
    holds for every value of z_ik and z_jl the model allows. Returns a
    list of LinearRow.
    """
    cfg = cfg or BigMConfig.default_for(inst)
    Mprime = cfg.M + 1
    rows = []
    for k, l in inst.pairs:
        for i in inst.blue:
            for j in inst.red:
                alpha = [a - b for a, b in zip(inst.points[i], inst.points[j])] + [0]
                rows.append(
                    lift_hyperplane_inequality(inst, [i], [j], alpha, -2, Mprime, k, l)
                )
    return rows
