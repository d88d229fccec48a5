# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
Instance generators.

Two registries live here. Instance families (``generate_instance``) make
named test instances for the solver and the command line:

  * separable - two clusters split by the hyperplane x_1 = 0.
  * xor - two blue and two red clusters in opposite quadrants.
  * hull-inclusion - red points inside a blue triangle.
  * obstacle-triangle - a red triangle with a blue pair across each edge.
  * obstacle-prism - the same layout in R^3 with vertical blue segments.
  * triangles-4d - the fixed inseparable 4D instance without point obstacles.
  * random - random labels and coordinates.

Theorem cases (``generate_case``) are small instances together with the
inequalities whose facet status the polytope lab checks, and the status
the facet theorems predict; some also carry the lemmas on obstacles
that the facet proofs rely on.

All randomness comes from ``numpy.random.RandomState(seed)``; integer
coordinates are drawn from [-10, 10] unless a layout needs otherwise.
"""

import logging
from math import gcd

import numpy as np

from .core import Dict, Instance, ObstacleClass, model_rows
from .core import affine_dimension, in_convex_hull, minimal_inclusion_subset
from .core import classify_obstacle
from .plugins.convex_inclusion import inclusion_inequality
from .plugins.obstacle import obstacle_inequality
from .plugins.rank import ObstacleGraph, certify_graph, gen_rank

logger = logging.getLogger(__name__)

LOW, HIGH = -10, 10
MAX_TRIES = 5000

INSTANCE_FAMILIES = Dict()
THEOREM_CASES = Dict()


def instance_family(name, blue_groups=1, red_groups=1):
    """ Decorator registering an instance family with default budgets.
    """

    def register(func):
        INSTANCE_FAMILIES[name] = (func, blue_groups, red_groups)
        return func

    return register


def theorem_case(name):
    """ Decorator registering a theorem case generator.
    """

    def register(func):
        THEOREM_CASES[name] = func
        return func

    return register


def generate_instance(family, seed=0, blue_groups=None, red_groups=None, **kwargs):
    """ generate_instance(family, seed=0, blue_groups=None, red_groups=None, **kwargs)

    Generate an instance of a named family. Budgets default to the
    family's own; extra keyword arguments go to the family generator.
    """
    if family not in INSTANCE_FAMILIES:
        raise ValueError(
            "Unknown instance family %r; available: %s"
            % (family, ", ".join(INSTANCE_FAMILIES))
        )
    func, nB, nR = INSTANCE_FAMILIES[family]
    rng = np.random.RandomState(seed)
    blue, red = func(rng, **kwargs)
    return Instance.from_points(
        blue,
        red,
        nB if blue_groups is None else blue_groups,
        nR if red_groups is None else red_groups,
        name="%s-%i" % (family, seed),
    )


def generate_case(name, seed=0):
    """ generate_case(name, seed=0)

    Generate the theorem case of the given kind for a seed.
    """
    if name not in THEOREM_CASES:
        raise ValueError(
            "Unknown theorem case %r; available: %s" % (name, ", ".join(THEOREM_CASES))
        )
    rng = np.random.RandomState(seed)
    case = THEOREM_CASES[name](rng)
    case.seed = seed
    case.instance.name = "%s-%i" % (name, seed)
    return case


class TheoremCase(object):
    """ TheoremCase(theorem, instance, checks, statement="", lemmas=())

    An instance and the inequalities to check on it. Each check is a pair
    (inequality, expected) where expected is True when the inequality
    must define a facet, False when it must not, and None when no claim
    is made.

    Lemmas are geometric claims checked alongside, as tuples
    (kind, j1, j2, S, extra) of instance point indices: the segment
    endpoints, the obstacle and the extra point. Kinds are
    "obstacle-extension" and "separable-extension".
    """

    def __init__(self, theorem, instance, checks, statement="", lemmas=()):
        self.theorem = theorem
        self.instance = instance
        self.checks = list(checks)
        self.statement = statement
        self.lemmas = list(lemmas)
        self.seed = None

    def __repr__(self):
        return "<TheoremCase %s seed=%s with %i checks>" % (
            self.theorem,
            self.seed,
            len(self.checks),
        )


## Helpers


def _random_point(rng, d, low=LOW, high=HIGH):
    return tuple(int(v) for v in rng.randint(low, high + 1, size=d))


def _simplex(rng, d):
    """ d+1 affinely independent random integer points. """
    for _ in range(MAX_TRIES):
        pts = [_random_point(rng, d) for _ in range(d + 1)]
        if affine_dimension(pts) == d:
            return pts
    raise RuntimeError("Could not draw a nondegenerate simplex.")  # pragma: no cover


def _interior_point(rng, simplex, attempts=200):
    """ An integer point in the relative interior of a simplex, or None.
    """
    d = len(simplex[0])
    lo = [min(x[a] for x in simplex) for a in range(d)]
    hi = [max(x[a] for x in simplex) for a in range(d)]
    for _ in range(attempts):
        x = tuple(int(rng.randint(lo[a], hi[a] + 1)) for a in range(d))
        if in_convex_hull(x, simplex) is None:
            continue
        if len(minimal_inclusion_subset(x, simplex)) == len(simplex):
            return x
    return None


def _simplex_with_interior(rng, d):
    for _ in range(MAX_TRIES):
        simplex = _simplex(rng, d)
        x = _interior_point(rng, simplex)
        if x is not None:
            return simplex, x
    raise RuntimeError("Could not draw a simplex with an interior point.")  # pragma: no cover


def _nontrivial_minimal_obstacle(rng, d):
    """ A blue set and a red segment (blue, (r1, r2)) forming a nontrivial
    minimal obstacle: crossing segments in the plane or a pierced
    triangle in R^3.
    """
    for _ in range(MAX_TRIES):
        blue = [_random_point(rng, d) for _ in range(d)]
        r1, r2 = _random_point(rng, d), _random_point(rng, d)
        if r1 == r2 or affine_dimension(blue) != d - 1:
            continue
        if classify_obstacle(r1, r2, blue) is ObstacleClass.NONTRIVIAL_MINIMAL:
            return blue, (r1, r2)
    raise RuntimeError("Could not draw a nontrivial minimal obstacle.")  # pragma: no cover


def _no_clash(blue, red):
    """ No blue point coincides with a red point. """
    return not set(blue) & set(red)


def _random_split(rng, m, d, low=LOW, high=HIGH, distinct=True):
    for _ in range(MAX_TRIES):
        n_blue = int(rng.randint(1, m))
        blue = [_random_point(rng, d, low, high) for _ in range(n_blue)]
        red = [_random_point(rng, d, low, high) for _ in range(m - n_blue)]
        if not distinct or _no_clash(blue, red):
            return blue, red
    raise RuntimeError("Could not draw distinct blue and red points.")  # pragma: no cover


def _edge_obstacles(triangle):
    """ Per edge of a triangle with even coordinates: the integer midpoint
    and a small integer normal direction.
    """
    out = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        p, q = triangle[a], triangle[b]
        mid = tuple((u + v) // 2 for u, v in zip(p, q))
        dx, dy = q[0] - p[0], q[1] - p[1]
        g = gcd(abs(dx), abs(dy)) or 1
        out.append((mid, (-dy // g, dx // g)))
    return out


def _even_triangle(rng):
    for _ in range(MAX_TRIES):
        pts = [tuple(2 * int(v) for v in rng.randint(-5, 6, size=2)) for _ in range(3)]
        if affine_dimension(pts) == 2:
            return pts
    raise RuntimeError("Could not draw a triangle.")  # pragma: no cover


## Instance families


@instance_family("separable")
def separable(rng, n_blue=4, n_red=4, dimension=2):
    """ Blue points with x_1 in [-10, -1], red points with x_1 in [1, 10].
    """
    blue, red = [], []
    for side, n, out in ((-1, n_blue, blue), (1, n_red, red)):
        for _ in range(n):
            x = list(_random_point(rng, dimension))
            x[0] = side * int(rng.randint(1, HIGH + 1))
            out.append(tuple(x))
    return blue, red


@instance_family("xor", blue_groups=2, red_groups=2)
def xor(rng, per_cluster=2):
    """ Clusters around (5, 5) and (-5, -5) for blue, (5, -5) and (-5, 5)
    for red. Each cluster holds its center plus points jittered by at most
    2, so two groups per class separate everything by the axes while the
    centers alone make one group per class inseparable.
    """
    clusters = []
    for cx, cy in ((5, 5), (-5, -5), (5, -5), (-5, 5)):
        pts = [(cx, cy)]
        while len(pts) < per_cluster:
            x = (cx + int(rng.randint(-2, 3)), cy + int(rng.randint(-2, 3)))
            if x not in pts:
                pts.append(x)
        clusters.append(pts)
    return clusters[0] + clusters[1], clusters[2] + clusters[3]


@instance_family("hull-inclusion", blue_groups=1, red_groups=2)
def hull_inclusion(rng, inside=1, outside=1):
    """ A blue triangle, red points in its interior and red points
    outside of it.
    """
    for _ in range(MAX_TRIES):
        triangle = _simplex(rng, 2)
        red = []
        while len(red) < inside:
            x = _interior_point(rng, triangle)
            if x is None:
                break
            red.append(x)
        if len(red) < inside:
            continue
        while len(red) < inside + outside:
            x = _random_point(rng, 2)
            if in_convex_hull(x, triangle) is None:
                red.append(x)
        return triangle, red
    raise RuntimeError("Could not draw a hull inclusion instance.")  # pragma: no cover


@instance_family("obstacle-triangle")
def obstacle_triangle(rng):
    """ A red triangle in the plane; each edge is crossed at its midpoint
    by a blue pair placed symmetrically along the edge normal.
    """
    triangle = _even_triangle(rng)
    blue = []
    for mid, (ux, uy) in _edge_obstacles(triangle):
        s = int(rng.randint(1, 3))
        blue.append((mid[0] + s * ux, mid[1] + s * uy))
        blue.append((mid[0] - s * ux, mid[1] - s * uy))
    return blue, triangle


@instance_family("obstacle-prism")
def obstacle_prism(rng):
    """ A red triangle in the plane x_3 = 0; each edge is crossed at its
    midpoint by a vertical blue segment. The obstacle graph is a triangle
    with three disjoint nontrivial minimal obstacles.
    """
    triangle = _even_triangle(rng)
    blue = []
    for mid, _ in _edge_obstacles(triangle):
        blue.append(mid + (int(rng.randint(1, HIGH + 1)),))
        blue.append(mid + (-int(rng.randint(1, HIGH + 1)),))
    return blue, [x + (0,) for x in triangle]


@instance_family("triangles-4d")
def triangles_4d(rng):
    """ Two triangles in orthogonal planes of R^4 meeting only at the
    origin: inseparable, yet no blue set obstructs two red points.
    """
    blue = [(1, 1, 0, 0), (-2, 1, 0, 0), (1, -2, 0, 0)]
    red = [(0, 0, 1, 1), (0, 0, -2, 1), (0, 0, 1, -2)]
    return blue, red


@instance_family("random")
def random_points(rng, m=6, dimension=2):
    """ m points with random labels (both classes present) and integer
    coordinates; no blue point coincides with a red one.
    """
    if m < 2:
        raise ValueError("A random instance needs at least two points.")
    return _random_split(rng, m, dimension)


## Theorem cases


@theorem_case("inclusion-minimal")
def case_inclusion_minimal(rng):
    d = int(rng.choice([2, 3]))
    simplex, x = _simplex_with_interior(rng, d)
    inst = Instance.from_points(simplex, [x], 1, 2)
    q = inclusion_inequality(inst, inst.blue, inst.red[0], 0)
    return TheoremCase(
        "inclusion-minimal",
        inst,
        [(q, True)],
        "convex-inclusion inequality with minimal S and two red groups is a facet",
    )


@theorem_case("inclusion-redundant")
def case_inclusion_redundant(rng):
    d = int(rng.choice([2, 3]))
    simplex, x = _simplex_with_interior(rng, d)
    extra = _random_point(rng, d)
    while extra == x:
        extra = _random_point(rng, d)
    inst = Instance.from_points(simplex + [extra], [x], 1, 2)
    q = inclusion_inequality(inst, inst.blue, inst.red[0], 0)
    return TheoremCase(
        "inclusion-redundant",
        inst,
        [(q, False)],
        "convex-inclusion inequality with non-minimal S is not a facet",
    )


@theorem_case("obstacle-minimal")
def case_obstacle_minimal(rng):
    d = int(rng.choice([2, 3]))
    blue, (r1, r2) = _nontrivial_minimal_obstacle(rng, d)
    inst = Instance.from_points(blue, [r1, r2], 1, 1)
    j1, j2 = inst.red
    q = obstacle_inequality(inst, inst.blue, j1, j2, 0, 0)
    return TheoremCase(
        "obstacle-minimal",
        inst,
        [(q, True)],
        "obstacle inequality with a nontrivial minimal obstacle is a facet",
    )


@theorem_case("obstacle-trivial")
def case_obstacle_trivial(rng):
    d = int(rng.choice([2, 3]))
    simplex, inner = _simplex_with_interior(rng, d)
    other = _random_point(rng, d)
    while other == inner or other in simplex:
        other = _random_point(rng, d)
    inst = Instance.from_points(simplex, [inner, other], 1, 1)
    j1, j2 = inst.red
    q = obstacle_inequality(inst, inst.blue, j1, j2, 0, 0)
    return TheoremCase(
        "obstacle-trivial",
        inst,
        [(q, False)],
        "obstacle inequality with a trivial obstacle is not a facet",
    )


@theorem_case("obstacle-nonminimal")
def case_obstacle_nonminimal(rng):
    d = int(rng.choice([2, 3]))
    for _ in range(MAX_TRIES):
        blue, (r1, r2) = _nontrivial_minimal_obstacle(rng, d)
        extra = _random_point(rng, d)
        if extra in (r1, r2):
            continue
        S = blue + [extra]
        if classify_obstacle(r1, r2, S) is ObstacleClass.NON_MINIMAL:
            break
    else:  # pragma: no cover
        raise RuntimeError("Could not draw a non-minimal obstacle.")
    inst = Instance.from_points(S, [r1, r2], 1, 1)
    j1, j2 = inst.red
    q = obstacle_inequality(inst, inst.blue, j1, j2, 0, 0)
    return TheoremCase(
        "obstacle-nonminimal",
        inst,
        [(q, False)],
        "obstacle inequality with a non-minimal obstacle is not a facet",
    )


@theorem_case("obstacle-extension")
def case_obstacle_extension(rng):
    d = int(rng.choice([2, 3]))
    blue, (r1, r2) = _nontrivial_minimal_obstacle(rng, d)
    taken = set(blue) | {r1, r2}
    extra = []
    while len(extra) < 2:
        x = _random_point(rng, d)
        if x not in taken:
            taken.add(x)
            extra.append(x)
    inst = Instance.from_points(blue + [extra[0]], [r1, r2, extra[1]], 1, 1)
    S, i = inst.blue[:-1], inst.blue[-1]
    j1, j2, j3 = inst.red
    lemmas = [("obstacle-extension", j1, j2, S, i), ("separable-extension", j1, j2, S, j3)]
    return TheoremCase(
        "obstacle-extension",
        inst,
        [],
        "an extra blue point leaves an endpoint outside the obstacle hull, and "
        "an extra red point spans a triangle separable from the obstacle minus one point",
        lemmas,
    )


@theorem_case("rank-prism")
def case_rank_prism(rng):
    blue, red = obstacle_prism(rng)
    inst = Instance.from_points(blue, red, 1, 1)
    r = inst.red
    g = ObstacleGraph(inst, r)
    # obstacle_prism emits the blue pairs in edge order (0,1), (0,2), (1,2)
    for e, (a, b) in enumerate(((0, 1), (0, 2), (1, 2))):
        g.add_edge(r[a], r[b], inst.blue[2 * e : 2 * e + 2], 0)
    cert = certify_graph(g)
    q = gen_rank(inst, g, 0, cert)
    expected = True if cert.facet_conditions else None
    return TheoremCase(
        "rank-prism",
        inst,
        [(q, expected)],
        "rank inequality of a disjoint, minimal, critical, connected graph "
        "with verified separability hypotheses is a facet",
    )


@theorem_case("model-row")
def case_model_row(rng):
    m = int(rng.randint(3, 6))
    blue, red = _random_split(rng, m, 2)
    nB, nR = int(rng.randint(1, 3)), int(rng.randint(1, 3))
    inst = Instance.from_points(blue, red, nB, nR)
    return TheoremCase(
        "model-row",
        inst,
        [(q, True) for q in model_rows(inst)],
        "assignment rows and nonnegativity bounds are facets",
    )


@theorem_case("dimension")
def case_dimension(rng):
    # Small coordinates make coinciding points of both classes likely
    m = int(rng.randint(3, 7))
    blue, red = _random_split(rng, m, 2, -2, 2, distinct=False)
    nB, nR = int(rng.randint(1, 3)), int(rng.randint(1, 3))
    inst = Instance.from_points(blue, red, nB, nR)
    return TheoremCase("dimension", inst, [], "the projected polytope is full-dimensional")
