# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
Geometric oracles over rational points. Every answer comes with something
that can be checked by arithmetic: a separating hyperplane with unit
margins, or a pair of convex combinations meeting in a common point.

Points are tuples of Fractions (see ``util.as_point``); lists of points
may be given in any sequence form.
"""

import logging
from enum import Enum
from fractions import Fraction

from .util import as_point, rank
from .lp import LinearProgram, solve_exact

logger = logging.getLogger(__name__)


class TrivialOnlyError(ValueError):
    """ Raised by minimal_obstacle_subset when every obstacle inside the
    given set contains one of the segment endpoints in its hull.
    """


class ObstacleSearchLimit(RuntimeError):
    """ Raised by minimal_obstacle_subset when it gives up after max_visits
    subsets; nontrivial obstacles may still exist within the set.
    """


class ObstacleClass(Enum):
    NOT_OBSTACLE = "NotObstacle"
    TRIVIAL = "Trivial"
    NON_MINIMAL = "NonMinimal"
    NONTRIVIAL_MINIMAL = "NontrivialMinimal"


class Hyperplane(object):
    """ Hyperplane(p, q)

    The hyperplane p·x + q = 0. As a separator it promises
    p·x + q ≤ -1 on the blue side and p·x + q ≥ 1 on the red side.
    """

    def __init__(self, p, q):
        self.p = as_point(p)
        self.q = Fraction(q)

    def __repr__(self):
        return "<Hyperplane p=%s q=%s>" % (
            "(" + ", ".join(str(v) for v in self.p) + ")",
            self.q,
        )

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def evaluate(self, x):
        """ evaluate(x)

        The value p·x + q.
        """
        return sum(a * b for a, b in zip(self.p, x)) + self.q

    def separates(self, blue, red):
        """ separates(blue, red)

        Whether the unit margins hold exactly on both lists of points.
        """
        if not any(self.p):
            return False
        return all(self.evaluate(x) <= -1 for x in blue) and all(
            self.evaluate(x) >= 1 for x in red
        )


class ConvexCombinationCertificate(object):
    """ ConvexCombinationCertificate(weights_blue, weights_red, blue_index=None,
    red_index=None)

    Nonnegative weights, summing to one on each side, whose weighted blue
    and red points coincide. The common point proves that the convex hulls
    intersect. The optional index tuples name the instance points the
    weights belong to; they default to positions in the given lists.
    """

    def __init__(self, weights_blue, weights_red, blue_index=None, red_index=None):
        self.weights_blue = tuple(Fraction(w) for w in weights_blue)
        self.weights_red = tuple(Fraction(w) for w in weights_red)
        self.blue_index = tuple(
            range(len(self.weights_blue)) if blue_index is None else blue_index
        )
        self.red_index = tuple(
            range(len(self.weights_red)) if red_index is None else red_index
        )
        if len(self.blue_index) != len(self.weights_blue) or len(
            self.red_index
        ) != len(self.weights_red):
            raise ValueError("Certificate indices do not match its weights.")

    def __repr__(self):
        return "<ConvexCombinationCertificate blue=%s red=%s>" % (
            dict(self.support_blue),
            dict(self.support_red),
        )

    @property
    def support_blue(self):
        """ List of (index, weight) pairs with positive blue weight.
        """
        return [(i, w) for i, w in zip(self.blue_index, self.weights_blue) if w]

    @property
    def support_red(self):
        """ List of (index, weight) pairs with positive red weight.
        """
        return [(j, w) for j, w in zip(self.red_index, self.weights_red) if w]

    def relabel(self, blue_index, red_index):
        """ relabel(blue_index, red_index)

        Return a copy whose weights are attached to the given indices.
        """
        return ConvexCombinationCertificate(
            self.weights_blue, self.weights_red, blue_index, red_index
        )

    def common_point(self, blue):
        """ common_point(blue)

        The point Σ w_i x_i for the given blue points.
        """
        return _combine(self.weights_blue, blue)

    def verify(self, blue, red):
        """ verify(blue, red)

        Check by exact arithmetic that the weights are a convex combination
        on each side and that both combinations give the same point.
        """
        if len(blue) != len(self.weights_blue) or len(red) != len(self.weights_red):
            return False
        for weights in (self.weights_blue, self.weights_red):
            if any(w < 0 for w in weights) or sum(weights) != 1:
                return False
        return _combine(self.weights_blue, blue) == _combine(self.weights_red, red)


class SeparabilityOutcome(object):
    """ SeparabilityOutcome(separator=None, certificate=None)

    One side of the separation alternative: either a Hyperplane or a
    ConvexCombinationCertificate. Truthy when separable.
    """

    def __init__(self, separator=None, certificate=None):
        if (separator is None) == (certificate is None):
            raise ValueError("Exactly one of separator and certificate must be given.")
        self.separator = separator
        self.certificate = certificate

    def __repr__(self):
        if self.separator is not None:
            return "<SeparabilityOutcome %r>" % self.separator
        return "<SeparabilityOutcome %r>" % self.certificate

    def __bool__(self):
        return self.separator is not None

    @property
    def separable(self):
        return self.separator is not None

    def verify(self, blue, red):
        """ verify(blue, red)

        Re-check whichever branch is populated.
        """
        if self.separator is not None:
            return self.separator.separates(blue, red)
        return self.certificate.verify(blue, red)


def _combine(weights, points):
    points = list(points)
    if not points:
        return ()
    d = len(points[0])
    return tuple(sum(w * x[a] for w, x in zip(weights, points)) for a in range(d))


def _as_points(points):
    return [as_point(x) for x in points]


def _dimension(*groups):
    d = None
    for group in groups:
        for x in group:
            if d is None:
                d = len(x)
            elif len(x) != d:
                raise ValueError(
                    "Points have inconsistent dimensions (%i and %i)." % (d, len(x))
                )
    return d


## Separation


def separate(blue, red, dimension=None):
    """ separate(blue, red, dimension=None)

    Decide whether the blue and red point lists are strictly linearly
    separable. Returns a SeparabilityOutcome holding either a Hyperplane
    with p·x + q ≤ -1 on blue and ≥ 1 on red, or a convex combination
    certificate. An empty side is always separable; the separator then
    uses the first axis and the bounding value of the other side.
    The dimension is only needed when both lists are empty.
    """
    blue, red = _as_points(blue), _as_points(red)
    d = _dimension(blue, red)
    if d is None:
        d = dimension or 1
    elif dimension is not None and dimension != d:
        raise ValueError("Points have dimension %i, expected %i." % (d, dimension))
    if d < 1:
        raise ValueError("Separation needs a dimension of at least one.")
    axis = (1,) + (0,) * (d - 1)
    if not red:
        top = max([x[0] for x in blue] or [0])
        return SeparabilityOutcome(separator=Hyperplane(axis, -top - 1))
    if not blue:
        bottom = min(x[0] for x in red)
        return SeparabilityOutcome(separator=Hyperplane(axis, 1 - bottom))

    # Variables (p_1..p_d, q), all free
    rows = [list(x) + [1] for x in blue] + [list(x) + [1] for x in red]
    senses = ["<="] * len(blue) + [">="] * len(red)
    rhs = [-1] * len(blue) + [1] * len(red)
    outcome = solve_exact(LinearProgram(rows, senses, rhs))
    if outcome.optimal:
        x = outcome.primal
        return SeparabilityOutcome(separator=Hyperplane(x[:d], x[d]))

    y = outcome.dual_certificate
    yb, yr = y[: len(blue)], y[len(blue) :]
    sb, sr = sum(yb), sum(yr)
    if sb <= 0 or sr <= 0:  # pragma: no cover
        raise RuntimeError("Degenerate Farkas certificate from the simplex.")
    cert = ConvexCombinationCertificate([v / sb for v in yb], [v / sr for v in yr])
    if not cert.verify(blue, red):  # pragma: no cover
        raise RuntimeError("Farkas certificate failed verification.")
    return SeparabilityOutcome(certificate=cert)


def in_convex_hull(x, S):
    """ in_convex_hull(x, S)

    Return a ConvexCombinationCertificate with weight one on x (blue side)
    and weights over S (red side) reconstructing x, or None when x lies
    outside conv(S).
    """
    S = _as_points(S)
    if not S:
        raise ValueError("in_convex_hull needs a nonempty point set.")
    outcome = separate([x], S)
    return outcome.certificate


def minimal_inclusion_subset(x, S, order=None):
    """ minimal_inclusion_subset(x, S, order=None)

    Reduce S to a subset S' with x in conv(S') and x outside conv(S'∖{i})
    for every i in S'. Elements are tried for removal in ascending index
    order, or in the given order of indices. Returns a sorted index list;
    it has at most d+1 entries. Raises ValueError if x is not in conv(S).
    """
    S = _as_points(S)
    x = as_point(x)
    if not S or in_convex_hull(x, S) is None:
        raise ValueError("Point is not in the convex hull of the given set.")
    keep = list(range(len(S)))
    for i in order if order is not None else range(len(S)):
        trial = [k for k in keep if k != i]
        if trial and len(trial) < len(keep) and in_convex_hull(x, [S[k] for k in trial]):
            keep = trial
    return keep


## Obstacles


def obstacle_between(y1, y2, S):
    """ obstacle_between(y1, y2, S)

    Return a certificate exhibiting a common point of conv(S) (blue side)
    and the segment [y1, y2] (red side), or None when they are separable.
    """
    S = _as_points(S)
    if not S:
        return None
    return separate(S, [y1, y2]).certificate


def _is_trivial(y1, y2, S):
    return in_convex_hull(y1, S) is not None or in_convex_hull(y2, S) is not None


def is_minimal_obstacle(y1, y2, S):
    """ is_minimal_obstacle(y1, y2, S)

    Whether S obstructs [y1, y2] and no set S∖{i} does.
    """
    S = _as_points(S)
    if obstacle_between(y1, y2, S) is None:
        return False
    for i in range(len(S)):
        if obstacle_between(y1, y2, S[:i] + S[i + 1 :]) is not None:
            return False
    return True


def classify_obstacle(y1, y2, S):
    """ classify_obstacle(y1, y2, S)

    Classify S with respect to the segment [y1, y2] as an ObstacleClass.
    Trivial takes precedence over NonMinimal.
    """
    y1, y2, S = as_point(y1), as_point(y2), _as_points(S)
    if y1 == y2:
        raise ValueError("An obstacle needs two distinct segment endpoints.")
    if obstacle_between(y1, y2, S) is None:
        return ObstacleClass.NOT_OBSTACLE
    if _is_trivial(y1, y2, S):
        return ObstacleClass.TRIVIAL
    if not is_minimal_obstacle(y1, y2, S):
        return ObstacleClass.NON_MINIMAL
    return ObstacleClass.NONTRIVIAL_MINIMAL


def minimal_obstacle_subset(y1, y2, S, max_visits=4096):
    """ minimal_obstacle_subset(y1, y2, S, max_visits=4096)

    Find a subset of S (sorted index list) that is a nontrivial minimal
    obstacle between y1 and y2. Subsets are explored by removing elements
    in ascending index order; the first nontrivial obstacle met is reduced
    greedily (subsets of a nontrivial obstacle stay nontrivial).

    Raises ValueError if S is no obstacle and TrivialOnlyError when every
    obstacle within S is trivial. When more than max_visits subsets are
    explored without an answer, ObstacleSearchLimit is raised instead.
    """
    y1, y2, S = as_point(y1), as_point(y2), _as_points(S)
    if y1 == y2:
        raise ValueError("An obstacle needs two distinct segment endpoints.")
    full = tuple(range(len(S)))
    if obstacle_between(y1, y2, S) is None:
        raise ValueError("The given set is not an obstacle between the points.")

    queue, seen = [full], {full}
    found = None
    while queue:
        current = queue.pop(0)
        points = [S[i] for i in current]
        if not _is_trivial(y1, y2, points):
            found = current
            break
        for i in current:
            sub = tuple(k for k in current if k != i)
            if not sub or sub in seen:
                continue
            seen.add(sub)
            if len(seen) > max_visits:
                raise ObstacleSearchLimit(
                    "Gave up after %i subsets without a nontrivial obstacle." % max_visits
                )
            if obstacle_between(y1, y2, [S[k] for k in sub]) is not None:
                queue.append(sub)
    if found is None:
        raise TrivialOnlyError("Every obstacle within the set is trivial.")

    keep = list(found)
    for i in found:
        trial = [k for k in keep if k != i]
        if trial and obstacle_between(y1, y2, [S[k] for k in trial]) is not None:
            keep = trial
    return keep


def affine_dimension(S):
    """ affine_dimension(S)

    Dimension of the affine hull of S: -1 for no points, 0 for one point.
    """
    S = _as_points(S)
    if not S:
        return -1
    _dimension(S)
    base = S[0]
    return rank([tuple(a - b for a, b in zip(x, base)) for x in S[1:]])


## Extension checks (lemma cases of the theorem suite)


def check_obstacle_extension(y1, y2, S, extra):
    """ check_obstacle_extension(y1, y2, S, extra)

    For a nontrivial minimal obstacle S and one more point of the same
    class, at least one endpoint must stay outside conv(S ∪ {extra}).
    Returns True when that holds.
    """
    T = _as_points(S) + [as_point(extra)]
    return in_convex_hull(y1, T) is None or in_convex_hull(y2, T) is None


def check_separable_extension(y1, y2, S, extra):
    """ check_separable_extension(y1, y2, S, extra)

    For a nontrivial minimal obstacle S and a third point on the segment's
    side, return the first index i of S such that conv({y1, y2, extra}) is
    separable from conv(S∖{i}); None if there is no such index.
    """
    S = _as_points(S)
    triangle = [as_point(y1), as_point(y2), as_point(extra)]
    for i in range(len(S)):
        rest = S[:i] + S[i + 1 :]
        if separate(rest, triangle, dimension=len(triangle[0])).separable:
            return i
    return None
