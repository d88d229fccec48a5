# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

""" Obstacle inequalities: two points of one class cannot share a group
while a set of the other class blocking the segment between them shares
a group.
"""

import logging
from fractions import Fraction

from .. import families
from ..core import CutFamily, CutKind, Provenance, ZInequality, TrivialOnlyError
from ..core import ObstacleSearchLimit
from ..core import minimal_obstacle_subset, obstacle_between
from .convex_inclusion import gen_convex_inclusion, gen_convex_inclusion_mirrored

logger = logging.getLogger(__name__)


def find_obstacle(inst, y1, y2, candidates):
    """ find_obstacle(inst, y1, y2, candidates)

    A nontrivial minimal obstacle (sorted instance indices taken from
    candidates) between points y1 and y2, or None when the candidates do
    not obstruct the segment or the search gives up (logged). Raises
    TrivialOnlyError when every obstacle among the candidates is trivial.
    """
    candidates = list(candidates)
    if not candidates or inst.points[y1] == inst.points[y2]:
        return None
    try:
        positions = minimal_obstacle_subset(
            inst.points[y1], inst.points[y2], [inst.points[i] for i in candidates]
        )
    except TrivialOnlyError:
        raise
    except ValueError:
        return None
    except ObstacleSearchLimit as err:
        logger.warning("No obstacle between %i and %i: %s" % (y1, y2, err))
        return None
    return tuple(sorted(candidates[p] for p in positions))


def _cut(S, y1, y2, k, l, side):
    """ z_{y1 l} + z_{y2 l} + Σ_{i∈S} z_ik ≤ |S| + 1 """
    coeffs = {(y1, l): 1, (y2, l): 1}
    for i in S:
        coeffs[(i, k)] = 1
    provenance = Provenance(
        CutKind.OBSTACLE,
        points=[y1, y2],
        point_group=l,
        obstacle_group=k,
        S=list(S),
        side=side,
    )
    return ZInequality(coeffs, len(S) + 1, provenance)


def _check_pair(inst, a, b, blue):
    if a == b:
        raise ValueError("An obstacle inequality needs two distinct points.")
    for y in (a, b):
        if inst.is_blue(y) != blue:
            raise ValueError("Point %i is not %s." % (y, "blue" if blue else "red"))


def obstacle_inequality(inst, S, y1, y2, g, h):
    """ obstacle_inequality(inst, S, y1, y2, g, h)

    The obstacle inequality for points y1, y2 of one class in their group
    h and a set S of the other class in its group g. S may be trivial or
    non-minimal. Raises ValueError when S does not obstruct the segment.
    """
    blue = inst.is_blue(y1)
    _check_pair(inst, y1, y2, blue)
    S = tuple(sorted(set(S)))
    if not S or any(inst.is_blue(i) == blue for i in S):
        raise ValueError("S must be a nonempty set of the other class.")
    own, other = inst.blue_groups, inst.red_groups
    if not blue:
        own, other = other, own
    if not (0 <= h < own and 0 <= g < other):
        raise ValueError("Group pair (%i, %i) does not exist." % (g, h))
    pts = inst.points
    if obstacle_between(pts[y1], pts[y2], [pts[i] for i in S]) is None:
        raise ValueError("Set %s does not obstruct %i-%i." % (list(S), y1, y2))
    return _cut(S, y1, y2, g, h, "blue" if blue else "red")


def gen_obstacle(inst, j1, j2, k, l):
    """ gen_obstacle(inst, j1, j2, k, l)

    The obstacle inequality for red points j1, j2 (red group l) and a
    nontrivial minimal blue obstacle S (blue group k):

        z_{j1 l} + z_{j2 l} + Σ_{i∈S} z_ik ≤ |S| + 1

    When the blue points only form trivial obstacles, the convex-inclusion
    inequality of an endpoint inside the blue hull is returned instead.
    Returns None when nothing obstructs the segment.
    """
    _check_pair(inst, j1, j2, blue=False)
    try:
        S = find_obstacle(inst, j1, j2, inst.blue)
    except TrivialOnlyError:
        for j in (j1, j2):
            cuts = gen_convex_inclusion(inst, j, k, limit=1)
            if cuts:
                return cuts[0]
        return None  # pragma: no cover
    if S is None:
        return None
    return _cut(S, j1, j2, k, l, "red")


def gen_obstacle_mirrored(inst, i1, i2, l, k):
    """ gen_obstacle_mirrored(inst, i1, i2, l, k)

    Obstacle inequality with the colors swapped: blue points i1, i2 in
    blue group k, red obstacle T in red group l.
    """
    _check_pair(inst, i1, i2, blue=True)
    try:
        T = find_obstacle(inst, i1, i2, inst.red)
    except TrivialOnlyError:
        for i in (i1, i2):
            cuts = gen_convex_inclusion_mirrored(inst, i, l, limit=1)
            if cuts:
                return cuts[0]
        return None  # pragma: no cover
    if T is None:
        return None
    return _cut(T, i1, i2, l, k, "blue")


class ObstacleFamily(CutFamily):
    """ Forbids two points of one class in a common group when a set of
    the other class, in one group, meets the segment between them. The
    inequality is facet-inducing when the obstacle is nontrivial and
    minimal. Both orientations are generated.
    """

    def _generate(self, inst):
        red, blue = inst.red, inst.blue
        for a in range(len(red)):
            for b in range(a + 1, len(red)):
                for k in range(inst.blue_groups):
                    for l in range(inst.red_groups):
                        cut = gen_obstacle(inst, red[a], red[b], k, l)
                        if cut is not None:
                            yield cut
        for a in range(len(blue)):
            for b in range(a + 1, len(blue)):
                for l in range(inst.red_groups):
                    for k in range(inst.blue_groups):
                        cut = gen_obstacle_mirrored(inst, blue[a], blue[b], l, k)
                        if cut is not None:
                            yield cut

    def _separate(self, inst, zmap, config):
        half = Fraction(1, 2)
        for blue in (False, True):
            ends = inst.blue if blue else inst.red
            others = inst.red if blue else inst.blue
            own_groups = inst.blue_groups if blue else inst.red_groups
            other_groups = inst.red_groups if blue else inst.blue_groups
            side = "blue" if blue else "red"
            for g in range(own_groups):
                heavy = [y for y in ends if zmap.get((y, g), 0) >= half]
                for a in range(len(heavy)):
                    for b in range(a + 1, len(heavy)):
                        y1, y2 = heavy[a], heavy[b]
                        for h in range(other_groups):
                            pool = [i for i in others if zmap.get((i, h), 0) > 0]
                            try:
                                S = find_obstacle(inst, y1, y2, pool)
                            except TrivialOnlyError:
                                continue
                            if S is not None:
                                yield _cut(S, y1, y2, h, g, side)


# Register
family = ObstacleFamily(
    "obstacle",
    "Two points of one class and a set of the other class blocking them",
    CutKind.OBSTACLE,
)
families.add_family(family)
