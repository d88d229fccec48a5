# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

""" Convex-inclusion inequalities: a red point inside the hull of a blue
set cannot be assigned while the whole set sits in one blue group.
"""

import logging

from .. import families
from ..core import CutFamily, CutKind, Provenance, ZInequality
from ..core import in_convex_hull, minimal_inclusion_subset

logger = logging.getLogger(__name__)


def minimal_hull_sets(x, candidates, points, limit=8):
    """ minimal_hull_sets(x, candidates, points, limit=8)

    Find up to ``limit`` distinct minimal index sets S ⊆ candidates with
    x in conv(points[S]). Sets are discovered breadth first by excluding
    members of the sets found so far.
    """
    found = []
    queue = [frozenset()]
    seen = {frozenset()}
    while queue and len(found) < limit:
        excluded = queue.pop(0)
        pool = [i for i in candidates if i not in excluded]
        if not pool or in_convex_hull(x, [points[i] for i in pool]) is None:
            continue
        positions = minimal_inclusion_subset(x, [points[i] for i in pool])
        S = tuple(pool[p] for p in positions)
        if S not in found:
            found.append(S)
        for i in S:
            ex = excluded | {i}
            if ex not in seen:
                seen.add(ex)
                queue.append(ex)
    return found


def _cut(inst, S, j, k, side):
    """ Σ_{i∈S} z_ik + Σ_g z_jg ≤ |S| """
    coeffs = {(i, k): 1 for i in S}
    for g in range(inst.n_groups(j)):
        coeffs[(j, g)] = coeffs.get((j, g), 0) + 1
    provenance = Provenance(
        CutKind.CONVEX_INCLUSION, point=j, group=k, S=list(S), side=side
    )
    return ZInequality(coeffs, len(S), provenance)


def inclusion_inequality(inst, S, y, g):
    """ inclusion_inequality(inst, S, y, g)

    The convex-inclusion inequality for point y and a set S of the other
    class in group g of that class. S need not be minimal. Raises
    ValueError when x_y lies outside conv(x_S).
    """
    S = tuple(sorted(set(S)))
    blue = inst.is_blue(y)
    if not S or any(inst.is_blue(i) == blue for i in S):
        raise ValueError("S must be a nonempty set of the other class.")
    if not 0 <= g < (inst.red_groups if blue else inst.blue_groups):
        raise ValueError("Group %i does not exist." % g)
    if in_convex_hull(inst.points[y], [inst.points[i] for i in S]) is None:
        raise ValueError("Point %i lies outside the hull of %s." % (y, list(S)))
    return _cut(inst, S, y, g, "blue" if blue else "red")


def gen_convex_inclusion(inst, j, k, limit=8):
    """ gen_convex_inclusion(inst, j, k, limit=8)

    Inequalities Σ_{i∈S} z_ik + Σ_ℓ z_jℓ ≤ |S| for red point j, blue
    group k and minimal blue sets S with x_j in conv(x_S). Empty when x_j
    lies outside the hull of all blue points.
    """
    if inst.is_blue(j):
        raise ValueError("Point %i is not red." % j)
    if not 0 <= k < inst.blue_groups:
        raise ValueError("Blue group %i does not exist." % k)
    sets = minimal_hull_sets(inst.points[j], inst.blue, inst.points, limit)
    return [_cut(inst, S, j, k, "red") for S in sets]


def gen_convex_inclusion_mirrored(inst, i, l, limit=8):
    """ gen_convex_inclusion_mirrored(inst, i, l, limit=8)

    The same inequalities with the colors swapped: blue point i inside
    the hull of a minimal red set T, red group l.
    """
    if not inst.is_blue(i):
        raise ValueError("Point %i is not blue." % i)
    if not 0 <= l < inst.red_groups:
        raise ValueError("Red group %i does not exist." % l)
    sets = minimal_hull_sets(inst.points[i], inst.red, inst.points, limit)
    return [_cut(inst, T, i, l, "blue") for T in sets]


class ConvexInclusionFamily(CutFamily):
    """ Forbids assigning a point together with a whole set of the other
    class (in one group) whose convex hull contains it. The inequality is
    facet-inducing exactly when the set is minimal and the point's class
    has at least two groups. Both orientations are generated.

    Parameters for generate
    -----------------------
    limit : int
        Maximum number of minimal sets per (point, group). Default 8.
    """

    def _generate(self, inst, limit=8):
        for j in inst.red:
            for k in range(inst.blue_groups):
                for cut in gen_convex_inclusion(inst, j, k, limit):
                    yield cut
        for i in inst.blue:
            for l in range(inst.red_groups):
                for cut in gen_convex_inclusion_mirrored(inst, i, l, limit):
                    yield cut

    def _separate(self, inst, zmap, config):
        # One candidate per (point, group): reduce the positive-mass part
        # of the other class, dropping low-mass points first
        for x_index in range(inst.m):
            mass = sum(zmap.get((x_index, g), 0) for g in range(inst.n_groups(x_index)))
            if not mass:
                continue
            others = inst.red if inst.is_blue(x_index) else inst.blue
            n_groups = inst.red_groups if inst.is_blue(x_index) else inst.blue_groups
            side = "blue" if inst.is_blue(x_index) else "red"
            x = inst.points[x_index]
            for k in range(n_groups):
                pool = [i for i in others if zmap.get((i, k), 0) > 0]
                if not pool or in_convex_hull(x, [inst.points[i] for i in pool]) is None:
                    continue
                order = sorted(range(len(pool)), key=lambda p: (zmap[(pool[p], k)], pool[p]))
                positions = minimal_inclusion_subset(
                    x, [inst.points[i] for i in pool], order
                )
                S = tuple(sorted(pool[p] for p in positions))
                yield _cut(inst, S, x_index, k, side)


# Register
family = ConvexInclusionFamily(
    "convex-inclusion",
    "A point and a set of the other class whose hull contains it",
    CutKind.CONVEX_INCLUSION,
)
families.add_family(family)
