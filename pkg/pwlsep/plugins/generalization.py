# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

""" Generalized intersection inequalities: a blue set and a red set whose
hulls meet cannot be assigned completely to one pair of groups.
"""

import logging
import itertools

from .. import families
from ..core import CutFamily, CutKind, Provenance, ZInequality, separate

logger = logging.getLogger(__name__)


def gen_generalization(inst, S, T, k, l):
    """ gen_generalization(inst, S, T, k, l)

    The inequality Σ_{i∈S} z_ik + Σ_{j∈T} z_jl ≤ |S| + |T| - 1 for a blue
    set S and a red set T with intersecting convex hulls. Raises
    ValueError when the hulls are disjoint.
    """
    S, T = sorted(set(S)), sorted(set(T))
    if not S or not T:
        raise ValueError("Both sets must be nonempty.")
    if any(not inst.is_blue(i) for i in S) or any(inst.is_blue(j) for j in T):
        raise ValueError("S must hold blue points and T red points.")
    if not (0 <= k < inst.blue_groups and 0 <= l < inst.red_groups):
        raise ValueError("Group pair (%i, %i) does not exist." % (k, l))
    pts = inst.points
    if separate([pts[i] for i in S], [pts[j] for j in T]).separable:
        raise ValueError("The hulls of S and T do not intersect.")
    coeffs = {(i, k): 1 for i in S}
    coeffs.update({(j, l): 1 for j in T})
    provenance = Provenance(CutKind.GENERALIZATION, S=S, T=T, groups=[k, l])
    return ZInequality(coeffs, len(S) + len(T) - 1, provenance)


def minimal_intersecting_pairs(inst, blue, red, max_total=3, max_size=2):
    """ minimal_intersecting_pairs(inst, blue, red, max_total=3, max_size=2)

    Pairs (S, T) of small subsets of the given blue and red indices with
    intersecting hulls, such that no smaller pair inside them intersects.
    Sets hold at most max_size points and max_total points together.
    """
    pts = inst.points
    found = []
    for total in range(2, max_total + 1):
        for s in range(1, min(max_size, total - 1) + 1):
            t = total - s
            if t > max_size:
                continue
            for S in itertools.combinations(blue, s):
                for T in itertools.combinations(red, t):
                    if any(set(a) <= set(S) and set(b) <= set(T) for a, b in found):
                        continue
                    if not separate([pts[i] for i in S], [pts[j] for j in T]).separable:
                        found.append((S, T))
    return found


class GeneralizationFamily(CutFamily):
    """ Σ_{i∈S} z_ik + Σ_{j∈T} z_jl ≤ |S| + |T| - 1 for small blue and red
    sets with intersecting hulls. These generalize the convex-inclusion
    and obstacle inequalities. The family is for validity audits and the
    polytope lab only; its separation finds nothing.

    Parameters for generate
    -----------------------
    max_total : int
        Largest |S| + |T|. Default 3.
    max_size : int
        Largest |S| and |T|. Default 2.
    """

    def _generate(self, inst, max_total=3, max_size=2):
        pairs = minimal_intersecting_pairs(inst, inst.blue, inst.red, max_total, max_size)
        for S, T in pairs:
            for k, l in inst.pairs:
                yield gen_generalization(inst, S, T, k, l)

    def _separate(self, inst, zmap, config):
        # Audit-only family: never separated in the branch-and-cut loop
        return []


# Register
family = GeneralizationFamily(
    "generalization",
    "Small blue and red sets with intersecting hulls",
    CutKind.GENERALIZATION,
)
families.add_family(family)
