# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

""" Farkas projection inequalities: every convex combination certificate
that a blue set and a red set intersect yields a cut over their z-variables
(see ``model.farkas_projection_cut``).
"""

import logging
from fractions import Fraction

from .. import families
from ..core import CutFamily, CutKind, BigMConfig, TrivialOnlyError
from ..core import separate, farkas_projection_cut
from .convex_inclusion import minimal_hull_sets
from .obstacle import find_obstacle

logger = logging.getLogger(__name__)


def certificate_cut(inst, blue_idx, red_idx, k, l, cfg=None):
    """ certificate_cut(inst, blue_idx, red_idx, k, l, cfg=None)

    The projection cut for blue group k and red group l from the
    certificate that conv(x_blue_idx) and conv(x_red_idx) meet, or None
    when the two sets are separable.
    """
    blue_idx, red_idx = list(blue_idx), list(red_idx)
    outcome = separate(
        [inst.points[i] for i in blue_idx], [inst.points[j] for j in red_idx], inst.dimension
    )
    if outcome.separable:
        return None
    cert = outcome.certificate.relabel(blue_idx, red_idx)
    return farkas_projection_cut(inst, k, l, cert, cfg)


def intersecting_structures(inst, limit=4):
    """ intersecting_structures(inst, limit=4)

    Small pairs (blue set, red set) with intersecting hulls: points inside
    a minimal hull of the other class, and red pairs with a nontrivial
    minimal blue obstacle.
    """
    pts = inst.points
    out = []
    for j in inst.red:
        for S in minimal_hull_sets(pts[j], inst.blue, pts, limit):
            out.append((S, (j,)))
    for i in inst.blue:
        for T in minimal_hull_sets(pts[i], inst.red, pts, limit):
            out.append(((i,), T))
    red = inst.red
    for a in range(len(red)):
        for b in range(a + 1, len(red)):
            try:
                S = find_obstacle(inst, red[a], red[b], inst.blue)
            except TrivialOnlyError:
                continue
            if S is not None:
                out.append((S, (red[a], red[b])))
    return out


class FarkasProjectionFamily(CutFamily):
    """ Cuts (M'+1)(Σ υ_i z_ik + Σ υ_j z_jl) ≤ 2M' from convex combination
    certificates, with M' = max(M, 2/υ_min - 1). Separation looks at the
    points with z-value at least one half in a pair of groups; for integral
    points this is exactly the lazy cut of an infeasible assignment.

    Parameters for generate
    -----------------------
    cfg : BigMConfig | None
        The big-M constant; defaults to BigMConfig.default_for(inst).
    limit : int
        Maximum number of minimal hull sets per point. Default 4.
    """

    def _generate(self, inst, cfg=None, limit=4):
        cfg = cfg or BigMConfig.default_for(inst)
        for blue_idx, red_idx in intersecting_structures(inst, limit):
            for k in range(inst.blue_groups):
                for l in range(inst.red_groups):
                    cut = certificate_cut(inst, blue_idx, red_idx, k, l, cfg)
                    if cut is not None:
                        yield cut

    def _separate(self, inst, zmap, config):
        half = Fraction(1, 2)
        cfg = BigMConfig.default_for(inst)
        for k, l in inst.pairs:
            blue = [i for i in inst.blue if zmap.get((i, k), 0) >= half]
            red = [j for j in inst.red if zmap.get((j, l), 0) >= half]
            if blue and red:
                cut = certificate_cut(inst, blue, red, k, l, cfg)
                if cut is not None:
                    yield cut


# Register
family = FarkasProjectionFamily(
    "farkas",
    "Projection cuts from convex combination certificates",
    CutKind.FARKAS_PROJECTION,
)
families.add_family(family)
