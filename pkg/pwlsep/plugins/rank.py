# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

""" Rank inequalities from obstacle graphs.

An obstacle graph has a vertex per red point of a set V and an edge jj'
whenever a blue set S_e blocks the segment between x_j and x_j'; each
edge also carries a blue group k_e. With α(G) the stability number, every
feasible assignment satisfies

    Σ_{j∈V} z_jℓ ≤ α(G) + Σ_{e∈E} (|S_e| - Σ_{i∈S_e} z_{i k_e})

which is stored with the obstacle terms moved to the left.
"""

import logging
import itertools
from fractions import Fraction

import networkx as nx

from .. import families
from ..core import CutFamily, CutKind, Dict, Provenance, ZInequality
from ..core import TrivialOnlyError, ObstacleClass
from ..core import separate, obstacle_between, classify_obstacle, is_minimal_obstacle
from ..core import env_int
from .obstacle import find_obstacle

logger = logging.getLogger(__name__)

EXACT_LIMIT = 12


class ObstacleGraph(object):
    """ ObstacleGraph(inst, vertices)

    An obstacle graph over red points of an instance, stored as a
    networkx Graph. Edge attributes ``S`` (sorted blue indices) and ``k``
    (blue group) hold the obstacle and its group.
    """

    def __init__(self, inst, vertices):
        vertices = sorted(set(vertices))
        for j in vertices:
            if inst.is_blue(j):
                raise ValueError("Obstacle graph vertex %i is not a red point." % j)
        self.instance = inst
        self.graph = nx.Graph()
        self.graph.add_nodes_from(vertices)

    def __repr__(self):
        return "<ObstacleGraph with %i vertices and %i edges>" % (
            self.graph.number_of_nodes(),
            self.graph.number_of_edges(),
        )

    @property
    def vertices(self):
        return tuple(sorted(self.graph.nodes))

    @property
    def edges(self):
        """ The edges as sorted (j, j') tuples, in sorted order.
        """
        return tuple(sorted(tuple(sorted(e)) for e in self.graph.edges))

    def add_edge(self, j1, j2, S, k):
        """ add_edge(j1, j2, S, k)

        Add the edge j1 j2 with obstacle S in blue group k. The obstacle is
        verified with an exact separation test.
        """
        j1, j2 = sorted((j1, j2))
        inst = self.instance
        if j1 == j2 or j1 not in self.graph or j2 not in self.graph:
            raise ValueError("Edge %i-%i does not join two vertices." % (j1, j2))
        if not 0 <= k < inst.blue_groups:
            raise ValueError("Blue group %i does not exist." % k)
        S = tuple(sorted(S))
        if any(not inst.is_blue(i) for i in S):
            raise ValueError("Obstacles must consist of blue points.")
        pts = inst.points
        if obstacle_between(pts[j1], pts[j2], [pts[i] for i in S]) is None:
            raise ValueError("Set %s is no obstacle between %i and %i." % (S, j1, j2))
        self.graph.add_edge(j1, j2, S=S, k=int(k))

    def obstacle(self, edge):
        return self.graph.edges[edge]["S"]

    def group(self, edge):
        return self.graph.edges[edge]["k"]

    def union(self):
        """ All blue points used by some obstacle, sorted.
        """
        return tuple(sorted(set(i for e in self.edges for i in self.obstacle(e))))

    def group_union(self, t):
        """ Blue points of the obstacles of edges in blue group t, sorted.
        """
        return tuple(
            sorted(set(i for e in self.edges if self.group(e) == t for i in self.obstacle(e)))
        )

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"edge": list(e), "S": list(self.obstacle(e)), "k": self.group(e)}
                for e in self.edges
            ],
        }


def round_robin(inst):
    """ The default group rule: the single blue group when there is one,
    else edge index modulo the number of blue groups.
    """

    def rule(index, edge, S):
        return 0 if inst.blue_groups == 1 else index % inst.blue_groups

    return rule


def build_obstacle_graph(
    inst, V, group_rule=None, graph_limit=None, candidates=None, obstacles=None
):
    """ build_obstacle_graph(inst, V, group_rule=None, graph_limit=None,
    candidates=None, obstacles=None)

    Build the obstacle graph over the red points V: an edge for every pair
    with a nontrivial minimal blue obstacle (taken from ``candidates``,
    all blue points by default). ``group_rule(index, edge, S)`` picks
    each edge's blue group; edges are visited in sorted order. An optional
    dict ``obstacles`` caches pair results between calls.

    Raises ValueError when V has more than graph_limit vertices (default
    PWLSEP_GRAPH_LIMIT or 12).
    """
    V = sorted(set(V))
    if graph_limit is None:
        graph_limit = env_int("PWLSEP_GRAPH_LIMIT", EXACT_LIMIT)
    if len(V) > graph_limit:
        raise ValueError(
            "Obstacle graph with %i vertices exceeds the limit of %i." % (len(V), graph_limit)
        )
    if len(V) > EXACT_LIMIT:
        logger.warning(
            "Obstacle graph with %i vertices: stability numbers may take long." % len(V)
        )
    rule = group_rule or round_robin(inst)
    candidates = tuple(inst.blue if candidates is None else sorted(candidates))
    g = ObstacleGraph(inst, V)
    index = 0
    for a, b in itertools.combinations(V, 2):
        key = (a, b, candidates)
        if obstacles is not None and key in obstacles:
            S = obstacles[key]
        else:
            try:
                S = find_obstacle(inst, a, b, candidates)
            except TrivialOnlyError:
                S = None
            if obstacles is not None:
                obstacles[key] = S
        if S is None:
            continue
        g.add_edge(a, b, S, rule(index, (a, b), S))
        index += 1
    return g


## Stable sets


def stability_number(graph):
    """ stability_number(graph)

    α(G), computed exactly as the maximum clique of the complement
    (networkx branch and bound).
    """
    if graph.number_of_nodes() == 0:
        return 0
    _, weight = nx.max_weight_clique(nx.complement(graph), weight=None)
    return int(weight)


def maximum_stable_sets(graph, alpha=None):
    """ maximum_stable_sets(graph, alpha=None)

    All stable sets of size α(G), as sorted tuples in sorted order.
    """
    if graph.number_of_nodes() == 0:
        return [()]
    if alpha is None:
        alpha = stability_number(graph)
    found = set()
    for clique in nx.find_cliques(nx.complement(graph)):
        if len(clique) == alpha:
            found.add(tuple(sorted(clique)))
    return sorted(found)


class GraphCertificates(object):
    """ GraphCertificates(alpha, ...)

    What certify_graph() found out about an obstacle graph: the stability
    number, the structural flags with their counterexamples, the maximum
    stable sets (None when not enumerated) and the separability
    hypotheses of the rank facet theorem (None when unverified).
    """

    def __init__(
        self,
        alpha,
        non_critical=(),
        overlapping=None,
        non_minimal=(),
        trivial=(),
        connected=True,
        stable_sets=None,
        hypotheses=None,
        n_vertices=0,
    ):
        self.alpha = alpha
        self.non_critical = list(non_critical)
        self.overlapping = overlapping
        self.non_minimal = list(non_minimal)
        self.trivial = list(trivial)
        self.connected = connected
        self.stable_sets = stable_sets
        self.hypotheses = hypotheses or Dict(i=None, ii=None, iii=None)
        self.n_vertices = n_vertices

    def __repr__(self):
        return "<GraphCertificates alpha=%i %s>" % (self.alpha, self.flags)

    @property
    def critical(self):
        return not self.non_critical

    @property
    def disjoint(self):
        return self.overlapping is None

    @property
    def minimal(self):
        return not self.non_minimal

    @property
    def nontrivial(self):
        return not self.trivial

    @property
    def flags(self):
        return Dict(
            disjoint=self.disjoint,
            minimal=self.minimal,
            critical=self.critical,
            connected=self.connected,
        )

    @property
    def hypotheses_verified(self):
        return all(v is True for v in self.hypotheses.values())

    @property
    def facet_conditions(self):
        """ Whether every condition of the rank facet theorem holds.
        """
        return (
            self.n_vertices > 1
            and all(self.flags.values())
            and self.hypotheses_verified
        )

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "flags": dict(self.flags),
            "nontrivial": self.nontrivial,
            "non_critical_edges": [list(e) for e in self.non_critical],
            "non_minimal_edges": [list(e) for e in self.non_minimal],
            "overlapping_edges": None
            if self.overlapping is None
            else [list(e) for e in self.overlapping],
            "maximum_stable_sets": None
            if self.stable_sets is None
            else [list(s) for s in self.stable_sets],
            "hypotheses": dict(self.hypotheses),
            "facet_conditions": self.facet_conditions,
        }


def certify_graph(g, stable_set_limit=EXACT_LIMIT, check_hypotheses=True):
    """ certify_graph(g, stable_set_limit=12, check_hypotheses=True)

    Compute the stability number of an ObstacleGraph, the critical,
    connected, disjoint and minimal properties and, for graphs with at
    most stable_set_limit vertices, the maximum stable sets and the three
    separability hypotheses:

      (i) x_I is separable from x_{S_t} for every maximum stable set I
          and blue group t, where S_t joins the obstacles of group t;
      (ii) every red point j outside V has a maximum stable set I with
          x_{I ∪ {j}} separable from every x_{S_t};
      (iii) every blue point i outside all obstacles and every group t
          have a maximum stable set I with x_I separable from
          x_{S_t ∪ {i}}.
    """
    G = g.graph
    inst = g.instance
    pts = inst.points
    alpha = stability_number(G)
    edges = g.edges

    non_critical = []
    for e in edges:
        H = G.copy()
        H.remove_edge(*e)
        if stability_number(H) != alpha + 1:
            non_critical.append(e)

    overlapping = None
    for e, f in itertools.combinations(edges, 2):
        if set(g.obstacle(e)) & set(g.obstacle(f)):
            overlapping = (e, f)
            break

    non_minimal, trivial = [], []
    for e in edges:
        S = [pts[i] for i in g.obstacle(e)]
        if not is_minimal_obstacle(pts[e[0]], pts[e[1]], S):
            non_minimal.append(e)
        if classify_obstacle(pts[e[0]], pts[e[1]], S) is ObstacleClass.TRIVIAL:
            trivial.append(e)

    connected = G.number_of_nodes() > 0 and nx.is_connected(G)

    stable_sets, hypotheses = None, None
    if G.number_of_nodes() <= stable_set_limit:
        stable_sets = maximum_stable_sets(G, alpha)
        if check_hypotheses:
            hypotheses = _check_hypotheses(g, stable_sets)
    else:
        logger.info("Rank hypotheses unverified for %i vertices" % G.number_of_nodes())

    return GraphCertificates(
        alpha,
        non_critical,
        overlapping,
        non_minimal,
        trivial,
        connected,
        stable_sets,
        hypotheses,
        G.number_of_nodes(),
    )


def _check_hypotheses(g, stable_sets):
    inst = g.instance
    pts = inst.points
    groups = range(inst.blue_groups)
    S_t = {t: g.group_union(t) for t in groups}
    covered = set(g.union())
    V = set(g.vertices)
    cache = {}

    def separable(red_idx, blue_idx):
        key = (tuple(sorted(red_idx)), tuple(sorted(blue_idx)))
        if key not in cache:
            cache[key] = separate(
                [pts[i] for i in key[1]], [pts[j] for j in key[0]], inst.dimension
            ).separable
        return cache[key]

    hyp_i = all(separable(I, S_t[t]) for I in stable_sets for t in groups)
    hyp_ii = all(
        any(all(separable(I + (j,), S_t[t]) for t in groups) for I in stable_sets)
        for j in inst.red
        if j not in V
    )
    hyp_iii = all(
        any(separable(I, S_t[t] + (i,)) for I in stable_sets)
        for i in inst.blue
        if i not in covered
        for t in groups
    )
    return Dict(i=hyp_i, ii=hyp_ii, iii=hyp_iii)


def gen_rank(inst, g, l, certificates=None):
    """ gen_rank(inst, g, l, certificates=None)

    The rank inequality of obstacle graph g for red group l:

        Σ_{j∈V} z_jl + Σ_{e∈E} Σ_{i∈S_e} z_{i k_e} ≤ α(G) + Σ_{e∈E} |S_e|

    The provenance records the graph, the certificates and whether all
    conditions of the rank facet theorem were verified.
    """
    if g.instance.key != inst.key:
        raise ValueError("Obstacle graph belongs to another instance.")
    if not 0 <= l < inst.red_groups:
        raise ValueError("Red group %i does not exist." % l)
    if not g.vertices:
        raise ValueError("A rank inequality needs at least one vertex.")
    cert = certificates or certify_graph(g)
    coeffs = {}
    rhs = cert.alpha
    for j in g.vertices:
        coeffs[(j, l)] = Fraction(1)
    for e in g.edges:
        S, k = g.obstacle(e), g.group(e)
        rhs += len(S)
        for i in S:
            coeffs[(i, k)] = coeffs.get((i, k), 0) + 1
    graph = g.to_dict()
    provenance = Provenance(
        CutKind.OBSTACLE_RANK,
        vertices=graph["vertices"],
        edges=graph["edges"],
        group=l,
        alpha=cert.alpha,
        flags=dict(cert.flags),
        hypotheses=dict(cert.hypotheses),
        facet_conditions=cert.facet_conditions,
    )
    return ZInequality(coeffs, rhs, provenance)


class RankFamily(CutFamily):
    """ Rank inequalities of obstacle graphs over red points. They are
    facet-inducing when the graph is disjoint, minimal, critical and
    connected and the separability hypotheses hold.

    Parameters for generate
    -----------------------
    max_graphs : int
        Maximum number of connected vertex sets to use. Default 64.
    graph_limit : int | None
        Largest vertex set; defaults to PWLSEP_GRAPH_LIMIT or 12.
    """

    def _generate(self, inst, max_graphs=64, graph_limit=None):
        if graph_limit is None:
            graph_limit = env_int("PWLSEP_GRAPH_LIMIT", EXACT_LIMIT)
        red = inst.red[:graph_limit]
        if len(red) < len(inst.red):
            logger.debug("Rank graphs use the first %i red points" % len(red))
        cache = {}
        full = build_obstacle_graph(inst, red, graph_limit=graph_limit, obstacles=cache)
        count = 0
        for size in range(2, len(red) + 1):
            for V in itertools.combinations(red, size):
                if count >= max_graphs:
                    return
                if not nx.is_connected(full.graph.subgraph(V)):
                    continue
                count += 1
                g = build_obstacle_graph(inst, V, graph_limit=graph_limit, obstacles=cache)
                cert = certify_graph(g)
                for l in range(inst.red_groups):
                    yield gen_rank(inst, g, l, cert)

    def _separate(self, inst, zmap, config):
        candidates = [
            i for i in inst.blue if any(zmap.get((i, k), 0) > 0 for k in range(inst.blue_groups))
        ]
        cache = {}

        def best_group(index, edge, S):
            return max(
                range(inst.blue_groups),
                key=lambda k: (sum(zmap.get((i, k), 0) for i in S), -k),
            )

        for l in range(inst.red_groups):
            V = [j for j in inst.red if zmap.get((j, l), 0) > 0]
            V = sorted(sorted(V, key=lambda j: (-zmap[(j, l)], j))[: config.graph_limit])
            if len(V) < 2:
                continue
            g = build_obstacle_graph(
                inst, V, best_group, config.graph_limit, candidates, cache
            )
            for component in sorted(nx.connected_components(g.graph), key=min):
                if len(component) < 2:
                    continue
                sub = build_obstacle_graph(
                    inst, component, best_group, config.graph_limit, candidates, cache
                )
                cert = certify_graph(sub, check_hypotheses=False)
                yield gen_rank(inst, sub, l, cert)


# Register
family = RankFamily(
    "rank",
    "Rank inequalities of obstacle graphs (stable set structure)",
    CutKind.OBSTACLE_RANK,
)
families.add_family(family)
