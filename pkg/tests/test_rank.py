""" Tests for obstacle graphs and rank inequalities.
"""

import networkx as nx

from pytest import raises
from pwlsep.testing import run_tests_if_main

import pwlsep
from pwlsep.core import Instance, CutKind, PoolConfig
from pwlsep.generators import generate_case, generate_instance
from pwlsep.plugins.rank import ObstacleGraph, build_obstacle_graph, round_robin
from pwlsep.plugins.rank import stability_number, maximum_stable_sets, certify_graph, gen_rank


def prism_instance(seed=0):
    return generate_instance("obstacle-prism", seed)


def test_stability_number():

    assert stability_number(nx.path_graph(4)) == 2
    assert stability_number(nx.complete_graph(4)) == 1
    assert stability_number(nx.cycle_graph(5)) == 2
    assert stability_number(nx.Graph()) == 0

    assert maximum_stable_sets(nx.path_graph(3)) == [(0, 2)]
    assert maximum_stable_sets(nx.cycle_graph(4)) == [(0, 2), (1, 3)]
    assert maximum_stable_sets(nx.Graph()) == [()]


def test_obstacle_graph():

    # Blue x = 0 segment crossing the red segment on y = 0
    inst = Instance.from_points([(0, -1), (0, 1)], [(-1, 0), (1, 0), (-5, 5)], 2, 1)
    g = ObstacleGraph(inst, [4, 3, 2])
    assert g.vertices == (2, 3, 4)
    assert g.edges == ()
    g.add_edge(3, 2, [1, 0], 1)
    assert g.edges == ((2, 3),)
    assert g.obstacle((2, 3)) == (0, 1)
    assert g.group((2, 3)) == 1
    assert g.union() == (0, 1)
    assert g.group_union(0) == () and g.group_union(1) == (0, 1)
    assert g.to_dict() == {"vertices": [2, 3, 4], "edges": [{"edge": [2, 3], "S": [0, 1], "k": 1}]}

    with raises(ValueError):
        ObstacleGraph(inst, [0, 2])
    with raises(ValueError):
        g.add_edge(2, 2, [0, 1], 0)
    with raises(ValueError):
        g.add_edge(2, 3, [0, 1], 2)
    with raises(ValueError):
        g.add_edge(2, 3, [0, 4], 0)
    with raises(ValueError):
        g.add_edge(2, 4, [0, 1], 0)  # no obstacle
    with raises(ValueError):
        g.add_edge(2, 1, [0], 0)

    rule = round_robin(inst)
    assert [rule(n, None, None) for n in range(3)] == [0, 1, 0]


def test_build_obstacle_graph():

    inst = prism_instance()
    g = build_obstacle_graph(inst, inst.red)
    assert len(g.edges) == 3
    blue = inst.blue
    assert sorted(g.obstacle(e) for e in g.edges) == [
        (blue[0], blue[1]),
        (blue[2], blue[3]),
        (blue[4], blue[5]),
    ]
    assert all(g.group(e) == 0 for e in g.edges)

    # Cached pair results give the same graph
    cache = {}
    first = build_obstacle_graph(inst, inst.red, obstacles=cache)
    second = build_obstacle_graph(inst, inst.red, obstacles=cache)
    assert first.to_dict() == second.to_dict() == g.to_dict()
    assert len(cache) == 3

    with raises(ValueError):
        build_obstacle_graph(inst, inst.red, graph_limit=2)


def test_certify_prism():

    case = generate_case("rank-prism", 0)
    (q, expected), = case.checks
    assert expected is True
    assert q.kind is CutKind.OBSTACLE_RANK
    assert q.rhs == 7
    assert q.provenance.data.alpha == 1
    assert q.provenance.data.facet_conditions is True

    inst = case.instance
    g = build_obstacle_graph(inst, inst.red)
    cert = certify_graph(g)
    assert cert.alpha == 1
    assert cert.critical and cert.disjoint and cert.minimal and cert.nontrivial
    assert cert.connected
    assert cert.hypotheses_verified and cert.facet_conditions
    assert len(cert.stable_sets) == 3
    data = cert.to_dict()
    assert data["overlapping_edges"] is None
    assert data["facet_conditions"] is True

    # Without stable set enumeration the hypotheses stay unverified
    cert = certify_graph(g, stable_set_limit=2)
    assert cert.stable_sets is None
    assert not cert.hypotheses_verified and not cert.facet_conditions


def test_certify_flags():

    inst = prism_instance(1)
    r = inst.red
    g = build_obstacle_graph(inst, inst.red)
    # Dropping an edge of a path on three vertices keeps alpha
    path = ObstacleGraph(inst, r)
    for e in g.edges[:2]:
        path.add_edge(e[0], e[1], g.obstacle(e), 0)
    cert = certify_graph(path)
    assert cert.alpha == 2
    assert not cert.critical and cert.connected
    assert len(cert.non_critical) == 2
    assert not cert.facet_conditions

    # Shared obstacles
    shared = ObstacleGraph(inst, r)
    all_blue = inst.blue
    shared.add_edge(r[0], r[1], all_blue, 0)
    shared.add_edge(r[0], r[2], g.obstacle((r[0], r[2])), 0)
    cert = certify_graph(shared)
    assert not cert.disjoint
    assert not cert.minimal
    assert not cert.facet_conditions

    # Isolated vertex
    loose = ObstacleGraph(inst, r)
    loose.add_edge(r[0], r[1], g.obstacle((r[0], r[1])), 0)
    cert = certify_graph(loose)
    assert not cert.connected


def test_gen_rank():

    inst = prism_instance()
    g = build_obstacle_graph(inst, inst.red)
    q = gen_rank(inst, g, 0)
    assert q.rhs == 7
    assert all(q.coeffs[(j, 0)] == 1 for j in inst.red)
    assert all(q.coeffs[(i, 0)] == 1 for i in inst.blue)

    with raises(ValueError):
        gen_rank(inst, g, 1)
    with raises(ValueError):
        gen_rank(inst.with_budgets(1, 2), g, 0)
    with raises(ValueError):
        gen_rank(inst, ObstacleGraph(inst, []), 0)


def test_rank_family():

    inst = prism_instance()
    family = pwlsep.families["rank"]
    cuts = family.generate(inst)
    assert sorted(q.rhs for q in cuts) == [3, 3, 3, 7]

    # The full graph cut separates the all-ones point
    found = family.separate(inst, [1] * inst.n_vars, PoolConfig())
    assert len(found) == 1
    assert found[0].rhs == 7
    assert found[0].violation({v: 1 for v in inst.z_vars}) == 2

    assert family.generate(inst, max_graphs=1) == cuts[:1]


run_tests_if_main()
