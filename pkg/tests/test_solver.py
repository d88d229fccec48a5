""" Tests for the branch-and-cut solver.
"""

from fractions import Fraction

import pytest
from pytest import raises
from pwlsep.testing import run_tests_if_main, need_slow

from pwlsep import solve, solve_enumerative, SolverOptions
from pwlsep.core import Instance, Assignment, LabLimitError, is_feasible
from pwlsep.generators import generate_instance
from pwlsep.solver import OPTIMAL, INCOMPLETE, repair_feasibility
from pwlsep.lab import enumerate_feasible


def triangle_instance(blue_groups=1, red_groups=1):
    return Instance.from_points([(0, 0), (4, 0), (0, 4)], [(1, 1)], blue_groups, red_groups)


def assert_verified(result):
    assert is_feasible(result.instance, result.incumbent)
    for (k, l), h in result.separators.items():
        blue = [result.instance.points[i] for i in result.incumbent.members(True, k)]
        red = [result.instance.points[j] for j in result.incumbent.members(False, l)]
        assert h.separates(blue, red)


def test_options():

    options = SolverOptions(node_limit=10, cut_families=["obstacle"], threshold="1/20")
    assert options.threshold == Fraction(1, 20)
    assert options.workers == 1
    data = options.to_dict()
    assert data["threshold"] == "1/20"
    assert data["cut_families"] == ["obstacle"]
    assert "workers" not in data


def test_workers_from_env(monkeypatch):

    monkeypatch.setenv("PWLSEP_WORKERS", "3")
    assert SolverOptions().workers == 3
    assert SolverOptions(workers=2).workers == 2
    # Invalid values are ignored
    monkeypatch.setenv("PWLSEP_WORKERS", "many")
    assert SolverOptions().workers == 1


def test_small_instances():

    # Linearly separable: everything is assigned
    result = solve(generate_instance("separable", 0))
    assert result.status == OPTIMAL and result.optimal
    assert result.objective == 8 and result.outliers == []
    assert result.gap == 0
    assert_verified(result)

    result = solve(triangle_instance())
    assert result.objective == 3
    assert len(result.outliers) == 1
    assert_verified(result)

    # Two groups on each side untangle the xor layout
    inst = generate_instance("xor", 0)
    result = solve(inst)
    assert result.objective == 8
    assert_verified(result)

    inst = inst.with_budgets(1, 1)
    assert solve(inst).objective == solve_enumerative(inst).objective

    # Inseparable without any point obstacle
    result = solve(generate_instance("triangles-4d"))
    assert result.objective == 5
    assert_verified(result)


def test_against_enumeration():

    for seed in range(5):
        for budgets in ((1, 1), (2, 1), (2, 2)):
            inst = generate_instance("random", seed, *budgets)
            expected = solve_enumerative(inst).objective
            assert solve(inst).objective == expected
            assert solve(inst, SolverOptions(cut_families=[])).objective == expected
            assert solve(inst, SolverOptions(symmetry=False)).objective == expected
        inst = generate_instance("random", seed)
        options = SolverOptions(exact_lp=True)
        assert solve(inst, options).objective == solve_enumerative(inst).objective


@pytest.mark.parametrize("budgets", [(1, 1), (2, 1), (1, 2)])
@pytest.mark.parametrize("seed", range(70))
def test_against_enumeration_random(seed, budgets):
    need_slow()

    d = 2 + seed % 2
    inst = generate_instance("random", seed, *budgets, m=5 + seed % 3, dimension=d)
    result = solve(inst)
    assert result.optimal
    assert result.objective == solve_enumerative(inst).objective
    assert_verified(result)


def test_no_generalization_cuts():

    for seed in range(8):
        inst = generate_instance("random", seed, 2, 2)
        result = solve(inst)
        assert "Generalization" not in result.stats.cuts
        assert "Generalization" not in result.pool.counts()


def test_projection_cuts_in_pool():

    instances = [triangle_instance(), triangle_instance(1, 2)]
    instances += [generate_instance("hull-inclusion", seed) for seed in range(4)]
    instances += [generate_instance("random", seed, 2, 1) for seed in range(12)]
    count = 0
    for inst in instances:
        result = solve(inst, SolverOptions(cut_families=["farkas"]))
        vectors = enumerate_feasible(inst).vectors
        for cut, violated_by in result.pool.entries():
            if cut.kind.value != "FarkasProjection":
                continue
            count += 1
            # Cuts off the point it was separated from, keeps every feasible one
            assert violated_by is not None
            assert cut.violation(violated_by) > 0
            for z in vectors:
                assert cut.is_satisfied(dict(zip(inst.z_vars, z))), (cut, z)
    assert count > 0


def test_xor_needs_outliers():

    for seed in range(3):
        inst = generate_instance("xor", seed, 1, 1)
        result = solve(inst)
        assert len(result.outliers) > 0
        assert result.objective == solve_enumerative(inst).objective
        assert result.objective < inst.m


def test_enumerative():

    result = solve_enumerative(triangle_instance())
    assert result.objective == 3
    assert result.stats.enumerated == 15
    assert result.options is None
    assert "options" not in result.to_dict()

    inst = Instance.from_points([(i, 0) for i in range(13)], [(i, 1) for i in range(12)])
    with raises(LabLimitError):
        solve_enumerative(inst)


def test_limits():

    inst = triangle_instance()
    result = solve(inst, SolverOptions(node_limit=0))
    assert result.status == INCOMPLETE and not result.optimal
    assert result.objective == 0
    assert result.bound == inst.m
    assert result.gap == inst.m

    # Limits that are never reached
    result = solve(inst, SolverOptions(node_limit=1000, time_limit=600))
    assert result.status == OPTIMAL


def test_deterministic():

    inst = generate_instance("random", 3, 2, 2)
    a = solve(inst).to_dict()
    b = solve(inst, SolverOptions(workers=2)).to_dict()
    for d in (a, b):
        d["stats"].pop("time")
    assert a == b


def test_stats_and_pool():

    result = solve(triangle_instance(1, 2))
    stats = result.stats
    assert stats.nodes >= 1
    assert stats.lp_solves >= stats.nodes
    assert sum(stats.cuts.values()) == len(result.pool)
    assert result.objective == 3


def test_to_dict():

    inst = triangle_instance()
    inst.name = "triangle"
    d = solve(inst).to_dict()
    assert set(d) == {
        "status",
        "objective",
        "outliers",
        "n_outliers",
        "bound",
        "gap",
        "assignment",
        "separators",
        "stats",
        "metadata",
        "options",
    }
    assert d["status"] == "Optimal"
    assert d["objective"] == 3 and d["n_outliers"] == 1
    assert d["bound"] == 3 and d["gap"] == 0
    assert len(d["assignment"]["z"]) == 3
    assert d["separators"][0]["pair"] == [0, 0]
    assert d["metadata"]["instance"] == "triangle"
    assert d["metadata"]["M"] == 100

    d = solve(inst).to_dict(as_float=True)
    assert all(isinstance(v, float) for v in d["separators"][0]["p"])


def test_repair_feasibility():

    inst = triangle_instance()
    a = repair_feasibility(inst, [1, 1, 1, 1])
    assert a == Assignment(inst, [None, 0, 0, 0])

    # The lowest value leaves first
    a = repair_feasibility(inst, [1, 1, 1, Fraction(1, 2)])
    assert a == Assignment(inst, [0, 0, 0, None])

    # Values below one half are not rounded up
    a = repair_feasibility(inst, [1, 1, 1, Fraction(2, 5)])
    assert a.groups == (0, 0, 0, None)

    inst = triangle_instance(2, 1)
    a = repair_feasibility(inst, {(0, 1): 1, (1, 0): Fraction(3, 5), (1, 1): Fraction(2, 5)})
    assert a.groups == (1, 0, None, None)


run_tests_if_main()
