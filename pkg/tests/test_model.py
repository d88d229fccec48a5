""" Tests for instances, assignments and the big-M model.
"""

from fractions import Fraction

from pytest import raises
from pwlsep.testing import run_tests_if_main

from pwlsep.core import Instance, InstanceError, Assignment, BigMConfig
from pwlsep.core import is_feasible, objective_value, outlier_count, iter_feasible
from pwlsep.core import LabLimitError, ENUMERATION_LIMIT, check_enumeration_limit
from pwlsep.core import build_milp, model_rows, farkas_projection_cut
from pwlsep.core import lift_hyperplane_inequality, CutKind, MilpModel, Variable, LinearRow
from pwlsep.core import lifted_margin_rows


def triangle_instance(blue_groups=1, red_groups=1):
    # A red point inside a blue triangle
    return Instance.from_points(
        [(0, 0), (4, 0), (0, 4)], [(1, 1)], blue_groups, red_groups, name="triangle"
    )


def square_instance(blue_groups=1, red_groups=1):
    # Blue on one diagonal, red on the other
    return Instance.from_points([(0, 0), (2, 2)], [(0, 2), (2, 0)], blue_groups, red_groups)


def test_instance():

    inst = triangle_instance(2, 1)
    assert inst.m == 4 and inst.dimension == 2
    assert inst.blue == (0, 1, 2) and inst.red == (3,)
    assert inst.labels == ("B", "B", "B", "R")
    assert inst.is_blue(0) and not inst.is_blue(3)
    assert inst.n_groups(0) == 2 and inst.n_groups(3) == 1
    assert inst.z_vars == ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0))
    assert inst.n_vars == 7
    assert inst.z_position((2, 1)) == 5
    with raises(KeyError):
        inst.z_position((3, 1))
    assert inst.pairs == [(0, 0), (1, 0)]
    assert inst.max_abs_coordinate() == 4
    assert "triangle" in repr(inst)

    # Budgets are part of the identity, the name is not
    assert inst.with_budgets(1, 1) == triangle_instance()
    assert inst != triangle_instance()
    other = triangle_instance(2, 1)
    other.name = "renamed"
    assert other == inst and hash(other) == hash(inst)

    # Labels are case-insensitive, coordinates may be strings
    inst = Instance([["1/2", "0.25"], [0, 0]], ["b", "r"])
    assert inst.points[0] == (Fraction(1, 2), Fraction(1, 4))
    assert inst.labels == ("B", "R")


def test_instance_errors():

    with raises(InstanceError):
        Instance([], [])
    with raises(InstanceError):
        Instance([(0, 0)], ["B", "R"])
    with raises(InstanceError):
        Instance([(0, 0)], ["X"])
    with raises(InstanceError):
        Instance([(0, 0), (1,)], ["B", "R"])
    with raises(InstanceError):
        Instance([()], ["B"])
    with raises(InstanceError):
        Instance([("abc", 0)], ["B"])
    with raises(InstanceError):
        Instance([(0, 0)], ["B"], blue_groups=0)
    with raises(InstanceError):
        Instance([(0, 0)], ["B"], red_groups=1.5)
    assert issubclass(InstanceError, ValueError)


def test_instance_dict():

    inst = Instance([["1/2", 0], [3, -1]], ["B", "R"], 2, 1, name="small")
    data = inst.to_dict()
    assert data == {
        "dimension": 2,
        "points": [["1/2", 0], [3, -1]],
        "labels": ["B", "R"],
        "blue_groups": 2,
        "red_groups": 1,
        "name": "small",
    }
    back = Instance.from_dict(data)
    assert back == inst and back.name == "small"

    # Budgets default to one
    inst = Instance.from_dict({"points": [[0], [1]], "labels": ["B", "R"]})
    assert inst.blue_groups == 1 and inst.red_groups == 1

    with raises(InstanceError):
        Instance.from_dict({"points": [[0, 0]], "labels": ["B"], "dimension": 3})
    with raises(InstanceError):
        Instance.from_dict({"labels": ["B"]})
    with raises(InstanceError):
        Instance.from_dict(None)


def test_assignment():

    inst = triangle_instance(2, 1)
    a = Assignment(inst, [0, 1, None, 0])
    assert a.groups == (0, 1, None, 0)
    assert a.outliers == [2]
    assert a.members(True, 0) == [0] and a.members(True, 1) == [1]
    assert a.members(False, 0) == [3]
    assert a.z(0, 0) == 1 and a.z(0, 1) == 0
    assert a.vector == (1, 0, 0, 1, 0, 0, 1)
    assert a.zmap == {(0, 0): 1, (1, 1): 1, (3, 0): 1}
    assert objective_value(a) == 3 and outlier_count(a) == 1
    assert a.without([0]).groups == (None, 1, None, 0)

    # From z-vectors and mappings
    assert Assignment.from_z(inst, a.vector) == a
    assert Assignment.from_z(inst, a.zmap) == a
    assert Assignment.outliers_only(inst).outliers == [0, 1, 2, 3]

    with raises(ValueError):
        Assignment(inst, [0, 0, 0])
    with raises(ValueError):
        Assignment(inst, [0, 0, 0, 1])  # red has one group only
    with raises(ValueError):
        Assignment.from_z(inst, [1, 1, 0, 0, 0, 0, 0])
    with raises(ValueError):
        Assignment.from_z(inst, [Fraction(1, 2), 0, 0, 0, 0, 0, 0])
    with raises(ValueError):
        Assignment.from_z(inst, [0, 0])


def test_is_feasible():

    # The diagonals cross: one group per class is infeasible
    inst = square_instance()
    a = Assignment(inst, [0, 0, 0, 0])
    witness = is_feasible(inst, a)
    assert not witness and not witness.feasible
    assert witness.failing_pair == (0, 0)
    cert = witness.certificate
    assert cert.blue_index == (0, 1) and cert.red_index == (2, 3)
    assert cert.verify([inst.points[i] for i in (0, 1)], [inst.points[j] for j in (2, 3)])
    assert "infeasible" in repr(witness)

    # Two blue groups fix it
    inst = square_instance(2, 1)
    a = Assignment(inst, [0, 1, 0, 0])
    witness = is_feasible(inst, a)
    assert witness
    assert sorted(witness.separators) == [(0, 0), (1, 0)]
    h = witness.separators[(1, 0)]
    assert h.separates([(2, 2)], [(0, 2), (2, 0)])

    # Outliers make anything feasible
    assert is_feasible(inst, Assignment.outliers_only(inst))

    with raises(ValueError):
        is_feasible(square_instance(), a)


def test_iter_feasible():

    inst = triangle_instance()
    vectors = list(iter_feasible(inst))
    assert len(vectors) == 15
    assert (1, 1, 1, 1) not in vectors
    assert len(set(vectors)) == 15
    assert vectors[0] == (0, 0, 0, 0)

    # Coinciding points of both classes
    inst = Instance.from_points([(0, 0)], [(0, 0)])
    assert sorted(iter_feasible(inst)) == [(0, 0), (0, 1), (1, 0)]

    # Fixed prefixes split the enumeration
    inst = square_instance(2, 2)
    total = list(iter_feasible(inst))
    parts = []
    for option in (None, 0, 1):
        parts.extend(iter_feasible(inst, (option,)))
    assert sorted(parts) == sorted(total)
    for z in total:
        assert is_feasible(inst, Assignment.from_z(inst, z))


def test_enumeration_limit():

    assert ENUMERATION_LIMIT == 24
    inst = Instance.from_points([(i,) for i in range(12)], [(i + 20,) for i in range(12)])
    check_enumeration_limit(inst)
    inst = Instance.from_points([(i,) for i in range(13)], [(i + 20,) for i in range(12)])
    with raises(LabLimitError):
        check_enumeration_limit(inst)
    assert issubclass(LabLimitError, ValueError)


def test_big_m():

    inst = triangle_instance()
    assert BigMConfig.default_for(inst).M == 100  # 10 * (1 + 4) * 2
    assert BigMConfig(1).M == 1
    with raises(ValueError):
        BigMConfig("1/2")

    model = build_milp(inst)
    assert isinstance(model, MilpModel)
    assert model.sense == "max"
    assert model.metadata.M == 100
    assert model.metadata.variant == "assignments"
    names = [v.name for v in model.variables]
    assert names == ["p_0_0_0", "p_0_0_1", "q_0_0", "z_0_0", "z_1_0", "z_2_0", "z_3_0"]
    assert model.binaries == ["z_0_0", "z_1_0", "z_2_0", "z_3_0"]
    assert len(model.rows) == 3 + 1 + 4
    row = model.rows[1]
    assert row.name == "blue_1_0_0"
    assert row.coeffs == {"p_0_0_0": 4, "q_0_0": 1, "z_1_0": 101}
    assert row.sense == "<=" and row.rhs == 100
    row = model.rows[3]
    assert row.name == "red_3_0_0"
    assert row.coeffs == {"p_0_0_0": 1, "p_0_0_1": 1, "q_0_0": 1, "z_3_0": -101}
    assert row.sense == ">=" and row.rhs == -100
    assert model.objective == {"z_0_0": 1, "z_1_0": 1, "z_2_0": 1, "z_3_0": 1}

    # The outlier variant
    model = build_milp(inst, BigMConfig(7), outliers=True)
    assert model.sense == "min" and model.metadata.M == 7
    assert len(model.variables) == 7 + 4
    assign = [r for r in model.rows if r.name.startswith("assign")]
    assert all(r.sense == "=" and r.rhs == 1 for r in assign)
    assert assign[0].coeffs == {"z_0_0": 1, "o_0": 1}
    assert model.objective == {"o_0": 1, "o_1": 1, "o_2": 1, "o_3": 1}

    # Model objects reject bad input
    with raises(ValueError):
        model.add_variable(Variable("o_0", "binary"))
    with raises(ValueError):
        model.add_row(LinearRow("bad", {"nope": 1}, "<=", 0))
    with raises(ValueError):
        Variable("x", "integer")
    with raises(ValueError):
        LinearRow("bad", {}, "<", 0)
    with raises(ValueError):
        MilpModel("m", "maximize")


def test_model_rows():

    inst = triangle_instance(2, 1)
    rows = model_rows(inst)
    assert len(rows) == inst.m + inst.n_vars
    assert all(q.kind is CutKind.MODEL_ROW for q in rows)
    assert rows[0].coeffs == {(0, 0): 1, (0, 1): 1} and rows[0].rhs == 1
    assert rows[inst.m].coeffs == {(0, 0): -1} and rows[inst.m].rhs == 0


def test_farkas_projection_cut():

    inst = triangle_instance()
    full = Assignment(inst, [0, 0, 0, 0])
    witness = is_feasible(inst, full)
    cut = farkas_projection_cut(inst, 0, 0, witness.certificate)
    assert cut.kind is CutKind.FARKAS_PROJECTION
    # Weights 1/2, 1/4, 1/4 on the triangle; M' = max(100, 2 / (1/4) - 1)
    assert cut.provenance.data.M_effective == 100
    assert cut.coeffs == {
        (0, 0): Fraction(101, 2),
        (1, 0): Fraction(101, 4),
        (2, 0): Fraction(101, 4),
        (3, 0): 101,
    }
    assert cut.rhs == 200

    # It cuts off the infeasible assignment and keeps every feasible one
    assert cut.violation(full.zmap) == 2
    for z in iter_feasible(inst):
        assert cut.is_satisfied(dict(zip(inst.z_vars, z)))

    # Small weights raise the constant
    cut = farkas_projection_cut(inst, 0, 0, witness.certificate, BigMConfig(1))
    assert cut.provenance.data.M_effective == 7
    assert cut.rhs == 14

    with raises(ValueError):
        farkas_projection_cut(inst, 0, 0, witness.certificate.relabel([3, 1, 2], [0]))


def test_lift_hyperplane_inequality():

    inst = Instance.from_points([(0, 0)], [(2, 0)])
    # Separators of the pair have q <= -1 (blue at the origin)
    row = lift_hyperplane_inequality(inst, [0], [1], [0, 0, 1], -1, 5)
    assert row.sense == "<="
    assert row.coeffs == {"q_0_0": 1, "z_0_0": 5, "z_1_0": 5}
    assert row.rhs == 9
    assert row.provenance.kind is CutKind.LIFTED
    assert row.name == "lift_0_0_b0_r1"

    model = build_milp(inst)
    model.add_row(row)
    assert model.rows[-1] is row

    # q <= -2 is not valid
    with raises(ValueError):
        lift_hyperplane_inequality(inst, [0], [1], [0, 0, 1], -2, 5)
    lift_hyperplane_inequality(inst, [0], [1], [0, 0, 1], -2, 5, check=False)

    with raises(ValueError):
        lift_hyperplane_inequality(inst, [0], [1], [0, 1], -1, 5)
    with raises(ValueError):
        lift_hyperplane_inequality(inst, [1], [0], [0, 0, 1], -1, 5)
    with raises(ValueError):
        lift_hyperplane_inequality(inst, [0], [1], [0, 0, 1], -1, -1)
    with raises(ValueError):
        lift_hyperplane_inequality(inst, [0], [1], [0, 0, 1], -1, 5, k=1)


def test_lifted_export():

    inst = triangle_instance(2, 1)
    model = build_milp(inst, lifted=True)
    assert model.metadata.lifted
    assert "lifted" not in build_milp(inst).metadata
    lifted = [r for r in model.rows if r.name.startswith("lift_")]
    assert len(lifted) == 2 * 3 * 1
    assert len(model.rows) == len(build_milp(inst).rows) + len(lifted)
    assert lifted == lifted_margin_rows(inst)

    row = lifted[0]
    assert row.name == "lift_0_0_b0_r3"
    assert row.coeffs == {"p_0_0_0": -1, "p_0_0_1": -1, "z_0_0": 101, "z_3_0": 101}
    assert row.sense == "<=" and row.rhs == 200
    assert row.provenance.kind is CutKind.LIFTED
    row = lifted[1]
    assert row.coeffs == {"p_0_0_0": 3, "p_0_0_1": -1, "z_1_0": 101, "z_3_0": 101}

    # Satisfied by a solution of the model: p = 0, q = -1, red point left out
    values = dict((v.name, 0) for v in model.variables)
    values.update(q_0_0=-1, q_1_0=-1, z_0_0=1, z_1_0=1, z_2_0=1)
    for row in lifted:
        assert sum(c * values[v] for v, c in row.coeffs.items()) <= row.rhs

    # Coinciding points lift the bare bound z_ik + z_jl <= 2 - 2/M'
    inst = Instance.from_points([(1, 1)], [(1, 1)])
    (row,) = lifted_margin_rows(inst, BigMConfig(9))
    assert row.coeffs == {"z_0_0": 10, "z_1_0": 10}
    assert row.rhs == 18


run_tests_if_main()
