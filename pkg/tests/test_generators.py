""" Tests for the instance generators and theorem cases.
"""

from pytest import raises
from pwlsep.testing import run_tests_if_main

from pwlsep.core import ObstacleClass, ZInequality
from pwlsep.core import separate, in_convex_hull, classify_obstacle, affine_dimension
from pwlsep.generators import INSTANCE_FAMILIES, THEOREM_CASES
from pwlsep.generators import generate_instance, generate_case, TheoremCase


def blue_red(inst):
    return [inst.points[i] for i in inst.blue], [inst.points[j] for j in inst.red]


def test_registry():

    assert list(INSTANCE_FAMILIES) == [
        "separable",
        "xor",
        "hull-inclusion",
        "obstacle-triangle",
        "obstacle-prism",
        "triangles-4d",
        "random",
    ]
    with raises(ValueError):
        generate_instance("spiral")
    with raises(ValueError):
        generate_case("no-such-case")


def test_deterministic():

    for name in INSTANCE_FAMILIES:
        a = generate_instance(name, 7)
        b = generate_instance(name, 7)
        assert a == b
        assert a.name == "%s-7" % name
    assert generate_instance("random", 1) != generate_instance("random", 2)


def test_budgets():

    inst = generate_instance("xor")
    assert inst.blue_groups == 2 and inst.red_groups == 2
    inst = generate_instance("xor", blue_groups=1)
    assert inst.blue_groups == 1 and inst.red_groups == 2
    inst = generate_instance("hull-inclusion")
    assert inst.blue_groups == 1 and inst.red_groups == 2


def test_instance_families():

    for seed in range(3):
        inst = generate_instance("separable", seed, n_blue=3, n_red=5, dimension=3)
        assert len(inst.blue) == 3 and len(inst.red) == 5 and inst.dimension == 3
        assert separate(*blue_red(inst)).separable

        inst = generate_instance("xor", seed, per_cluster=3)
        assert inst.m == 12
        blue, red = blue_red(inst)
        assert not separate(blue, red).separable
        assert all(x[0] * x[1] > 0 for x in blue)
        assert all(x[0] * x[1] < 0 for x in red)

        inst = generate_instance("hull-inclusion", seed, inside=2, outside=1)
        blue, red = blue_red(inst)
        assert len(blue) == 3 and affine_dimension(blue) == 2
        inside = [x for x in red if in_convex_hull(x, blue) is not None]
        assert len(inside) == 2 and len(red) == 3

        inst = generate_instance("obstacle-triangle", seed)
        assert len(inst.blue) == 6 and len(inst.red) == 3

        inst = generate_instance("obstacle-prism", seed)
        assert inst.dimension == 3
        blue, red = blue_red(inst)
        for e, (a, b) in enumerate(((0, 1), (0, 2), (1, 2))):
            kind = classify_obstacle(red[a], red[b], blue[2 * e : 2 * e + 2])
            assert kind is ObstacleClass.NONTRIVIAL_MINIMAL

        inst = generate_instance("random", seed, m=5)
        blue, red = blue_red(inst)
        assert inst.m == 5 and blue and red
        assert not set(blue) & set(red)

    inst = generate_instance("triangles-4d", 3)
    assert inst.dimension == 4 and inst.m == 6
    assert not separate(*blue_red(inst)).separable

    with raises(ValueError):
        generate_instance("random", m=1)


def test_theorem_cases():

    for name in THEOREM_CASES:
        for seed in range(2):
            case = generate_case(name, seed)
            assert isinstance(case, TheoremCase)
            assert case.theorem == name
            assert case.seed == seed
            assert case.instance.name == "%s-%i" % (name, seed)
            assert case.instance.n_vars <= 24
            for q, expected in case.checks:
                assert isinstance(q, ZInequality)
                assert expected in (True, False, None)
            assert name in repr(case)

    assert generate_case("dimension", 0).checks == []
    case = generate_case("model-row", 4)
    inst = case.instance
    assert len(case.checks) == inst.m + inst.n_vars
    assert all(expected is True for _, expected in case.checks)

    case = generate_case("obstacle-extension", 3)
    inst = case.instance
    assert case.checks == []
    assert [lemma[0] for lemma in case.lemmas] == ["obstacle-extension", "separable-extension"]
    for kind, j1, j2, S, extra in case.lemmas:
        assert not inst.is_blue(j1) and not inst.is_blue(j2)
        assert all(inst.is_blue(i) for i in S)
        assert extra not in S and extra not in (j1, j2)
    assert generate_case("dimension", 0).lemmas == []


run_tests_if_main()
