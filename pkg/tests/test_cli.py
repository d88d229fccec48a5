""" Tests for the command line interface.
"""

import os
import json

from pytest import raises
from pwlsep.testing import run_tests_if_main, get_test_dir

from pwlsep.__main__ import main, EXIT_OK, EXIT_INPUT, EXIT_CONTRADICTION, EXIT_LIMIT
from pwlsep.core import Instance, read_instance, write_instance, read_json
from pwlsep.generators import THEOREM_CASES, TheoremCase, generate_instance
from pwlsep.core import ZInequality, Provenance, CutKind

test_dir = get_test_dir()


def fn(name):
    return os.path.join(test_dir, name)


def triangle_file():
    inst = Instance.from_points([(0, 0), (4, 0), (0, 4)], [(1, 1)], name="triangle")
    write_instance(inst, fn("triangle.json"))
    return fn("triangle.json")


def test_no_command(capsys):

    assert main([]) == EXIT_INPUT
    assert "usage" in capsys.readouterr().out

    with raises(SystemExit):
        main(["--version"])
    with raises(SystemExit):
        main(["solve", "--budgets", "0,1"])
    with raises(SystemExit):
        main(["gen", "--family", "spiral"])


def test_gen(capsys):

    assert main(["gen", "--family", "xor", "--seed", "3", "--output", fn("xor.json")]) == 0
    assert read_instance(fn("xor.json")) == generate_instance("xor", 3)

    assert main(["gen", "--family", "separable", "--budgets", "2,3"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["blue_groups"] == 2 and data["red_groups"] == 3


def test_solve(capsys):

    filename = triangle_file()
    assert main(["solve", "--input", filename, "--output", fn("result.json")]) == EXIT_OK
    result = read_json(fn("result.json"))
    assert result["status"] == "Optimal"
    assert result["objective"] == 3
    assert result["metadata"]["instance"] == "triangle"
    assert "Optimal: 3 of 4 points assigned" in capsys.readouterr().out

    # JSON to stdout, summary to stderr
    assert main(["solve", "--input", filename, "--budgets", "2,1", "--float"]) == EXIT_OK
    out, err = capsys.readouterr()
    assert json.loads(out)["objective"] == 4
    assert "Optimal" in err

    assert main(["solve", "--input", filename, "--node-limit", "0"]) == EXIT_LIMIT
    assert json.loads(capsys.readouterr().out)["status"] == "Incomplete"

    args = ["solve", "--input", filename, "--cut-families", "obstacle,farkas", "--workers", "2"]
    assert main(args) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["options"]["cut_families"] == [
        "obstacle",
        "farkas",
    ]


def test_input_errors(capsys):

    assert main(["solve"]) == EXIT_INPUT
    assert main(["solve", "--input", fn("missing.json")]) == EXIT_INPUT
    assert main(["export", "--input", triangle_file()]) == EXIT_INPUT
    assert main(["solve", "--input", triangle_file(), "--cut-families", "nope"]) == EXIT_INPUT
    with open(fn("broken.json"), "w") as f:
        f.write("[1, 2")
    assert main(["solve", "--input", fn("broken.json")]) == EXIT_INPUT
    assert "Error" in capsys.readouterr().err


def test_verify(capsys):

    args = ["verify", "--family", "inclusion-minimal,obstacle-minimal", "--count", "2"]
    assert main(args + ["--output", fn("suite.json")]) == EXIT_OK
    assert "Theorem suite" in capsys.readouterr().out
    data = read_json(fn("suite.json"))
    assert data["cases"] == 4 and data["contradictions"] == []

    assert main(["verify", "--family", "no-such-case", "--count", "1"]) == EXIT_INPUT

    # Auditing the cuts of an instance
    assert main(["verify", "--input", triangle_file(), "--budgets", "1,2"]) == EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    assert reports and all(r["verdict"] != "NotValid" for r in reports)


def test_verify_contradiction(monkeypatch, capsys):

    def bogus(rng):
        inst = Instance.from_points([(0, 0), (4, 0), (0, 4)], [(1, 1)])
        q = ZInequality({(0, 0): 1}, 2, Provenance(CutKind.MODEL_ROW, row="test"))
        return TheoremCase("bogus", inst, [(q, True)])

    monkeypatch.setitem(THEOREM_CASES, "bogus", bogus)
    assert main(["verify", "--family", "bogus", "--count", "1"]) == EXIT_CONTRADICTION
    assert "CONTRADICTION" in capsys.readouterr().out
    args = ["verify", "--family", "bogus", "--count", "1", "--strict"]
    assert main(args) == EXIT_CONTRADICTION
    assert "Contradiction" in capsys.readouterr().err


def test_cuts_and_export():

    filename = triangle_file()
    assert main(["cuts", "--input", filename, "--output", fn("cuts.jsonl")]) == EXIT_OK
    with open(fn("cuts.jsonl")) as f:
        records = [json.loads(line) for line in f]
    assert records
    kinds = set(r["provenance"]["kind"] for r in records)
    assert "ConvexInclusion" in kinds and "FarkasProjection" in kinds

    args = ["cuts", "--input", filename, "--cut-families", "farkas", "--output", fn("f.jsonl")]
    assert main(args) == EXIT_OK
    with open(fn("f.jsonl")) as f:
        assert all(json.loads(line)["provenance"]["kind"] == "FarkasProjection" for line in f)

    args = ["export", "--input", filename, "--output", fn("model.lp"), "--outliers"]
    assert main(args) == EXIT_OK
    with open(fn("model.lp")) as f:
        text = f.read()
    assert text.startswith("\\ pwlsep")
    assert "o_0" in text

    args = ["export", "--input", filename, "--output", fn("lifted.lp"), "--lifted"]
    assert main(args) == EXIT_OK
    with open(fn("lifted.lp")) as f:
        text = f.read()
    assert " lift_0_0_b0_r3: " in text
    assert "\\ lifted: True" in text


def test_enumeration_limit(capsys):

    # 25 z-variables are beyond the polytope lab
    inst = Instance.from_points([(i, 0) for i in range(13)], [(i, 1) for i in range(12)])
    write_instance(inst, fn("large.json"))
    assert main(["verify", "--input", fn("large.json")]) == EXIT_LIMIT
    err = capsys.readouterr().err
    assert "Limit: " in err and "Error: " not in err


def test_plot():

    filename = triangle_file()
    assert main(["solve", "--input", filename, "--output", fn("result.json")]) == EXIT_OK
    args = ["plot", "--input", filename, "--solution", fn("result.json")]
    assert main(args + ["--output", fn("plot.svg")]) == EXIT_OK
    with open(fn("plot.svg")) as f:
        assert f.read().startswith("<svg")
    assert main(["plot", "--input", filename, "--output", fn("plot.png")]) == EXIT_OK
    assert os.path.isfile(fn("plot.png"))

    write_instance(generate_instance("triangles-4d"), fn("4d.json"))
    assert main(["plot", "--input", fn("4d.json"), "--output", fn("4d.svg")]) == EXIT_INPUT


run_tests_if_main()
