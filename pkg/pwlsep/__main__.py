# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

"""
Console script for pwlsep.

    pwlsep solve --input inst.json --output result.json
    pwlsep verify --family inclusion-minimal --seed 0 --count 50
    pwlsep verify --input inst.json
    pwlsep cuts --input inst.json --output cuts.jsonl
    pwlsep gen --family xor --seed 3 --output inst.json
    pwlsep export --input inst.json --output model.lp --lifted
    pwlsep plot --input inst.json --solution result.json --output inst.svg

Exit codes: 0 success, 2 invalid input, 3 theorem contradiction or
invalid inequality, 4 a solver or enumeration limit was hit.
"""

import sys
import logging
import argparse

from . import __version__, families
from .core import StdoutProgressIndicator, dumps_json, read_instance, write_instance
from .core import read_assignment, write_result, build_milp, export_lp_format
from .core import generate_cuts, CutPool, LabLimitError
from .solver import solve, SolverOptions
from .lab import LabOptions, TheoremContradiction, FacetVerdict, theorem_suite, audit_cuts
from .generators import INSTANCE_FAMILIES, THEOREM_CASES, generate_instance
from .plot import write_plot

logger = logging.getLogger("pwlsep")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONTRADICTION = 3
EXIT_LIMIT = 4


class RunConfig(object):
    """ RunConfig(args)

    The parsed command line, validated before any work starts.
    """

    def __init__(self, args):
        self.command = args.command
        self.input = getattr(args, "input", None)
        self.output = getattr(args, "output", None)
        self.budgets = getattr(args, "budgets", None)
        self.as_float = getattr(args, "as_float", False)
        self.seed = getattr(args, "seed", 0)
        self.family = getattr(args, "family", None)
        self.workers = getattr(args, "workers", None)
        self.cut_families = getattr(args, "cut_families", None)
        self.args = args
        if self.command in ("solve", "cuts", "export", "plot") and not self.input:
            raise ValueError("The %s command needs --input." % self.command)
        if self.command in ("export", "plot") and not self.output:
            raise ValueError("The %s command needs --output." % self.command)
        for name in self.cut_families or ():
            try:
                families[name]
            except IndexError as err:
                raise ValueError(str(err))

    def instance(self):
        nB, nR = self.budgets or (None, None)
        return read_instance(self.input, nB, nR)

    def emit(self, text):
        """ Write text to the output file, or stdout. """
        if self.output:
            with open(self.output, "w") as f:
                f.write(text)
        else:
            sys.stdout.write(text)


def _budgets(text):
    try:
        nB, nR = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("budgets must look like 2,2")
    if nB < 1 or nR < 1:
        raise argparse.ArgumentTypeError("budgets must be positive")
    return nB, nR


def _names(text):
    return [v.strip() for v in text.split(",") if v.strip()]


## Commands


def cmd_solve(config):
    inst = config.instance()
    options = SolverOptions(
        time_limit=config.args.time_limit,
        node_limit=config.args.node_limit,
        cut_families=config.cut_families,
        workers=config.workers,
        seed=config.seed,
    )
    result = solve(inst, options)
    summary = "%s: %i of %i points assigned, %i outliers, gap %s" % (
        result.status,
        result.objective,
        inst.m,
        len(result.outliers),
        result.gap,
    )
    if config.output:
        write_result(result, config.output, config.as_float)
        print(summary)
    else:
        sys.stdout.write(dumps_json(result.to_dict(config.as_float)))
        sys.stderr.write(summary + "\n")
    return EXIT_OK if result.optimal else EXIT_LIMIT


def cmd_verify(config):
    progress = StdoutProgressIndicator("pwlsep") if config.args.verbose else None
    if config.input:
        reports = audit_cuts(config.instance(), config.cut_families, config.workers, progress)
        config.emit(dumps_json([r.to_dict(config.as_float) for r in reports]))
        invalid = [r for r in reports if r.verdict is FacetVerdict.NOT_VALID]
        for r in invalid:
            sys.stderr.write("Invalid inequality: %r\n" % r.inequality)
        return EXIT_CONTRADICTION if invalid else EXIT_OK
    options = LabOptions(config.workers, config.args.strict)
    try:
        report = theorem_suite(
            config.family, config.args.count, config.seed, options, progress
        )
    except TheoremContradiction as err:
        sys.stderr.write("Contradiction: %s\n" % err)
        return EXIT_CONTRADICTION
    if config.output:
        with open(config.output, "w") as f:
            f.write(report.to_json())
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_CONTRADICTION


def cmd_cuts(config):
    inst = config.instance()
    pool = CutPool()
    for cut in generate_cuts(inst, config.cut_families):
        pool.add(cut)
    if config.output:
        pool.dump(config.output, config.as_float)
    else:
        pool.dump(sys.stdout, config.as_float)
    logger.info("Dumped %i cuts" % len(pool))
    return EXIT_OK


def cmd_gen(config):
    nB, nR = config.budgets or (None, None)
    inst = generate_instance(config.family or "random", config.seed, nB, nR)
    if config.output:
        write_instance(inst, config.output)
    else:
        sys.stdout.write(dumps_json(inst.to_dict()))
    return EXIT_OK


def cmd_export(config):
    inst = config.instance()
    model = build_milp(inst, outliers=config.args.outliers, lifted=config.args.lifted)
    export_lp_format(model, config.output)
    return EXIT_OK


def cmd_plot(config):
    inst = config.instance()
    solution = None
    if config.args.solution:
        solution = read_assignment(inst, config.args.solution)
    write_plot(inst, config.output, solution, config.args.size, config.args.radius)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "cuts": cmd_cuts,
    "gen": cmd_gen,
    "export": cmd_export,
    "plot": cmd_plot,
}


## Parser


def get_parser():
    parser = argparse.ArgumentParser(
        prog="pwlsep",
        description="Piecewise linear separation: solver and polytope lab.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")

    def add(name, text):
        p = sub.add_parser(name, help=text)
        p.add_argument("-v", "--verbose", action="count", default=0)
        p.add_argument("--input", help="instance file (.json or .csv)")
        p.add_argument("--output", help="output file (default stdout)")
        return p

    p = add("solve", "solve an instance by branch and cut")
    p.add_argument("--budgets", type=_budgets, help="group budgets nB,nR")
    p.add_argument("--time-limit", dest="time_limit", type=float)
    p.add_argument("--node-limit", dest="node_limit", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cut-families", dest="cut_families", type=_names)
    p.add_argument("--float", dest="as_float", action="store_true")

    p = add("verify", "run the theorem suite, or audit the cuts of an instance")
    p.add_argument("--budgets", type=_budgets)
    p.add_argument("--family", type=_names, help=", ".join(THEOREM_CASES))
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--count", type=int, default=50, help="seeds per theorem case")
    p.add_argument("--workers", type=int)
    p.add_argument("--strict", action="store_true", help="stop at the first contradiction")
    p.add_argument("--cut-families", dest="cut_families", type=_names)
    p.add_argument("--float", dest="as_float", action="store_true")

    p = add("cuts", "dump all cuts of an instance as JSON lines")
    p.add_argument("--budgets", type=_budgets)
    p.add_argument("--cut-families", dest="cut_families", type=_names)
    p.add_argument("--float", dest="as_float", action="store_true")

    p = add("gen", "generate an instance of a named family")
    p.add_argument("--family", choices=list(INSTANCE_FAMILIES), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budgets", type=_budgets)

    p = add("export", "write the big-M model in LP format")
    p.add_argument("--budgets", type=_budgets)
    p.add_argument("--outliers", action="store_true", help="use outlier variables")
    p.add_argument("--lifted", action="store_true", help="add lifted margin rows")

    p = add("plot", "draw a planar instance (SVG or PNG)")
    p.add_argument("--budgets", type=_budgets)
    p.add_argument("--solution", help="result file of the solve command")
    p.add_argument("--size", type=int, default=400)
    p.add_argument("--radius", type=float, default=5)
    return parser


def main(argv=None):
    """ main(argv=None)

    Run the command line; returns the exit code.
    """
    parser = get_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_INPUT
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig(args)
        return COMMANDS[args.command](config)
    except TheoremContradiction as err:
        sys.stderr.write("Contradiction: %s\n" % err)
        return EXIT_CONTRADICTION
    except LabLimitError as err:
        sys.stderr.write("Limit: %s\n" % err)
        return EXIT_LIMIT
    except (ValueError, IOError) as err:
        sys.stderr.write("Error: %s\n" % err)
        return EXIT_INPUT


def main_cli():
    """ Entry point of the pwlsep console script. """
    sys.exit(main())


if __name__ == "__main__":
    main_cli()
