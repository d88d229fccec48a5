from invoke import task

from ._config import NAME


@task
def help(ctx):
    """ Show the developer tasks and the solver entry points.
    """

    print("Developer tools for %s\n" % NAME)
    print("  invoke test --unit [--quick]   run the test suite")
    print("  invoke test --style            run flake8 and black")
    print("  invoke clean                   remove build and test output")
    print("  invoke --help <task>           options of a task\n")
    print("The solver itself runs as: python -m %s {solve,lab,export,generate,...}" % NAME)
    print()
    ctx.run("invoke --list", warn=True)
