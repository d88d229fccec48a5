"""
Run the developer tasks with ``python -m tasks``; without arguments this
shows the help task.
"""

import sys

from invoke import Program

from . import ns

argv = list(sys.argv)
if len(argv) == 1:
    argv.append("help")

Program(namespace=ns, name="pwlsep tasks").run(argv)
