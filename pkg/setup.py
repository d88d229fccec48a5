# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

# styletest: skip

"""

Release:

  * Write release notes
  * Increase __version__
  * git tag the release (and push the tag to Github)
  * Upload to Pypi: python setup.py sdist bdist_wheel upload

"""

import os
import sys
from distutils.core import Command

try:
    from setuptools import setup  # Supports wheels
except ImportError:
    from distutils.core import setup  # Supports anything else


name = "pwlsep"
description = "Exact piecewise linear separation of two point classes, with a polytope lab."

THIS_DIR = os.path.dirname(os.path.abspath(__file__))

# Get version and docstring
__version__ = None
__doc__ = ""
docStatus = 0  # Not started, in progress, done
initFile = os.path.join(THIS_DIR, "pwlsep", "__init__.py")
for line in open(initFile).readlines():
    if line.startswith("__version__"):
        exec(line.strip())
    elif line.startswith('"""'):
        if docStatus == 0:
            docStatus = 1
            line = line.lstrip('"')
        elif docStatus == 1:
            docStatus = 2
    if docStatus == 1:
        __doc__ += line.rstrip() + "\n"

# Template for long description. __doc__ gets inserted here
long_description = """
__doc__

Example:

.. code-block:: python

    >>> import pwlsep
    >>> inst = pwlsep.Instance.from_points([(0, 0), (4, 0), (0, 4)], [(1, 1)])
    >>> result = pwlsep.solve(inst)
    >>> result.objective, len(result.outliers)
    (3, 1)

On the command line::

    pwlsep gen --family xor --seed 3 --output xor.json
    pwlsep solve --input xor.json --output result.json
    pwlsep verify --count 20
"""


class test_command(Command):
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        from pwlsep import testing

        sys.exit(testing.test_unit())


install_requires = ["numpy", "scipy", "networkx>=2.5", "pillow"]


setup(
    cmdclass={"test": test_command},
    name=name,
    version=__version__,
    author="pwlsep contributors",
    license="(new) BSD",
    keywords="piecewise linear separation classification integer programming facets",
    description=description,
    long_description=long_description.replace("__doc__", __doc__),
    platforms="any",
    provides=["pwlsep"],
    python_requires=">=3.6",
    install_requires=install_requires,
    packages=["pwlsep", "pwlsep.core", "pwlsep.plugins"],
    package_dir={"pwlsep": "pwlsep"},
    entry_points={"console_scripts": ["pwlsep=pwlsep.__main__:main_cli"]},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Education",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.6",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
