# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

# This docstring is also used as the long description in setup.py:
"""
Pwlsep is a Python library for piecewise linear separation of two point
classes. It assigns points to a given number of blue and red groups so
that every blue group is linearly separable from every red group, while
leaving as few points as possible unassigned. Results are exact: every
answer comes with separating hyperplanes or convex combination
certificates in rational arithmetic.

Besides an exact branch-and-cut solver, pwlsep provides the valid
inequalities of the problem's integer programming formulation as
plugin families, and a polytope lab that checks their facet properties
by exhaustive enumeration on small instances.
"""

# flake8: noqa

__version__ = "0.3.0"

# Load some bits from core
from .core import FamilyManager

# Instantiate family manager
families = FamilyManager()

# Load the main API
from .core import Instance, Assignment, BigMConfig, is_feasible, objective_value
from .core import separate, in_convex_hull, classify_obstacle, build_milp
from .core import read_instance, write_instance, export_lp_format, parse_lp_format
from .core import separate_cuts, generate_cuts
from .solver import solve, solve_enumerative, SolverOptions
from .lab import enumerate_feasible, check_inequality, theorem_suite

# Load all the plugins
from . import plugins

# expose the show method of families
show_families = families.show

# Clean up some names
del FamilyManager
