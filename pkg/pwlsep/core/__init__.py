# -*- coding: utf-8 -*-
# pwlsep is distributed under the terms of the (new) BSD License.

""" This subpackage provides the core functionality of pwlsep
(everything but the cut family plugins).
"""

# flake8: noqa

from .util import Dict, as_rational, as_point, format_rational, rank, EchelonBasis
from .util import BaseProgressIndicator, StdoutProgressIndicator
from .util import appdata_dir, env_int
from .lp import LinearProgram, LpOutcome, LpStatus, NumericFailure
from .lp import solve_exact, solve_float, verify_certificate
from .geometry import Hyperplane, ConvexCombinationCertificate, SeparabilityOutcome
from .geometry import ObstacleClass, TrivialOnlyError, ObstacleSearchLimit
from .geometry import separate, in_convex_hull, minimal_inclusion_subset
from .geometry import obstacle_between, classify_obstacle, minimal_obstacle_subset
from .geometry import is_minimal_obstacle, affine_dimension
from .geometry import check_obstacle_extension, check_separable_extension
from .family import CutKind, Provenance, ZInequality, CutFamily, FamilyManager
from .family import CutPool, PoolConfig, separate_cuts, generate_cuts, as_zmap, z_name
from .model import Instance, InstanceError, Assignment, FeasibilityWitness
from .model import BigMConfig, MilpModel, Variable, LinearRow
from .model import is_feasible, objective_value, outlier_count, iter_feasible
from .model import LabLimitError, ENUMERATION_LIMIT, check_enumeration_limit
from .model import build_milp, model_rows, farkas_projection_cut, lift_hyperplane_inequality
from .model import lifted_margin_rows
from .lpfile import export_lp_format, parse_lp_format, read_lp_format, lp_format_text
from .fileio import read_instance, write_instance, read_csv_instance
from .fileio import write_result, read_assignment, write_json, read_json, dumps_json
