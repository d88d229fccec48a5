"""
Config and definitions specific to pwlsep.
"""

from . import ROOT_DIR, THIS_DIR  # noqa

NAME = "pwlsep"
