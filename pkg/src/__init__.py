"""
qchu-kit - finite-model checks for possibilistic Chu spaces and their state spaces
"""

from .chu_core import ChuSpace, StateChu, quotient, saturate
from .model_checker import ModelChecker, Report
from .order_core import Poset, build_poset, check_projective_domain
from .ortho_hilbert import Scheme, StateSpace

__version__ = "1.0.0"
__all__ = ["ChuSpace", "StateChu", "quotient", "saturate", "ModelChecker", "Report", "Poset",
           "build_poset", "check_projective_domain", "Scheme", "StateSpace"]
