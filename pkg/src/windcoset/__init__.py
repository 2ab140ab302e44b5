"""Exact affine characters, minimal-model characters and winding-subalgebra
coset branchings at level one under the doubled embedding."""
from .qseries import QSeries
from .rootsys import RootSystem, build
from .affine import AffineWeight, WeightCharacter, parse_weight
from .virasoro import MinimalModelLabel
from .coset import catalog, verify_branching, verify_e8_doubling, verify_projection

__version__ = "0.1.0"

__all__ = ["QSeries", "RootSystem", "build", "AffineWeight", "WeightCharacter", "parse_weight",
           "MinimalModelLabel", "catalog", "verify_branching", "verify_e8_doubling",
           "verify_projection", "__version__"]
