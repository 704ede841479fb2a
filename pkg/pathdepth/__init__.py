__version__ = "0.1.0"

from .betti import betti_table
from .betti import depth_ideal
from .betti import depth_quotient
from .betti import pd_quotient
from .monomials import MonomialIdeal
from .monomials import minimalize
from .sdepth import PosetMode
from .sdepth import sdepth
from .settings import EngineSettings

__all__ = [
    "EngineSettings",
    "MonomialIdeal",
    "PosetMode",
    "betti_table",
    "depth_ideal",
    "depth_quotient",
    "minimalize",
    "pd_quotient",
    "sdepth",
]
