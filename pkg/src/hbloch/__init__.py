"""Harmonic alpha-Bloch norms and essential norms of composition operators on the unit disk."""

__version__ = "0.1.0"

from .errors import (ConfigParse, HBlochError, NearBoundarySymbol, OutsideDisk, ParameterDomain,
                     ResourceLimit, SelfMapViolation)
from .disk import *  # noqa: F401,F403
from .maps import *  # noqa: F401,F403
from .harmonic import *  # noqa: F401,F403
from .extremal import *  # noqa: F401,F403
from .norms import *  # noqa: F401,F403
from .symbols import *  # noqa: F401,F403
from .essnorm import *  # noqa: F401,F403
from .approx import *  # noqa: F401,F403
