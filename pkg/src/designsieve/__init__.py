"""Exact verification toolkit for flag-transitive 2-design feasibility.

Subpackages cover an exact permutation-group engine (orbits, stabilizer
chains, subdegrees, primitivity), 2-design parameter arithmetic and
verification, the elimination sieves behind the block-size-7 classification
with alternating socle, and constructors for the two surviving designs.
"""

from .errors import (
    CapacityError,
    DegreeMismatchError,
    DesignSieveError,
    FormatError,
    IntegrityError,
    IntransitiveError,
    NotAutomorphismError,
    RefutationError,
)
from .perm import (
    OrbitRecord,
    PermGroup,
    Permutation,
    PrimitivityResult,
    StabilizerChain,
    alternating_group,
    compose,
    symmetric_group,
)
from .actions import (
    DEFAULT_LIMITS,
    ActionSpace,
    Limits,
    PairsAction,
    PartitionsAction,
    PointsAction,
    SubsetsAction,
    induced_action,
    orbit_in_space,
)

__version__ = "0.1.0"
