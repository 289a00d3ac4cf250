"""Exact lattice operations on signed charges over semi-rings of sets.

The supremum of a family of set functions is built constructively from
partitions; infimum, Jordan decomposition, variation, ε-Hahn
decompositions and density suprema are derived from it. Values are exact
extended rationals.
"""

from .charge import (
    Charge,
    Polarity,
    RingExtension,
    SetFunction,
    chain_charge,
    check_admissibility,
    check_countable_additivity_witness,
    explicit_charge,
    extend_to_ring,
    point_mass_charge,
    symbolic_charge,
    validate_charge,
    zero_charge,
)
from .cofinite import CofiniteAlgebra, CofiniteSet, SymbolicCharge
from .density import (
    Density,
    DensitySpace,
    measure_of_density,
    pointwise_sup,
    sup_density_measures,
    variation_of_density,
)
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _error_names
from .hahn import HahnCertificate, Impossible, epsilon_hahn, verify_hahn
from .intervals import GridIntervals, Interval, NatIntervals, sup_interval_dp
from .lattice import (
    Meet,
    ba_norm,
    extension_commutes,
    inf_family,
    join,
    jordan,
    jordan_identities,
    meet,
    meet_dichotomy,
    sup_family,
)
from .setsys import (
    EXACT,
    FiniteSemiRing,
    LowerBound,
    Partition,
    RingMember,
    UpperBound,
    power_set,
    validate_semiring,
)
from .xreal import NEG_INF, POS_INF, ExtReal, parse, to_xreal

__version__ = "0.1.0"
