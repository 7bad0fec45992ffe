"""
invperm: bijective combinatorics of 021-avoiding inversion sequences and
(2413,4213)-avoiding permutations, with exhaustive desk-scale verification.

The package provides the outline representation of 021-avoiding inversion
sequences as two-colored Dyck paths, the labeling bijection ``psi`` and its
inverse, the recursive insertion bijection ``phi``, the full suite of
set-valued statistics on both universes, the modified Foata-Strehl group
action with gamma-vector extraction, and exact truncated power series
solving the path generating-function system.
"""

from .core import (
    InternalInvariantError,
    InversionSequence,
    Permutation,
    PositionSet,
    ValidationError,
    inverse,
    make_inversion_sequence,
    make_permutation,
    theta,
)
from .bijections import ava, big_jumps, insert_tk, phi, phi_inverse, psi, psi_inverse
from .outline import (
    DiagonalLine,
    TwoColoredDyckPath,
    expo_set,
    invert_outline,
    lines_of,
    outline_of,
)
from .patterns import (
    Pattern,
    avoids_all,
    contains,
    enumerate_avoiding_inversion_sequences,
    enumerate_avoiding_permutations,
)
from .statistics import DistributionPolynomial, distribution, equidistributed

__version__ = "0.1.0"

__all__ = [
    "InternalInvariantError",
    "InversionSequence",
    "Permutation",
    "PositionSet",
    "ValidationError",
    "inverse",
    "make_inversion_sequence",
    "make_permutation",
    "theta",
    "ava",
    "big_jumps",
    "insert_tk",
    "phi",
    "phi_inverse",
    "psi",
    "psi_inverse",
    "DiagonalLine",
    "TwoColoredDyckPath",
    "expo_set",
    "invert_outline",
    "lines_of",
    "outline_of",
    "Pattern",
    "avoids_all",
    "contains",
    "enumerate_avoiding_inversion_sequences",
    "enumerate_avoiding_permutations",
    "DistributionPolynomial",
    "distribution",
    "equidistributed",
    "__version__",
]
