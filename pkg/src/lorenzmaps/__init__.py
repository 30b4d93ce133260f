"""Topological entropy of Lorenz interval maps.

Two independent estimators: the largest root of the truncated kneading
series (spectral) and the growth rate of lap-image variation (laps), plus
parameter sweeps over the discontinuity with curve diagnostics.
"""

from .errors import (
    DomainError,
    GridMismatch,
    InsufficientData,
    InvalidBranch,
    InvalidSlopes,
    LengthMismatch,
    LorenzError,
    MissingPeriodicForm,
    ModeError,
    NoRootFound,
    RangeError,
    ResourceLimit,
)
from .kneading import (
    EQUAL,
    GREATER,
    LESS,
    KneadingPair,
    compare_lex,
    detect_period,
    itinerary,
    kneading_prefixes,
)
from .laps import LapState, entropy_laps, lap_count, lap_count_bruteforce, lap_states
from .maps import (
    LOWER,
    UPPER,
    BranchPair,
    BranchSpec,
    LorenzMap,
    Scalar,
    make_affine_pair,
    make_uniform_pair,
    parse_scalar,
)
from .spectral import (
    LAPS,
    ODD_CROSSING,
    SPECTRAL,
    TANGENTIAL,
    EntropyEstimate,
    PeriodicForm,
    RootResult,
    XiPolynomial,
    entropy_spectral,
    max_root,
    tail_bound,
    xi_coeffs,
    xi_eval,
    xi_eval_periodic,
)
from .sweep import (
    BUMP,
    DIP,
    NonMonotoneFeature,
    SweepRecord,
    compare_methods,
    continuity_modulus,
    cross_confirm_features,
    csv_text,
    detect_nonmonotonic,
    sweep,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BranchPair",
    "BranchSpec",
    "BUMP",
    "compare_lex",
    "compare_methods",
    "continuity_modulus",
    "cross_confirm_features",
    "csv_text",
    "detect_nonmonotonic",
    "detect_period",
    "DIP",
    "DomainError",
    "entropy_laps",
    "entropy_spectral",
    "EntropyEstimate",
    "EQUAL",
    "GREATER",
    "GridMismatch",
    "InsufficientData",
    "InvalidBranch",
    "InvalidSlopes",
    "itinerary",
    "KneadingPair",
    "kneading_prefixes",
    "lap_count",
    "lap_count_bruteforce",
    "lap_states",
    "LapState",
    "LAPS",
    "LengthMismatch",
    "LESS",
    "LorenzError",
    "LorenzMap",
    "LOWER",
    "make_affine_pair",
    "make_uniform_pair",
    "max_root",
    "MissingPeriodicForm",
    "ModeError",
    "NonMonotoneFeature",
    "NoRootFound",
    "ODD_CROSSING",
    "parse_scalar",
    "PeriodicForm",
    "RangeError",
    "ResourceLimit",
    "RootResult",
    "Scalar",
    "SPECTRAL",
    "sweep",
    "SweepRecord",
    "tail_bound",
    "TANGENTIAL",
    "UPPER",
    "write_csv",
    "xi_coeffs",
    "xi_eval",
    "xi_eval_periodic",
    "XiPolynomial",
]
