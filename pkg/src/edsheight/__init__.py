"""Canonical heights on elliptic curves over number fields, computed
from the growth of elliptic divisibility sequences.

The pipeline is factorization-free: exact division polynomial values
over the field, their integer norms, and a consecutive-gcd (or
discriminant-support) trim recover the height as log growth / (d n^2),
with the archimedean part available separately through certified
floating point tracking along the complex embeddings.  A Tate-limit
doubling oracle cross-checks totals, and a search harness ranks
abstract sequences by normalized height for small-height hunting.
"""

from .algebra import FieldElement, NumberField
from .curve import Curve, Point, clear_denominators
from .eds import (
    EDSBlock,
    EDSequence,
    FloatBlock,
    curve_sequence,
    float_track,
    psi_naive,
    psi_pow2,
)
from .errors import ComputationError, EdsError, TorsionPoint, ValidationError
from .height import (
    METHOD_DPOWER,
    METHOD_GCD,
    METHOD_TATE,
    HeightEstimate,
    archimedean_height,
    canonical_height,
    compute_E,
    dpart_extract,
    extrapolate,
    gcd_trim,
    local_decompose,
    tate_height,
)
from .lehmer import (
    Candidate,
    SearchConfig,
    SearchResult,
    growth_estimate,
    search,
    torsion_filter,
)
from .roots import certified_roots

__version__ = "0.1.0"

__all__ = [
    "Candidate",
    "ComputationError",
    "Curve",
    "EDSBlock",
    "EDSequence",
    "EdsError",
    "FieldElement",
    "FloatBlock",
    "HeightEstimate",
    "METHOD_DPOWER",
    "METHOD_GCD",
    "METHOD_TATE",
    "NumberField",
    "Point",
    "SearchConfig",
    "SearchResult",
    "TorsionPoint",
    "ValidationError",
    "archimedean_height",
    "canonical_height",
    "certified_roots",
    "clear_denominators",
    "compute_E",
    "curve_sequence",
    "dpart_extract",
    "extrapolate",
    "float_track",
    "gcd_trim",
    "growth_estimate",
    "local_decompose",
    "psi_naive",
    "psi_pow2",
    "search",
    "tate_height",
    "torsion_filter",
]
