"""Dempster-Shafer evidence fusion weighted by the generalised belief Jensen-Shannon divergence."""

from .divergence import (
    gbjs_divergence,
    gbjs_divergence_expanded,
    gbjs_equal_weights,
    gjs_divergence,
    gjs_divergence_expanded,
    shannon_entropy_dist,
    shannon_entropy_mass,
)
from .documents import EvidenceDocument, load_evidence, parse_evidence, serialize_evidence
from .errors import EvidenceError
from .evidence import (
    Frame,
    MassFunction,
    Proposition,
    belief,
    combine_n,
    conflict,
    dempster_combine,
    make_mass_function,
    plausibility,
    vacuous,
)
from .fusion import (
    EvidenceSource,
    FusionReport,
    diagnose,
    final_weights,
    fuse,
    leave_one_out_weights,
    normalize_weights,
    reliability_weights,
    support_degrees,
    weighted_average_evidence,
)

__version__ = "0.1.0"
