"""Ham-sandwich cuts and well-separation certificates."""

from hyperbisect.sandwich.cuts import (
    bisecting_candidates,
    cuts_coincide,
    ham_sandwich,
    iter_candidate_cuts,
    uniqueness_check,
)
from hyperbisect.sandwich.separation import (
    SeparationCertificate,
    centroid_certificate,
    certificate_radius_bound,
    flat_avoidance_bound,
    hulls_intersect,
    is_well_separated,
    separated_certificate,
)

__all__ = [
    "SeparationCertificate",
    "bisecting_candidates",
    "centroid_certificate",
    "certificate_radius_bound",
    "cuts_coincide",
    "flat_avoidance_bound",
    "ham_sandwich",
    "hulls_intersect",
    "is_well_separated",
    "iter_candidate_cuts",
    "separated_certificate",
    "uniqueness_check",
]
