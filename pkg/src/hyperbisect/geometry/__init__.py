"""Sphere-model hyperplanes, arrangements and the S_D ⋉ (Z/2)^D action."""

from hyperbisect.geometry.arrangement import (
    Arrangement,
    GroupElement,
    Hyperplane,
    affine_eval,
    apply_group,
    arrangements_close,
    canonicalize,
    factor_values,
    hyperplane_through,
    is_degenerate,
    product_sign,
    product_signs,
)

__all__ = [
    "Arrangement",
    "GroupElement",
    "Hyperplane",
    "affine_eval",
    "apply_group",
    "arrangements_close",
    "canonicalize",
    "factor_values",
    "hyperplane_through",
    "is_degenerate",
    "product_sign",
    "product_signs",
]
