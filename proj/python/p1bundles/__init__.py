"""Exact splitting types and normal bundles of rational curves on P^1."""

from ._p1bundles import (
    MathError,
    charp_demo,
    generic_kernel_splitting,
    normal_bundle,
    product_report,
    rathmann_surjective,
    rnc_conormal,
    src_certificate,
    verify,
)

__all__ = [
    "MathError",
    "charp_demo",
    "generic_kernel_splitting",
    "normal_bundle",
    "product_report",
    "rathmann_surjective",
    "rnc_conormal",
    "src_certificate",
    "verify",
]
