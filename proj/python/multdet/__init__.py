"""Multiplicative Toeplitz determinants, direct factors and logarithmic means."""

from ._multdet import (
    Error,
    IntegerSet,
    UsageError,
    alpha,
    alpha_limit,
    cm_limit,
    convolve,
    density,
    derivative,
    determinants,
    envelope,
    factorization_check,
    friable_split,
    integral,
    is_mult_monotone,
    logmean_summary,
    mertens_product,
    mobius,
    product_formula,
    ratio_monotone,
    run_cli,
    szego,
    verify_direct_factor,
)

__all__ = [
    "Error",
    "IntegerSet",
    "UsageError",
    "alpha",
    "alpha_limit",
    "cm_limit",
    "convolve",
    "density",
    "derivative",
    "determinants",
    "envelope",
    "factorization_check",
    "friable_split",
    "integral",
    "is_mult_monotone",
    "logmean_summary",
    "mertens_product",
    "mobius",
    "product_formula",
    "ratio_monotone",
    "run_cli",
    "szego",
    "verify_direct_factor",
]
